"""
Poles of the S-matrix on the imaginary momentum axis and the bound states
they carry.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np

from core.exceptions import NoBoundState, NotParityEven
from extension.params import ExtensionParams, classify, internal_tol
from scattering.amplitudes import amplitude_denominator

logger = logging.getLogger(__name__)


class PoleKind(str, Enum):
    BOUND = 'bound'
    ANTIBOUND = 'antibound'
    THRESHOLD = 'threshold'


@dataclass(frozen=True)
class Pole:
    """S-matrix pole at k = i*kappa."""
    kappa: float
    kind: PoleKind

    @property
    def momentum(self) -> complex:
        return 1j * self.kappa


def _pole(kappa: float) -> Pole:
    if abs(kappa) < internal_tol():
        return Pole(kappa, PoleKind.THRESHOLD)
    return Pole(kappa, PoleKind.BOUND if kappa > 0 else PoleKind.ANTIBOUND)


def smatrix_poles(params: ExtensionParams) -> List[Pole]:
    """
    Zeros of D(i*kappa): two when delta != 0 (ordered kappa_plus, kappa_minus),
    one when only beta != 0, none for a scale-invariant interaction.
    """
    alpha, beta, gamma, delta, _ = params.as_tuple()
    tol = internal_tol()
    if abs(delta) >= tol:
        total = alpha + gamma
        sign = math.copysign(1.0, total) if total != 0 else 1.0
        # q never cancels, so kappa stays accurate as delta -> 0
        q = -(total + sign * math.sqrt((alpha - gamma) ** 2 + 4)) / 2
        far, near = q / delta, beta / q
        plus, minus = (near, far) if sign > 0 else (far, near)
        return [_pole(plus), _pole(minus)]
    if abs(beta) >= tol:
        return [_pole(-beta / (alpha + gamma))]
    return []


def _bound_kappa(params: ExtensionParams, kappa: Optional[float]) -> float:
    bound = [p.kappa for p in smatrix_poles(params) if p.kind == PoleKind.BOUND]
    if not bound:
        raise NoBoundState(f"No pole with kappa > 0 for {params.as_tuple()}")
    if kappa is None:
        return max(bound)
    match = [value for value in bound if abs(value - kappa) <= 1e-9 * max(1.0, abs(kappa))]
    if not match:
        raise NoBoundState(f"kappa={kappa} is not a bound-state pole; poles: {bound}")
    return match[0]


def right_amplitude(params: ExtensionParams, kappa: float) -> complex:
    """psi(0+)/psi(0-) for the bound state decaying as exp(-kappa |x|)."""
    return np.exp(1j * params.phi) * (params.gamma + params.delta * kappa)


def bound_state_wavefunction(params: ExtensionParams, x_grid, kappa: Optional[float] = None) -> np.ndarray:
    """
    Unnormalized bound state exp(kappa x) for x <= 0 and
    exp(i phi)(gamma + delta kappa) exp(-kappa x) for x > 0.
    Defaults to the most deeply bound pole.
    """
    kappa = _bound_kappa(params, kappa)
    x = np.asarray(x_grid, dtype=float)
    envelope = np.exp(-kappa * np.abs(x))
    return np.where(x > 0, right_amplitude(params, kappa) * envelope, envelope + 0j)


def bound_state_norm(params: ExtensionParams, kappa: Optional[float] = None) -> float:
    """Integral of |psi|^2 for the unnormalized bound_state_wavefunction."""
    kappa = _bound_kappa(params, kappa)
    return (1.0 + abs(right_amplitude(params, kappa)) ** 2) / (2 * kappa)


def pole_residual(params: ExtensionParams, kappa: float) -> complex:
    return amplitude_denominator(params, 1j * kappa)


@dataclass(frozen=True)
class ParityEvenSummary:
    a0: float
    a1: float
    kappa_plus: Optional[float]
    kappa_minus: Optional[float]
    infinite_a0: bool
    infinite_a1: bool


def _inverse(value: float) -> float:
    return math.inf if value == 0 else 1.0 / value


def parity_even_summary(params: ExtensionParams) -> ParityEvenSummary:
    """
    Scattering lengths of the decoupled s- and p-waves,
    -k tan(delta0) = -1/a0 and k cot(delta1) = -1/a1 exactly.
    """
    if not classify(params).parity_even:
        raise NotParityEven(f"alpha != gamma or phi != 0 for {params.as_tuple()}")
    alpha, beta, _, delta, _ = params.as_tuple()
    tol = internal_tol()
    if abs(delta) >= tol:
        kappa_plus, kappa_minus = (1 - alpha) / delta, -(1 + alpha) / delta
        a0, a1 = _inverse(kappa_plus), _inverse(kappa_minus)
    elif alpha > 0:
        # alpha = gamma = 1: a pure delta interaction, beta = -2 c0
        kappa_plus, kappa_minus = -beta / 2, None
        a0, a1 = _inverse(kappa_plus), 0.0
    else:
        kappa_plus, kappa_minus = None, beta / 2
        a0, a1 = 0.0, _inverse(kappa_minus)
    summary = ParityEvenSummary(
        a0=a0, a1=a1, kappa_plus=kappa_plus, kappa_minus=kappa_minus,
        infinite_a0=math.isinf(a0), infinite_a1=math.isinf(a1),
    )
    if summary.infinite_a0 or summary.infinite_a1:
        logger.warning(f"Threshold pole: scattering length diverges for {params.as_tuple()}")
    return summary
