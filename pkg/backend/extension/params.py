"""
Self-adjoint extension parameters of the general 1D point interaction.

The joining condition at the origin is

    (psi'(0+), psi(0+)) = exp(i*phi) [[alpha, beta], [delta, gamma]] (psi'(0-), psi(0-))

with alpha*gamma - beta*delta = 1 and phi in (-pi/2, pi/2].
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Union

import numpy as np
from django.conf import settings

from core.exceptions import ConstraintViolation, NonPositiveScale, ValidationFailure

logger = logging.getLogger(__name__)

FIELDS = ('alpha', 'beta', 'gamma', 'delta', 'phi')

SIGMA_2 = np.array([[0, -1j], [1j, 0]])


def constraint_tol() -> float:
    return getattr(settings, 'POINTSCAT_CONSTRAINT_TOL', 1e-9)


def internal_tol() -> float:
    return getattr(settings, 'POINTSCAT_INTERNAL_TOL', 1e-12)


@dataclass(frozen=True)
class ExtensionParams:
    """Normalized (alpha, beta, gamma, delta, phi); build through validate_extension."""
    alpha: float
    beta: float
    gamma: float
    delta: float
    phi: float

    @property
    def determinant(self) -> float:
        return self.alpha * self.gamma - self.beta * self.delta

    def as_tuple(self) -> tuple:
        return self.alpha, self.beta, self.gamma, self.delta, self.phi


@dataclass(frozen=True)
class SymmetryFlags:
    parity_even: bool
    time_reversal_even: bool
    pt_even: bool
    scale_invariant: bool


@dataclass(frozen=True)
class Parity:
    pass


@dataclass(frozen=True)
class TimeReversal:
    pass


@dataclass(frozen=True)
class Scale:
    factor: float


Transform = Union[Parity, TimeReversal, Scale]


def _normalize(alpha, beta, gamma, delta, phi) -> ExtensionParams:
    # M is invariant under (alpha, beta, gamma, delta, phi) -> (-alpha, ..., phi - pi)
    shift = math.ceil((phi - math.pi / 2) / math.pi)
    if shift:
        phi -= shift * math.pi
        if shift % 2:
            alpha, beta, gamma, delta = -alpha, -beta, -gamma, -delta
        logger.debug(f"Shifted phi by {shift}*pi into (-pi/2, pi/2]")
    # drop negative zeros so flipped params compare cleanly
    return ExtensionParams(alpha + 0.0, beta + 0.0, gamma + 0.0, delta + 0.0, phi + 0.0)


def validate_extension(alpha, beta, gamma, delta, phi) -> ExtensionParams:
    values = [float(v) for v in (alpha, beta, gamma, delta, phi)]
    for name, value in zip(FIELDS, values):
        if not math.isfinite(value):
            raise ConstraintViolation(f"{name} must be finite, got {value}")
    alpha, beta, gamma, delta, phi = values
    residual = alpha * gamma - beta * delta - 1.0
    if abs(residual) > constraint_tol():
        raise ConstraintViolation(
            f"alpha*gamma - beta*delta = {1.0 + residual:.12g}, must equal 1"
        )
    return _normalize(alpha, beta, gamma, delta, phi)


def transfer_matrix(params: ExtensionParams) -> np.ndarray:
    """M acting on the column (psi', psi)."""
    return np.exp(1j * params.phi) * np.array(
        [[params.alpha, params.beta], [params.delta, params.gamma]], dtype=complex
    )


def inverse_transfer_matrix(params: ExtensionParams) -> np.ndarray:
    return SIGMA_2 @ transfer_matrix(params).conj().T @ SIGMA_2


def apply_joining(params: ExtensionParams, psi_left: complex, dpsi_left: complex) -> tuple:
    """Carry (psi, psi') from x = 0- to x = 0+; returns (psi_right, dpsi_right)."""
    dpsi_right, psi_right = transfer_matrix(params) @ np.array([dpsi_left, psi_left], dtype=complex)
    return complex(psi_right), complex(dpsi_right)


def apply_symmetry(params: ExtensionParams, transform: Transform) -> ExtensionParams:
    alpha, beta, gamma, delta, phi = params.as_tuple()
    if isinstance(transform, Parity):
        return _normalize(gamma, beta, alpha, delta, -phi)
    if isinstance(transform, TimeReversal):
        return _normalize(alpha, beta, gamma, delta, -phi)
    if isinstance(transform, Scale):
        factor = float(transform.factor)
        if not factor > 0:
            raise NonPositiveScale(f"Scale factor must be positive, got {factor}")
        return ExtensionParams(alpha, beta * factor, gamma, delta / factor, phi)
    raise TypeError(f"Unknown transform {transform!r}")


def classify(params: ExtensionParams) -> SymmetryFlags:
    tol = internal_tol()
    same_diagonal = abs(params.alpha - params.gamma) < tol
    real_phase = abs(params.phi) < tol
    return SymmetryFlags(
        parity_even=same_diagonal and real_phase,
        time_reversal_even=real_phase,
        pt_even=same_diagonal,
        scale_invariant=abs(params.beta) < tol and abs(params.delta) < tol,
    )


def params_to_dict(params: ExtensionParams) -> dict:
    return asdict(params)


def params_from_dict(data: dict) -> ExtensionParams:
    missing = [name for name in FIELDS if name not in data]
    if missing:
        raise ValidationFailure(f"Missing extension parameters: {', '.join(missing)}")
    return validate_extension(*(data[name] for name in FIELDS))
