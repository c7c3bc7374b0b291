"""
Scattering amplitudes of the general point interaction.

Every function here works for complex k as well; the public entry points
that take a physical momentum check k > 0 first.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import ValidationFailure, ZeroDenominator, ZeroScatteringLength
from extension.params import ExtensionParams, Parity, apply_symmetry, classify
from scattering.matrices import Basis, Kind, ScatterMatrix

logger = logging.getLogger(__name__)

CONTINUATION_STEPS = 64


@dataclass(frozen=True)
class TravelingAmplitudes:
    k: float
    r_plus: complex
    r_minus: complex
    t_plus: complex
    t_minus: complex

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.t_plus, self.r_minus], [self.r_plus, self.t_minus]], dtype=complex)


@dataclass(frozen=True)
class PartialAmplitudes:
    f0: complex
    f1: complex


def require_momentum(k) -> float:
    k = float(k)
    if not (math.isfinite(k) and k > 0):
        raise ValidationFailure(f"Momentum must be positive and finite, got {k}")
    return k


def amplitude_denominator(params: ExtensionParams, k) -> complex:
    """D(k) = k^2 delta + i k (alpha + gamma) - beta; its zeros k = i*kappa are the poles."""
    return k * k * params.delta + 1j * k * (params.alpha + params.gamma) - params.beta


def _checked_denominator(params, k) -> complex:
    den = amplitude_denominator(params, k)
    if abs(den) < 1e-300:
        raise ZeroDenominator(f"Amplitude denominator vanishes at k={k}")
    return den


def mixing_vector(params: ExtensionParams, k) -> np.ndarray:
    """(-2k sin(phi), -k(alpha - gamma), beta + k^2 delta)."""
    return np.array([
        -2 * k * math.sin(params.phi),
        -k * (params.alpha - params.gamma),
        params.beta + k * k * params.delta,
    ])


def mixing_strength(params: ExtensionParams) -> float:
    """C = (alpha - gamma)^2 + 4 sin^2(phi); zero exactly for parity-even params."""
    return (params.alpha - params.gamma) ** 2 + 4 * math.sin(params.phi) ** 2


def _b_squared(params, k, strength):
    b3 = params.beta + k * k * params.delta
    return k * k * strength + b3 * b3


def branch_sign(params: ExtensionParams) -> float:
    """Sign of |B| on the real axis: sign(beta), else sign(delta), else +1."""
    for value in (params.beta, params.delta):
        if value != 0:
            return math.copysign(1.0, value)
    return 1.0


def branch_magnitude(params: ExtensionParams, k) -> complex:
    """
    The length of the mixing vector, continued to complex k.

    On the real axis it is branch_sign * sqrt(k^2 C + b3^2), which reduces to
    the threshold value beta + k^2 delta of the parity-even limit; for
    parity-even params it is that signed third component at every k. With
    this branch a pole at k = i kappa_plus sits in f_plus and one at
    i kappa_minus in f_minus. Complex k is reached along the straight
    segment from |k|, tracking the square root.
    """
    if classify(params).parity_even:
        return params.beta + k * k * params.delta
    strength = mixing_strength(params)
    start = abs(k)
    value = complex(branch_sign(params) * math.sqrt(_b_squared(params, start, strength)))
    if complex(k).imag == 0.0 and complex(k).real > 0:
        return value
    for step in range(1, CONTINUATION_STEPS + 1):
        z = start + (k - start) * step / CONTINUATION_STEPS
        root = np.sqrt(complex(_b_squared(params, z, strength)))
        value = root if abs(root - value) <= abs(root + value) else -root
    return complex(value)


def reflection_transmission(params: ExtensionParams, k: float) -> TravelingAmplitudes:
    k = require_momentum(k)
    den = _checked_denominator(params, k)
    even = k * k * params.delta + params.beta
    odd = 1j * k * (params.alpha - params.gamma)
    phase = np.exp(1j * params.phi)
    return TravelingAmplitudes(
        k=k,
        r_plus=(even + odd) / den,
        r_minus=(even - odd) / den,
        t_plus=2j * k * phase / den,
        t_minus=2j * k / phase / den,
    )


def s_matrix(params: ExtensionParams, k: float, basis: Basis = Basis.PARTIAL_WAVE) -> ScatterMatrix:
    traveling = ScatterMatrix(reflection_transmission(params, k).as_matrix(), Basis.TRAVELING, Kind.S)
    return traveling.to_basis(basis)


def t_matrix(params: ExtensionParams, k: float) -> ScatterMatrix:
    return s_matrix(params, k, Basis.PARTIAL_WAVE).to_kind(Kind.T)


def partial_amplitudes(params: ExtensionParams, k: float, direction: str = 'right') -> PartialAmplitudes:
    """Symmetric and antisymmetric outgoing amplitudes for a wave incident from one side."""
    if direction == 'left':
        params = apply_symmetry(params, Parity())
    elif direction != 'right':
        raise ValidationFailure(f"direction must be 'right' or 'left', got {direction!r}")
    amps = reflection_transmission(params, k)
    return PartialAmplitudes(
        f0=(amps.t_plus + amps.r_plus - 1) / 2j,
        f1=(amps.t_plus - amps.r_plus - 1) / 2j,
    )


def eigen_amplitudes(params: ExtensionParams, k) -> tuple:
    """(f_plus, f_minus) with exp(2i delta_pm) = (2ik cos(phi) +- |B|)/D; accepts complex k."""
    den = _checked_denominator(params, k)
    b = branch_magnitude(params, k)
    diagonal = 2j * k * math.cos(params.phi)
    return (diagonal + b - den) / (2j * den), (diagonal - b - den) / (2j * den)


def halfline_amplitude(a: float, k: float) -> complex:
    """s-wave amplitude 1/(k cot(delta0) - ik) on the half line, k cot(delta0) = -1/a."""
    k = require_momentum(k)
    if a == 0:
        raise ZeroScatteringLength("Scattering length must be nonzero")
    return 1.0 / (-1.0 / a - 1j * k)
