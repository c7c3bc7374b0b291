"""
Energy levels of two particles in a harmonic trap with a contact interaction.

Both spectrum conditions are written through the Gamma ratio
g(x) = Gamma(3/4 - x) / Gamma(1/4 - x) of the scaled energy x = E/(2 omega):

    3D s-wave        1/a = 2 sqrt(m omega) g(x)
    1D point         g(x) = kappa / (2 sqrt(m omega))  for each S-matrix pole kappa

A family g(x) = t has exactly one root between consecutive poles of g
(x = 3/4 + n) and one below the first pole. Roots are searched on the entire
residual (P - t Q) / |(P, Q)| with (P, Q) = (1/Gamma(1/4 - x), 1/Gamma(3/4 - x)),
which is finite at every x.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from django.conf import settings

from core.exceptions import (
    ConvergenceFailure,
    NoSignChange,
    NotAnEigenvalue,
    ValidationFailure,
    ZeroDenominator,
    ZeroScatteringLength,
)
from extension.params import ExtensionParams
from numerics.roots import bracketed_root, scan_for_bracket
from numerics.special import gamma_ratio, reciprocal_gamma_pair
from scattering.bound_states import parity_even_summary, smatrix_poles

logger = logging.getLogger(__name__)

# g -> infinity: levels pinned to the poles x = 3/4 + n
INFINITE = math.inf

ROOT_TOL = 1e-13
EIGENVALUE_TOL = 1e-6


def dedup_tol() -> float:
    return getattr(settings, 'POINTSCAT_DEDUP_TOL', 1e-8)


# ===========================================
# Problem and result types
# ===========================================

@dataclass(frozen=True)
class ScatteringLength3D:
    """a = math.inf is the unitary limit."""
    a: float


@dataclass(frozen=True)
class Extension1D:
    params: ExtensionParams


@dataclass(frozen=True)
class Robin:
    beta_robin: float


Interaction = Union[ScatteringLength3D, Extension1D, Robin]


@dataclass(frozen=True)
class TrapProblem:
    m: float
    omega: float
    interaction: Interaction

    def __post_init__(self):
        for name in ('m', 'omega'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationFailure(f"{name} must be positive and finite, got {value}")

    @property
    def oscillator_momentum(self) -> float:
        return math.sqrt(self.m * self.omega)


@dataclass
class SpectrumResult:
    """Energies and brackets in units of omega; residuals of the scaled condition."""
    energies: List[float] = field(default_factory=list)
    brackets: List[Tuple[float, float]] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)

    def rows(self):
        for index, (energy, (lo, hi), residual) in enumerate(zip(self.energies, self.brackets, self.residuals)):
            yield {
                'index': index,
                'E_over_omega': energy,
                'bracket_lo': lo,
                'bracket_hi': hi,
                'residual': residual,
            }


@dataclass(frozen=True)
class AmplitudeRatio:
    """N+/N-; u_zero marks levels where U(-E/omega, 0) vanishes."""
    ratio: complex
    u_zero: bool = False


# ===========================================
# Conditions
# ===========================================

def robin_parameter(a: float) -> float:
    if a == 0:
        raise ZeroScatteringLength("Scattering length must be nonzero")
    if math.isinf(a):
        return 0.0
    return -1.0 / a


def _family_residual(t: float, x: float) -> float:
    p, q = reciprocal_gamma_pair(x)
    return (p - t * q) / math.hypot(p, q)


def busch_condition_3d(a: float, energy: float, m: float, omega: float) -> float:
    """1/a - 2 sqrt(m omega) g(E/(2 omega))."""
    inverse = 0.0 if math.isinf(a) else 1.0 / a
    return inverse - 2 * math.sqrt(m * omega) * gamma_ratio(energy / (2 * omega))


def delta_trap_condition(c0: float, energy: float, m: float, omega: float) -> float:
    """c0 - 2 sqrt(m omega) g: the 1D delta interaction read as the 3D condition with 1/a -> c0."""
    return c0 - 2 * math.sqrt(m * omega) * gamma_ratio(energy / (2 * omega))


def trap_condition_1d(params: ExtensionParams, energy: float, m: float, omega: float) -> float:
    """(alpha + gamma) + beta/(2 sqrt(m omega) g) + 2 sqrt(m omega) delta g."""
    scaled = 2 * math.sqrt(m * omega) * gamma_ratio(energy / (2 * omega))
    if scaled == 0:
        raise ZeroDenominator(f"g vanishes at E={energy}; use the factorized form")
    return params.alpha + params.gamma + params.beta / scaled + params.delta * scaled


def _entire_condition_1d(params: ExtensionParams, x: float, s: float) -> float:
    """Condition multiplied through by P Q / |(P, Q)|^2, scaled to order one."""
    p, q = reciprocal_gamma_pair(x)
    value = 2 * s * params.delta * p * p + (params.alpha + params.gamma) * p * q + params.beta / (2 * s) * q * q
    scale = abs(2 * s * params.delta) + abs(params.alpha + params.gamma) + abs(params.beta / (2 * s))
    return value / ((p * p + q * q) * scale)


# ===========================================
# Root families
# ===========================================

def _family_roots(t: float, count: int) -> List[Tuple[float, Tuple[float, float], float]]:
    """First `count` roots x of g(x) = t as (x, bracket, residual)."""
    if math.isinf(t):
        return [(0.75 + n, (0.75 + n, 0.75 + n), 0.0) for n in range(count)]

    def f(x):
        return _family_residual(t, x)

    # g > 0 below x = 1/4, so only t > 0 can reach deep negative energies
    lowest = -max(50.0, 4 * t * t) if t > 0 else -50.0
    edges = [lowest] + [0.75 + n for n in range(count)]
    roots = []
    for lo, hi in zip(edges, edges[1:]):
        try:
            x = bracketed_root(f, lo, hi, tol=ROOT_TOL * max(1.0, abs(lo), abs(hi)))
        except NoSignChange:
            logger.warning(f"No sign change on [{lo}, {hi}] for g = {t}; scanning")
            bracket = scan_for_bracket(f, lo, hi)
            if bracket is None:
                raise ConvergenceFailure(f"No root of g(x) = {t} found on [{lo}, {hi}]")
            x = bracketed_root(f, *bracket, tol=ROOT_TOL * max(1.0, abs(lo), abs(hi)))
        roots.append((x, (lo, hi), abs(f(x))))
    logger.debug(f"g(x) = {t}: roots {[r[0] for r in roots]}")
    return roots


def _to_result(roots, count: int) -> SpectrumResult:
    roots = sorted(roots, key=lambda r: r[0])
    tol = dedup_tol()
    result = SpectrumResult()
    for x, (lo, hi), residual in roots:
        energy = 2 * x
        if result.energies and abs(energy - result.energies[-1]) <= tol:
            continue
        result.energies.append(energy)
        result.brackets.append((2 * lo, 2 * hi))
        result.residuals.append(residual)
        if len(result.energies) == count:
            break
    return result


def _require_count(count: int):
    if count < 1:
        raise ValidationFailure(f"Level count must be at least 1, got {count}")


def busch_levels_3d(a: float, m: float, omega: float, count: int) -> SpectrumResult:
    """
    First `count` s-wave levels in units of omega; a = math.inf gives the
    unitary limit 2n + 1/2. Bound states need a > 0 and sit near -1/(2 m a^2).
    """
    _require_count(count)
    problem = TrapProblem(m, omega, ScatteringLength3D(a))
    if a == 0:
        raise ZeroScatteringLength("Scattering length must be nonzero")
    t = 0.0 if math.isinf(a) else 1.0 / (2 * problem.oscillator_momentum * a)
    return _to_result(_family_roots(t, count), count)


def pole_families(params: ExtensionParams, m: float, omega: float) -> List[float]:
    """
    Values t = kappa/(2 sqrt(m omega)) of the factorized 1D condition. A
    missing S-matrix pole is a family pinned at t = infinity, and the
    scale-invariant case adds t = 0 as well.
    """
    s = math.sqrt(m * omega)
    families = [pole.kappa / (2 * s) for pole in smatrix_poles(params)]
    if len(families) < 2:
        families.append(INFINITE)
    if not families[:-1]:
        families.insert(0, 0.0)
    return families


def trap_levels_1d(params: ExtensionParams, m: float, omega: float, count: int) -> SpectrumResult:
    """Levels of the punctured line in units of omega; independent of phi."""
    _require_count(count)
    TrapProblem(m, omega, Extension1D(params))
    roots = []
    for t in pole_families(params, m, omega):
        roots.extend(_family_roots(t, count))
    return _to_result(roots, count)


def parity_even_trap_families(params: ExtensionParams, m: float, omega: float, count: int) -> dict:
    """The s-wave (1/a0) and p-wave (1/a1) channels of a parity-even interaction, solved separately."""
    summary = parity_even_summary(params)
    s = math.sqrt(m * omega)

    def family(kappa: Optional[float]) -> List[float]:
        t = INFINITE if kappa is None else kappa / (2 * s)
        return _to_result(_family_roots(t, count), count).energies

    return {'a0': family(summary.kappa_plus), 'a1': family(summary.kappa_minus)}


def solve(problem: TrapProblem, count: int) -> SpectrumResult:
    interaction = problem.interaction
    if isinstance(interaction, ScatteringLength3D):
        return busch_levels_3d(interaction.a, problem.m, problem.omega, count)
    if isinstance(interaction, Robin):
        a = math.inf if interaction.beta_robin == 0 else -1.0 / interaction.beta_robin
        return busch_levels_3d(a, problem.m, problem.omega, count)
    if isinstance(interaction, Extension1D):
        return trap_levels_1d(interaction.params, problem.m, problem.omega, count)
    raise TypeError(f"Unknown interaction {interaction!r}")


# ===========================================
# Wavefunction amplitudes at the origin
# ===========================================

def trap_amplitude_ratio(interaction: Extension1D, energy: float, m: float, omega: float) -> AmplitudeRatio:
    """
    N+/N- of psi = N+ U(-E/omega, sqrt(2 m omega) x) for x > 0 and
    N- U(-E/omega, -sqrt(2 m omega) x) for x < 0. With U'(., 0)/U(., 0) = -sqrt(2) g
    the psi row of the joining condition gives exp(i phi)(gamma + 2 sqrt(m omega) delta g);
    where U(., 0) = 0 the derivative row gives -exp(i phi) alpha instead.
    """
    if not isinstance(interaction, Extension1D):
        raise TypeError(f"Amplitude ratios need a 1D interaction, got {interaction!r}")
    params = interaction.params
    s = math.sqrt(m * omega)
    x = energy / (2 * omega)
    residual = abs(_entire_condition_1d(params, x, s))
    if residual > EIGENVALUE_TOL:
        raise NotAnEigenvalue(f"E={energy} misses the spectrum condition by {residual:.3g}")
    p, q = reciprocal_gamma_pair(x)
    phase = complex(math.cos(params.phi), math.sin(params.phi))
    u_zero = q == 0.0
    if abs(q) >= abs(p):
        ratio = phase * (params.gamma * q + 2 * s * params.delta * p) / q
    else:
        ratio = -phase * (2 * s * params.alpha * p + params.beta * q) / (2 * s * p)
    if u_zero:
        logger.warning(f"U(-E/omega, 0) vanishes at E={energy}: antisymmetric level")
    return AmplitudeRatio(ratio, u_zero)
