"""
Eigenphases, mixing angle and relative phase of the partial-wave S-matrix.

The T-matrix is written as T = fbar + df * (n . sigma) with n the unit
mixing vector, n3 = cos(theta) and n1 - i n2 = -i exp(-i phi_rel) sin(theta);
f_plus = fbar + df belongs to the eigenvector along +n. With phi_rel fixed by
the params this gives k cot(theta) = -(beta + k^2 delta)/sqrt(C).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Union

import numpy as np

from core.exceptions import DegenerateMixing, NotMaximalTV
from extension.params import ExtensionParams, classify, internal_tol
from scattering.amplitudes import (
    amplitude_denominator,
    branch_magnitude,
    branch_sign,
    eigen_amplitudes,
    mixing_strength,
    require_momentum,
)
from scattering.bound_states import Pole, smatrix_poles
from scattering.matrices import Basis, Kind, ScatterMatrix

logger = logging.getLogger(__name__)

OFF_DIAGONAL_TOL = 1e-14


@dataclass(frozen=True)
class ScatteringObservables:
    k: float
    delta_plus: float
    delta_minus: float
    theta: float
    phi_rel: float
    f_plus: complex
    f_minus: complex
    poles: List[Pole] = field(default_factory=list)
    phase_undefined: bool = False


@dataclass(frozen=True)
class MixingFromT:
    theta: float
    phi_rel: float
    f_plus: complex
    f_minus: complex
    phase_undefined: bool = False


def _canonical_phase(angle: float) -> float:
    """Map into (-pi, pi]."""
    return math.pi if angle <= -math.pi else angle


def relative_phase(params: ExtensionParams) -> float:
    return _canonical_phase(math.atan2(-2 * math.sin(params.phi), params.alpha - params.gamma))


def eigen_observables(params: ExtensionParams, k: float) -> ScatteringObservables:
    k = require_momentum(k)
    f_plus, f_minus = eigen_amplitudes(params, k)
    delta_plus = float(np.angle(1 + 2j * f_plus)) / 2
    delta_minus = float(np.angle(1 + 2j * f_minus)) / 2
    poles = smatrix_poles(params)

    if classify(params).parity_even:
        logger.debug(f"Relative phase undefined for parity-even params {params.as_tuple()}")
        return ScatteringObservables(k, delta_plus, delta_minus, 0.0, 0.0, f_plus, f_minus,
                                     poles, phase_undefined=True)

    b3 = params.beta + k * k * params.delta
    b = branch_magnitude(params, k).real
    theta = math.atan2(-k * math.sqrt(mixing_strength(params)) / b, b3 / b)
    return ScatteringObservables(k, delta_plus, delta_minus, theta, relative_phase(params),
                                 f_plus, f_minus, poles)


def mixing_line(params: ExtensionParams) -> tuple:
    """(intercept, slope) of k cot(theta) = -(beta + k^2 delta)/sqrt(C) as a function of k^2."""
    root_c = math.sqrt(mixing_strength(params))
    if root_c < internal_tol():
        raise DegenerateMixing("Parity-even params have no mixing angle")
    return -params.beta / root_c, -params.delta / root_c


def reconstruct_t(f_bar: complex, df: complex, theta: float, phi_rel: float) -> np.ndarray:
    """T-matrix assembled from the eigen-amplitude average, splitting and mixing angles."""
    off = -df * 1j * np.exp(-1j * phi_rel) * math.sin(theta)
    return np.array([
        [f_bar + df * math.cos(theta), off],
        [df * 1j * np.exp(1j * phi_rel) * math.sin(theta), f_bar - df * math.cos(theta)],
    ], dtype=complex)


def observables_from_t(t: Union[ScatterMatrix, np.ndarray], strict: bool = False) -> MixingFromT:
    """
    Recover theta, phi_rel and f_pm from a partial-wave T-matrix alone.

    A single T-matrix cannot tell which eigenvalue continues to the pole of
    f_plus, so the labels are chosen with cos(theta) >= 0; this agrees with
    eigen_observables wherever beta + k^2 delta has the branch sign. The
    phase of i T01 over the eigenvalue sum is -phi_rel while cos(phi) > 0.
    When that sum vanishes (phi = pi/2) phi_rel is taken in (-pi, 0].
    """
    if isinstance(t, ScatterMatrix):
        t = t.to_basis(Basis.PARTIAL_WAVE).to_kind(Kind.T).entries
    t = np.asarray(t, dtype=complex)

    if max(abs(t[0, 1]), abs(t[1, 0])) < OFF_DIAGONAL_TOL:
        if strict:
            raise DegenerateMixing("Off-diagonal T-matrix entries vanish; phi_rel is undefined")
        return MixingFromT(0.0, 0.0, t[0, 0], t[1, 1], phase_undefined=True)

    f_bar = (t[0, 0] + t[1, 1]) / 2
    df = np.sqrt(((t[0, 0] - t[1, 1]) / 2) ** 2 + t[0, 1] * t[1, 0])
    if ((t[0, 0] - f_bar) / df).real < 0:
        df = -df
    n = (t - f_bar * np.eye(2)) / df

    lam_sum = 2 + 4j * f_bar
    if abs(lam_sum) > 1e-12:
        phi_rel = -float(np.angle(1j * t[0, 1] / lam_sum))
        sin_theta = (1j * np.exp(1j * phi_rel) * n[0, 1]).real
    else:
        logger.debug("Eigenvalue sum vanishes; taking phi_rel in (-pi, 0]")
        phi_rel = -float(np.angle(1j * n[0, 1]))
        sin_theta = abs(n[0, 1])
        if phi_rel > 0:
            phi_rel, sin_theta = phi_rel - math.pi, -sin_theta
    theta = math.atan2(sin_theta, n[0, 0].real)
    return MixingFromT(theta, _canonical_phase(phi_rel), f_bar + df, f_bar - df)


def maximal_tv_eigenvalues(params: ExtensionParams, k: float) -> tuple:
    """S-matrix eigenvalues +-|B|/D at phi = pi/2; unimodular, no poles on the imaginary axis."""
    if abs(params.phi - math.pi / 2) > internal_tol():
        raise NotMaximalTV(f"phi={params.phi} is not pi/2")
    k = require_momentum(k)
    ratio = branch_magnitude(params, k) / amplitude_denominator(params, k)
    return complex(ratio), complex(-ratio)


def limiting_case_amplitudes(params: ExtensionParams, k: float) -> dict:
    """
    Closed forms that apply to the given params, keyed by case:

      one_pole_delta    delta = 0: single pole at kappa0 = -beta/(alpha + 1/alpha)
      one_pole_beta     beta = 0: single pole at kappa1 = -(alpha + 1/alpha)/delta
      scale_invariant   beta = delta = 0: k-independent f_pm
      time_reversal_even / pt_even
                        right-incidence partial amplitudes rebuilt from f_pm and theta
    """
    k = require_momentum(k)
    flags = classify(params)
    if flags.parity_even:
        return {}

    alpha, beta, gamma, delta, phi = params.as_tuple()
    cos_phi = math.cos(phi)
    tol = internal_tol()
    sign = branch_sign(params)
    cases = {}

    if abs(delta) < tol and abs(beta) >= tol:
        kappa0 = -beta / (alpha + gamma)
        ratio = beta / kappa0
        root = np.sqrt(complex(ratio ** 2 * (k * k + kappa0 ** 2) - 4 * k * k * cos_phi ** 2)) * sign
        head = 2j * k * cos_phi + 1j * ratio * (k - 1j * kappa0)
        den = 2 * ratio * (k - 1j * kappa0)
        cases['one_pole_delta'] = {'kappa': kappa0, 'f_plus': (head + root) / den,
                                   'f_minus': (head - root) / den}
    if abs(beta) < tol and abs(delta) >= tol:
        kappa1 = -(alpha + gamma) / delta
        root = np.sqrt(complex(delta ** 2 * (k * k + kappa1 ** 2) - 4 * cos_phi ** 2)) * sign
        head = 2j * cos_phi - delta * (k - 1j * kappa1)
        den = 2j * delta * (k - 1j * kappa1)
        cases['one_pole_beta'] = {'kappa': kappa1, 'f_plus': (head + root) / den,
                                  'f_minus': (head - root) / den}
    if flags.scale_invariant:
        total = alpha + gamma
        root_c = math.sqrt(mixing_strength(params))
        cases['scale_invariant'] = {'f_plus': (2 * cos_phi - total - 1j * root_c) / (2j * total),
                                    'f_minus': (2 * cos_phi - total + 1j * root_c) / (2j * total)}

    if flags.time_reversal_even or flags.pt_even:
        obs = eigen_observables(params, k)
        f_plus, f_minus = obs.f_plus, obs.f_minus
        # the closed forms carry +i exp(-i phi_rel) sin(theta) above the diagonal
        if flags.time_reversal_even:
            # phi_rel = pi is phi_rel = 0 with theta -> -theta
            half = -0.5 * obs.theta * math.copysign(1.0, math.cos(obs.phi_rel))
            c, s = math.cos(half), math.sin(half)
            phase = np.exp(1j * half)
            cases['time_reversal_even'] = {
                'f0': phase * (f_plus * c - 1j * f_minus * s),
                'f1': phase * (f_minus * c - 1j * f_plus * s),
                'weight': abs(phase * c) ** 2 + abs(phase * s) ** 2,
            }
        else:
            # phi_rel = +pi/2 is phi_rel = -pi/2 with theta -> -theta
            half = -0.5 * obs.theta * (1.0 if obs.phi_rel < 0 else -1.0)
            c, s, t = math.cos(half), math.sin(half), math.tan(half)
            cases['pt_even'] = {
                'f0': c * (f_plus * c * (1 - t) + f_minus * s * (1 + t)),
                'f1': c * (f_minus * c * (1 + t) - f_plus * s * (1 - t)),
            }
    return cases
