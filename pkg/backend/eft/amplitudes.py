"""
Partial-wave T-matrices of the contact theory and their renormalization.

Sectors:
  even  c0 (s-wave) and c2p (p-wave), no mixing
  odd   c0 with the parity-violating complex coupling c1 + i c1_tilde
  full  all four energy-independent couplings, NDR only
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from core.exceptions import (
    DegenerateMixing,
    InvalidScale,
    LandauPole,
    NoBoundState,
    NonPerturbative,
    UnsupportedScheme,
    ZeroScatteringLength,
)
from eft.couplings import ContactCouplings, RenormConditions, Scheme
from eft.integrals import delta_at_origin, regulated_moment
from scattering.amplitudes import require_momentum
from scattering.matrices import Basis, Kind, ScatterMatrix

logger = logging.getLogger(__name__)

LANDAU_TOL = 1e-12


def _t(entries) -> ScatterMatrix:
    return ScatterMatrix(np.array(entries, dtype=complex), Basis.PARTIAL_WAVE, Kind.T)


# ===========================================
# Parity-even sector
# ===========================================

def t_matrix_even(c0: float, c2p: float, scheme: Scheme, k: float) -> ScatterMatrix:
    """diag(f0, f1); f1 = 0 when c2p = 0 (p-wave decoupled)."""
    k = require_momentum(k)
    f0 = 1j * c0 / (c0 + 1j * k)
    f1 = 0j if c2p == 0 else k / (1.0 / c2p - 2 * delta_at_origin(scheme) - 1j * k)
    return _t([[f0, 0], [0, f1]])


def run_c2p(lambda_cutoff: float, a1: float) -> float:
    """Cutoff-dependent c2p that keeps the p-wave scattering length fixed at a1."""
    if a1 == 0:
        raise ZeroScatteringLength("a1 must be nonzero")
    inverse = 2 * lambda_cutoff / math.pi - 1.0 / a1
    if abs(inverse) < LANDAU_TOL:
        raise LandauPole(f"c2p diverges at Lambda={lambda_cutoff} for a1={a1}")
    return 1.0 / inverse


def renormalize_even(a0: float, a1: float, scheme: Scheme) -> ContactCouplings:
    """
    c0 = 1/a0 in every scheme, c2p = (2 delta(0) - 1/a1)^-1; in NDR c2p = -a1.
    a0 = inf or a1 = 0 switch the corresponding wave off.
    """
    if a0 == 0:
        raise ZeroScatteringLength("a0 must be nonzero")
    c0 = 0.0 if math.isinf(a0) else 1.0 / a0
    if a1 == 0:
        c2p = 0.0
    else:
        inverse = 2 * delta_at_origin(scheme) - (0.0 if math.isinf(a1) else 1.0 / a1)
        if abs(inverse) < LANDAU_TOL:
            raise LandauPole(f"c2p diverges in {scheme.kind} for a1={a1}")
        c2p = 1.0 / inverse
    return ContactCouplings(c0=c0, c2p=c2p, scheme=scheme)


# ===========================================
# Parity-odd sector
# ===========================================

def t_matrix_odd(c0: float, c1: float, c1_tilde: float, scheme: Scheme, k: float) -> ScatterMatrix:
    k = require_momentum(k)
    c1c = complex(c1, c1_tilde)
    mod2 = abs(c1c) ** 2
    x = c0 + 2 * mod2 * regulated_moment(1, k, scheme)
    scale = 1.0 / (k - 1j * x)
    return _t([
        [scale * x, -1j * k * c1c * scale],
        [1j * k * c1c.conjugate() * scale, 1j * k * mod2 * scale],
    ])


def _odd_branch(conds: RenormConditions) -> tuple:
    t = conds.strength
    if abs(t) > 1:
        raise NonPerturbative(f"|kappa0 * a_theta| = {abs(t):.6g} exceeds 1")
    root = math.sqrt(1 - t * t)
    # both forms stay finite as t -> 0, the branch where c1 vanishes with a_theta
    return t, root, t * t / (1 + root)


def renormalize_odd(conds: RenormConditions, scheme: Scheme) -> ContactCouplings:
    """Bare couplings reproducing (kappa0, phi_rel, a_theta); c1 is scale independent, c0 runs."""
    t, root, _ = _odd_branch(conds)
    c1c = cmath.exp(-1j * conds.phi_rel) * t / (1 + root)
    mu = delta_at_origin(scheme)
    c0 = conds.kappa0 + (conds.kappa0 - 2 * mu) * abs(c1c) ** 2
    logger.debug(f"Odd sector in {scheme.kind}: c0={c0:.12g}, c1={c1c:.12g}")
    return ContactCouplings(c0=c0, c1=c1c.real, c1_tilde=c1c.imag, scheme=scheme)


def renormalized_t_odd(conds: RenormConditions, k: float) -> ScatterMatrix:
    k = require_momentum(k)
    t, _, area = _odd_branch(conds)
    kappa0 = conds.kappa0
    scale = 1.0 / (k - 1j * kappa0)
    phase = cmath.exp(1j * conds.phi_rel)
    return _t([
        [scale * (kappa0 + 0.5j * k * area), -0.5j * k * t * scale / phase],
        [0.5j * k * t * scale * phase, 0.5j * k * area * scale],
    ])


def pole_wavefunction(conds: RenormConditions, x_grid) -> np.ndarray:
    """
    Unnormalized bound state from the residue of the renormalized odd T-matrix,
    exp(-kappa0 |x|) [(1 + sqrt(1 - t^2)) - t exp(i phi_rel) sgn(x)] with t = kappa0 a_theta.
    """
    if not conds.kappa0 > 0:
        raise NoBoundState(f"kappa0={conds.kappa0} is not a bound-state pole")
    t, root, _ = _odd_branch(conds)
    x = np.asarray(x_grid, dtype=float)
    return np.exp(-conds.kappa0 * np.abs(x)) * ((1 + root) - t * cmath.exp(1j * conds.phi_rel) * np.sign(x))


@dataclass(frozen=True)
class AnomalyFlow:
    mu: float
    c1_mod: float
    k_cot_theta: float
    inverse_mixing_length: float
    pole: float
    t_matrix: ScatterMatrix
    t_limit: ScatterMatrix


def anomaly_flow(kappa0: float, mu: float, k: float) -> AnomalyFlow:
    """
    Odd sector with the bare c0 held at zero in PDS(mu): fixing the pole at kappa0
    forces |c1| to run with mu, and so does the mixing angle.
    """
    k = require_momentum(k)
    if not (kappa0 > 0 and 2 * mu > kappa0):
        raise InvalidScale(f"Need 2*mu > kappa0 > 0, got kappa0={kappa0}, mu={mu}")
    c1_mod = math.sqrt(kappa0 / (2 * mu - kappa0))
    scheme = Scheme.pds(mu)
    pole = 2 * c1_mod ** 2 * delta_at_origin(scheme) / (1 + c1_mod ** 2)
    return AnomalyFlow(
        mu=mu,
        c1_mod=c1_mod,
        k_cot_theta=mu * c1_mod,
        inverse_mixing_length=mu * c1_mod,
        pole=pole,
        t_matrix=t_matrix_odd(0.0, c1_mod, 0.0, scheme, k),
        t_limit=_t([[1.0 / (k / kappa0 - 1j), 0], [0, 0]]),
    )


# ===========================================
# All four couplings
# ===========================================

def t_matrix_full(couplings: ContactCouplings, k: float) -> ScatterMatrix:
    """
    Closed form with c0, c1, c1_tilde and c2p in NDR. Other schemes are only
    accepted when one sector is absent, through t_matrix_odd or t_matrix_even.
    """
    k = require_momentum(k)
    c0, c2 = couplings.c0, couplings.c2p
    c1c = couplings.c1_complex
    if couplings.scheme.kind != Scheme.NDR:
        if c2 == 0:
            return t_matrix_odd(c0, couplings.c1, couplings.c1_tilde, couplings.scheme, k)
        if c1c == 0:
            return t_matrix_even(c0, c2, couplings.scheme, k)
        raise UnsupportedScheme(
            f"Mixed c1/c2p couplings are only solved in NDR, not {couplings.scheme.kind}"
        )
    mod2 = abs(c1c) ** 2
    den = (1 - 1j * k * c2) * (k - 1j * c0) + k * mod2
    return _t([
        [((1 - 1j * k * c2) * c0 + 1j * k * mod2) / den, -1j * k * c1c / den],
        [1j * k * c1c.conjugate() / den, (k * c2 * (k - 1j * c0) + 1j * k * mod2) / den],
    ])


@dataclass(frozen=True)
class FullObservables:
    phi_rel: float
    intercept: float
    slope: float
    kappas: List[complex]

    def k_cot_theta(self, k: float) -> float:
        return self.intercept + self.slope * k * k


def full_observables(couplings: ContactCouplings) -> FullObservables:
    """
    Relative phase, the mixing line and the pole momenta kappa of the NDR
    T-matrix (kappa_plus first). With s the sign of 1 - |c1|^2 + c0 c2p,

        phi_rel = -arg(s c1)    k cot(theta) = s (c0 - k^2 c2p)/(2|c1|)

    s is the sign of cos(phi) times that of alpha + gamma + 2 cos(phi), so the
    angles match eigen_observables for phi in (-pi/2, pi/2]; at cos(phi) = 0
    s follows c1_tilde, keeping phi_rel in (-pi, 0].
    """
    c1c = couplings.c1_complex
    if c1c == 0:
        raise DegenerateMixing("c1 = c1_tilde = 0: no mixing, relative phase undefined")
    c0, c2 = couplings.c0, couplings.c2p
    mod2 = abs(c1c) ** 2
    if c0 == 0 and c2 == 0:
        kappas = []
    elif c2 == 0:
        kappas = [c0 / (1 + mod2)]
    else:
        q = 1 + mod2 - c2 * c0
        root = cmath.sqrt(q * q + 4 * c2 * c0)
        kappas = [(-q + root) / (2 * c2), (-q - root) / (2 * c2)]
        kappas = [z.real if abs(z.imag) == 0 else z for z in kappas]
    cos_side = 1 - mod2 + c0 * c2
    if abs(cos_side) > LANDAU_TOL:
        sign = math.copysign(1.0, cos_side)
    else:
        sign = math.copysign(1.0, couplings.c1_tilde)
    phi_rel = -cmath.phase(sign * c1c)
    if phi_rel <= -math.pi:
        phi_rel = math.pi
    mod = math.sqrt(mod2)
    return FullObservables(phi_rel=phi_rel, intercept=sign * c0 / (2 * mod), slope=-sign * c2 / (2 * mod),
                           kappas=kappas)
