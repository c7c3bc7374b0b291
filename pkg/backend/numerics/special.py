"""
Real-argument Gamma helpers for the trap spectrum conditions.

All values are built from scipy's gammaln/gammasgn so large energies never
overflow: the trap only ever needs ratios and normalized pairs.
"""

import logging
import math
from dataclasses import dataclass

from scipy import special

from core.exceptions import GammaRatioInfinite, PoleArgument

logger = logging.getLogger(__name__)

POLE_TOL = 1e-14


@dataclass(frozen=True)
class SignedLog:
    """Gamma value stored as sign * exp(log_abs)."""
    log_abs: float
    sign: int

    @property
    def value(self) -> float:
        return self.sign * math.exp(self.log_abs)


def is_gamma_pole(x: float) -> bool:
    """True when x is a nonpositive integer to within POLE_TOL."""
    return x <= POLE_TOL and abs(x - round(x)) < POLE_TOL


def log_gamma_signed(x: float) -> SignedLog:
    if is_gamma_pole(x):
        raise PoleArgument(f"Gamma has a pole at x={x}")
    return SignedLog(float(special.gammaln(x)), int(special.gammasgn(x)))


def gamma_ratio(x: float) -> float:
    """
    Gamma(3/4 - x) / Gamma(1/4 - x).

    Exact 0 where the denominator has a pole (x = 1/4 + n); raises
    GammaRatioInfinite where the numerator does (x = 3/4 + n).
    """
    num, den = 0.75 - x, 0.25 - x
    if is_gamma_pole(num):
        raise GammaRatioInfinite(f"Gamma ratio is infinite at x={x}")
    if is_gamma_pole(den):
        return 0.0
    top, bottom = log_gamma_signed(num), log_gamma_signed(den)
    return top.sign * bottom.sign * math.exp(top.log_abs - bottom.log_abs)


def _reciprocal_log(z: float):
    if is_gamma_pole(z):
        return 0, -math.inf
    lg = log_gamma_signed(z)
    return lg.sign, -lg.log_abs


def reciprocal_gamma_pair(x: float) -> tuple:
    """
    (P, Q) = (1/Gamma(1/4 - x), 1/Gamma(3/4 - x)) scaled by a common positive
    factor so that max(|P|, |Q|) = 1.

    P and Q are proportional to U'(-2x, 0) and U(-2x, 0); both are entire in
    x, so the pair is finite everywhere and each vanishes exactly on its own
    Gamma poles. The common factor drops out of every spectrum condition.
    """
    sp, lp = _reciprocal_log(0.25 - x)
    sq, lq = _reciprocal_log(0.75 - x)
    top = max(lp, lq)
    p = sp * math.exp(lp - top) if sp else 0.0
    q = sq * math.exp(lq - top) if sq else 0.0
    return p, q
