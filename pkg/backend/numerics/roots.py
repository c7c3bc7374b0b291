"""
Bracketed scalar root finding.

Thin wrapper around scipy's Brent solver that turns its failure modes into
the project's error hierarchy.
"""

import logging
import math

from django.conf import settings
from scipy import optimize

from core.exceptions import ConvergenceFailure, NoSignChange, NonFiniteValue

logger = logging.getLogger(__name__)


def bracketed_root(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """
    Root of f in [lo, hi]; f(lo) and f(hi) must differ in sign.

    Brent's method keeps every iterate inside the bracket, so f is never
    evaluated outside [lo, hi].
    """
    if lo > hi:
        lo, hi = hi, lo
    f_lo, f_hi = f(lo), f(hi)
    if not (math.isfinite(f_lo) and math.isfinite(f_hi)):
        raise NonFiniteValue(f"f is not finite at the bracket ends [{lo}, {hi}]")
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoSignChange(f"No sign change on [{lo}, {hi}]: f={f_lo:.3e}, {f_hi:.3e}")

    maxiter = getattr(settings, 'POINTSCAT_ROOT_MAXITER', 200)
    root, info = optimize.brentq(
        f, lo, hi, xtol=tol,
        maxiter=maxiter, full_output=True, disp=False,
    )
    if not info.converged:
        raise ConvergenceFailure(
            f"Root search on [{lo}, {hi}] did not converge in {maxiter} iterations"
        )
    logger.debug(f"Root {root:.15g} on [{lo:.6g}, {hi:.6g}] after {info.iterations} iterations")
    return root


def scan_for_bracket(f, lo: float, hi: float, points: int = 64):
    """
    First sub-interval of an even grid on [lo, hi] where f changes sign.
    Returns None when the grid never changes sign.
    """
    step = (hi - lo) / points
    x_prev, f_prev = lo, f(lo)
    for i in range(1, points + 1):
        x = hi if i == points else lo + i * step
        fx = f(x)
        if f_prev == 0.0:
            return x_prev, x_prev
        if (f_prev > 0) != (fx > 0) or fx == 0.0:
            return x_prev, x
        x_prev, f_prev = x, fx
    return None
