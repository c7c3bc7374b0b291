"""
Regulated loop integrals I_2n(k) of the contact theory.

Odd moments vanish in every scheme used here, as does sgn(0).
"""

import logging
import math

from core.exceptions import UnsupportedMoment, ValidationFailure, ZeroDenominator
from eft.couplings import Scheme

logger = logging.getLogger(__name__)


def delta_at_origin(scheme: Scheme) -> float:
    """Regulated delta(0): Lambda/pi with a cutoff, mu in PDS, 0 in NDR."""
    if scheme.kind == Scheme.CUTOFF:
        return scheme.scale / math.pi
    if scheme.kind == Scheme.PDS:
        return scheme.scale
    return 0.0


def regulated_moment(n: int, k: float, scheme: Scheme) -> complex:
    """I_2n(k) for n = 0, 1 in every scheme; NDR also for n >= 2."""
    if n < 0:
        raise ValidationFailure(f"Moment index must be nonnegative, got {n}")
    if k < 0:
        raise ValidationFailure(f"Momentum must be nonnegative, got {k}")
    if n == 0:
        if k == 0:
            raise ZeroDenominator("I_0 diverges at threshold")
        return 0.5j / k
    if n == 1:
        return 0.5j * k + delta_at_origin(scheme)
    if scheme.kind != Scheme.NDR:
        raise UnsupportedMoment(f"I_{2 * n} is only available in NDR, not {scheme.kind}")
    return 0.5j * k ** (2 * n - 1)
