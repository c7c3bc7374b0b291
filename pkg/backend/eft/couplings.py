"""
Contact-interaction couplings, regularization schemes and renormalization
conditions.
"""

import math
from dataclasses import dataclass

from core.exceptions import InvalidScale, UnsupportedScheme, ValidationFailure


@dataclass(frozen=True)
class Scheme:
    """Cutoff (scale = Lambda), PDS (scale = mu) or NDR (no scale)."""
    kind: str
    scale: float = 0.0

    CUTOFF = 'Cutoff'
    PDS = 'PDS'
    NDR = 'NDR'

    @classmethod
    def cutoff(cls, lambda_cutoff: float) -> 'Scheme':
        lambda_cutoff = float(lambda_cutoff)
        if not (math.isfinite(lambda_cutoff) and lambda_cutoff > 0):
            raise InvalidScale(f"Cutoff must be positive, got {lambda_cutoff}")
        return cls(cls.CUTOFF, lambda_cutoff)

    @classmethod
    def pds(cls, mu: float) -> 'Scheme':
        mu = float(mu)
        if not (math.isfinite(mu) and mu >= 0):
            raise InvalidScale(f"PDS scale must be nonnegative, got {mu}")
        return cls(cls.PDS, mu)

    @classmethod
    def ndr(cls) -> 'Scheme':
        return cls(cls.NDR)

    @classmethod
    def from_dict(cls, data: dict) -> 'Scheme':
        kind = data.get('kind')
        if kind == cls.NDR:
            return cls.ndr()
        if kind == cls.PDS:
            return cls.pds(data.get('scale', 0.0))
        if kind == cls.CUTOFF:
            return cls.cutoff(data.get('scale', 0.0))
        raise UnsupportedScheme(f"Unknown scheme {kind!r}")

    def to_dict(self) -> dict:
        if self.kind == self.NDR:
            return {'kind': self.NDR}
        return {'kind': self.kind, 'scale': self.scale}


@dataclass(frozen=True)
class ContactCouplings:
    c0: float
    c1: float = 0.0
    c1_tilde: float = 0.0
    c2p: float = 0.0
    scheme: Scheme = Scheme(Scheme.NDR)

    @property
    def c1_complex(self) -> complex:
        return complex(self.c1, self.c1_tilde)

    @property
    def c1_mod_squared(self) -> float:
        return self.c1 ** 2 + self.c1_tilde ** 2


@dataclass(frozen=True)
class RenormConditions:
    """Pole position kappa0, relative phase and mixing length of the parity-odd sector."""
    kappa0: float
    phi_rel: float
    a_theta: float

    @property
    def strength(self) -> float:
        return self.kappa0 * self.a_theta


def couplings_to_dict(couplings: ContactCouplings) -> dict:
    return {
        'c0': couplings.c0,
        'c1': couplings.c1,
        'c1_tilde': couplings.c1_tilde,
        'c2p': couplings.c2p,
        'scheme': couplings.scheme.to_dict(),
    }


def couplings_from_dict(data: dict) -> ContactCouplings:
    try:
        values = {name: float(data.get(name, 0.0)) for name in ('c0', 'c1', 'c1_tilde', 'c2p')}
    except (TypeError, ValueError) as exc:
        raise ValidationFailure(f"Couplings must be numbers: {exc}") from exc
    for name, value in values.items():
        if not math.isfinite(value):
            raise ValidationFailure(f"{name} must be finite, got {value}")
    scheme = Scheme.from_dict(data.get('scheme') or {'kind': Scheme.NDR})
    return ContactCouplings(scheme=scheme, **values)
