"""
2x2 scattering matrices and the change between the traveling-wave basis
(right-moving, left-moving) and the partial-wave basis (symmetric,
antisymmetric).
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

# U = U^dagger = U^-1
PARTIAL_WAVE_ROTATION = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class Basis(str, Enum):
    TRAVELING = 'traveling'
    PARTIAL_WAVE = 'partial_wave'


class Kind(str, Enum):
    S = 'S'
    T = 'T'


@dataclass(frozen=True, eq=False)
class ScatterMatrix:
    entries: np.ndarray
    basis: Basis
    kind: Kind

    def to_basis(self, basis: Basis) -> 'ScatterMatrix':
        basis = Basis(basis)
        if basis == self.basis:
            return self
        u = PARTIAL_WAVE_ROTATION
        if basis == Basis.PARTIAL_WAVE:
            entries = u @ self.entries @ u.conj().T
        else:
            entries = u.conj().T @ self.entries @ u
        return ScatterMatrix(entries, basis, self.kind)

    def to_kind(self, kind: Kind) -> 'ScatterMatrix':
        kind = Kind(kind)
        if kind == self.kind:
            return self
        eye = np.eye(2, dtype=complex)
        if kind == Kind.T:
            entries = (self.entries - eye) / 2j
        else:
            entries = eye + 2j * self.entries
        return ScatterMatrix(entries, self.basis, kind)

    def unitarity_defect(self) -> float:
        """max |S^dagger S - 1| over the entries of the associated S-matrix."""
        s = self.to_kind(Kind.S).entries
        return float(np.abs(s.conj().T @ s - np.eye(2)).max())

    def __getitem__(self, index):
        return self.entries[index]
