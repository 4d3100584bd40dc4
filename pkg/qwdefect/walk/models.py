from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from qwdefect.coins.algebra import hadamard, phase_defect
from qwdefect.coins.models import CoinMatrix, PqrsWeight
from qwdefect.errors import DeterminantMismatchError, PreconditionError

NORM_ATOL = 1e-12


@dataclass(frozen=True)
class WalkConfig:
    """Coin field with bulk coin U everywhere except U0 at ``defect_site``."""

    defect: CoinMatrix
    bulk: CoinMatrix
    defect_site: int = 0

    def coin_at(self, x: int) -> CoinMatrix:
        return self.defect if x == self.defect_site else self.bulk

    def shifted(self, k: int = 1) -> "WalkConfig":
        """The same field with every coin moved k sites to the right."""
        return WalkConfig(self.defect, self.bulk, self.defect_site + k)

    @property
    def same_determinant(self) -> bool:
        return abs(self.defect.det - self.bulk.det) <= 1e-12

    def require_same_determinant(self) -> None:
        if not self.same_determinant:
            raise DeterminantMismatchError(
                f"Closed forms need det(U0) = det(U); got {self.defect.det:.6g} and {self.bulk.det:.6g}.",
                field="defect",
            )

    @classmethod
    def homogeneous(cls, coin: CoinMatrix) -> "WalkConfig":
        return cls(defect=coin, bulk=coin)

    @classmethod
    def phase_defect(cls, omega: float) -> "WalkConfig":
        """Hadamard bulk with the U0(0, omega) defect at the origin."""
        return cls(defect=phase_defect(omega), bulk=hadamard())

    @classmethod
    def type_two(cls, b: complex) -> "WalkConfig":
        """Reflecting origin with bulk [[rho, conj(b)], [-b, rho]], rho = sqrt(1-|b|^2)."""
        b = complex(b)
        if not 0.0 < abs(b) < 1.0:
            raise PreconditionError(f"Half-line walk needs 0 < |b| < 1, got |b| = {abs(b):.6g}.", field="b")
        rho = math.sqrt(1.0 - abs(b) ** 2)
        bulk = CoinMatrix(rho, b.conjugate(), -b, rho)
        return cls(defect=CoinMatrix.type_two(), bulk=bulk)


@dataclass(frozen=True)
class CoinState:
    """Initial chirality spinor [alpha, beta] with |alpha|^2 + |beta|^2 = 1."""

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > NORM_ATOL:
            raise PreconditionError(f"Coin state must be normalized, |alpha|^2+|beta|^2 = {norm:.15g}.", field="psi0")

    @classmethod
    def normalized(cls, alpha: complex, beta: complex) -> "CoinState":
        norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        if norm == 0.0:
            raise PreconditionError("Coin state is zero.", field="psi0")
        return cls(alpha / norm, beta / norm)

    @classmethod
    def symmetric(cls) -> "CoinState":
        return cls(1 / math.sqrt(2.0), 1j / math.sqrt(2.0))

    @classmethod
    def left(cls) -> "CoinState":
        return cls(1.0, 0.0)

    @classmethod
    def right(cls) -> "CoinState":
        return cls(0.0, 1.0)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Amplitudes [Psi^L(x), Psi^R(x)] on the window [lo, lo + N - 1]."""

    lo: int
    amplitudes: np.ndarray
    time_index: int = 0

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 2 or amps.shape[1] != 2:
            raise ValueError(f"Amplitudes must have shape (N, 2), got {amps.shape}.")
        if self.time_index < 0:
            raise ValueError("time_index must be nonnegative.")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def localized(cls, x: int, vector: Iterable[complex]) -> "SpinorField":
        return cls(lo=x, amplitudes=np.asarray(list(vector), dtype=np.complex128).reshape(1, 2))

    @classmethod
    def at_origin(cls, state: CoinState) -> "SpinorField":
        return cls.localized(0, state.vector)

    @classmethod
    def zeros(cls, lo: int, hi: int) -> "SpinorField":
        return cls(lo=lo, amplitudes=np.zeros((hi - lo + 1, 2), dtype=np.complex128))

    @property
    def hi(self) -> int:
        return self.lo + self.amplitudes.shape[0] - 1

    @property
    def window(self) -> Tuple[int, int]:
        return (self.lo, self.hi)

    @property
    def positions(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    @property
    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def at(self, x: int) -> np.ndarray:
        if self.lo <= x <= self.hi:
            return self.amplitudes[x - self.lo].copy()
        return np.zeros(2, dtype=np.complex128)

    def restricted(self, lo: int, hi: int) -> np.ndarray:
        """Amplitudes on [lo, hi], zero-padded outside the stored window."""
        out = np.zeros((hi - lo + 1, 2), dtype=np.complex128)
        a, b = max(lo, self.lo), min(hi, self.hi)
        if a <= b:
            out[a - lo : b - lo + 1] = self.amplitudes[a - self.lo : b - self.lo + 1]
        return out


@dataclass(frozen=True, eq=False)
class Measure:
    """Nonnegative masses indexed by lattice position, stored on [lo, lo + N - 1]."""

    lo: int
    masses: np.ndarray

    def __post_init__(self) -> None:
        masses = np.asarray(self.masses, dtype=np.float64)
        if masses.ndim != 1:
            raise ValueError("Masses must be one-dimensional.")
        if np.any(masses < 0):
            raise ValueError("Masses must be nonnegative.")
        object.__setattr__(self, "masses", masses)

    def __getitem__(self, x: int) -> float:
        i = x - self.lo
        if 0 <= i < self.masses.shape[0]:
            return float(self.masses[i])
        return 0.0

    @property
    def hi(self) -> int:
        return self.lo + self.masses.shape[0] - 1

    @property
    def positions(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    def values(self, xs: Iterable[int]) -> np.ndarray:
        return np.array([self[int(x)] for x in xs])

    def total(self) -> float:
        return float(np.sum(self.masses))

    def as_dict(self) -> Dict[int, float]:
        return {int(x): float(m) for x, m in zip(self.positions, self.masses) if m > 0.0}

    def __add__(self, other: "Measure") -> "Measure":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        xs = range(lo, hi + 1)
        return Measure(lo, self.values(xs) + other.values(xs))


@dataclass(frozen=True, eq=False)
class PassageWeight:
    """Xi(x, n): summed ordered products over all n-step paths from 0 to x."""

    x: int
    n: int
    weight: np.ndarray
    pqrs: Optional[PqrsWeight] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight", np.asarray(self.weight, dtype=np.complex128).reshape(2, 2))

    def apply(self, state: CoinState) -> np.ndarray:
        return self.weight @ state.vector
