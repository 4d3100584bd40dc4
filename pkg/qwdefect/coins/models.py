from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from qwdefect.errors import NotUnitaryError, PreconditionError
from qwdefect.types import Mat2

UNITARY_ATOL = 1e-12
TWO_PI = 2.0 * math.pi


class CoinAngles(BaseModel):
    """Angles (omega, omega_tilde) of the phase coin family, radians in [0, 2pi)."""

    omega: float = Field(..., ge=0.0, lt=TWO_PI, description="Diagonal phase")
    omega_tilde: float = Field(0.0, ge=0.0, lt=TWO_PI, description="Off-diagonal phase")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def wrapped(cls, omega: float, omega_tilde: float = 0.0) -> "CoinAngles":
        return cls(omega=omega % TWO_PI, omega_tilde=omega_tilde % TWO_PI)


@dataclass(frozen=True)
class CoinMatrix:
    """
    A 2x2 unitary coin [[a, b], [c, d]].

    Coins used by the generating-function machinery need a*b*c*d != 0; pass
    ``require_generic=False`` (or use :meth:`type_two`) for coins with zero
    entries, which then only support dense arithmetic.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    require_generic: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            value = complex(getattr(self, name))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValueError(f"Coin entry '{name}' must be finite, got {value}.")
            object.__setattr__(self, name, value)

        u = self.matrix
        err = float(np.max(np.abs(u @ u.conj().T - np.eye(2))))
        if err > UNITARY_ATOL:
            raise NotUnitaryError(f"Coin is not unitary (max |UU^+ - I| = {err:.3e}).", field="coin")
        if self.require_generic and not self.is_generic:
            raise PreconditionError(
                "Coin needs a*b*c*d != 0; build it with require_generic=False.", field="coin"
            )

    @classmethod
    def from_matrix(cls, matrix: Mat2, require_generic: bool = True) -> "CoinMatrix":
        m = np.asarray(matrix, dtype=np.complex128)
        if m.shape != (2, 2):
            raise ValueError(f"Coin matrix must be 2x2, got shape {m.shape}.")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1], require_generic=require_generic)

    @classmethod
    def type_two(cls) -> "CoinMatrix":
        """Reflecting coin a=d=0, b=c=1 used for the half-line walk."""
        return cls(0.0, 1.0, 1.0, 0.0, require_generic=False)

    @property
    def matrix(self) -> Mat2:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def is_generic(self) -> bool:
        return self.a * self.b * self.c * self.d != 0

    @property
    def upper_row(self) -> Tuple[complex, complex]:
        return (self.a, self.b)

    @property
    def lower_row(self) -> Tuple[complex, complex]:
        return (self.c, self.d)


@dataclass(frozen=True)
class PqrsWeight:
    """Coefficients of p*P0 + q*Q0 + r*R0 + s*S0 in the defect-coin basis."""

    p: complex = 0j
    q: complex = 0j
    r: complex = 0j
    s: complex = 0j

    def __post_init__(self) -> None:
        for name in ("p", "q", "r", "s"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([self.p, self.q, self.r, self.s], dtype=np.complex128)

    @classmethod
    def from_coefficients(cls, values) -> "PqrsWeight":
        p, q, r, s = (complex(v) for v in values)
        return cls(p, q, r, s)

    def __add__(self, other: "PqrsWeight") -> "PqrsWeight":
        return PqrsWeight.from_coefficients(self.coefficients + other.coefficients)

    def scaled(self, factor: complex) -> "PqrsWeight":
        return PqrsWeight.from_coefficients(factor * self.coefficients)

    def to_dense(self, defect: CoinMatrix) -> Mat2:
        # P0 and R0 live in the L row, S0 and Q0 in the R row.
        upper = np.array(defect.upper_row, dtype=np.complex128)
        lower = np.array(defect.lower_row, dtype=np.complex128)
        dense = np.zeros((2, 2), dtype=np.complex128)
        dense[0] = self.p * upper + self.r * lower
        dense[1] = self.s * upper + self.q * lower
        return dense

    def allclose(self, other: "PqrsWeight", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.coefficients, other.coefficients, rtol=0.0, atol=atol))
