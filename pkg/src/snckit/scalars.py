"""Exact nonzero scalars: positive rational modulus times a rational phase.

An element is written r * e^(2*pi*i*theta) with r a positive rational and
theta a rational in [0, 1).  This subgroup of the multiplicative group of
nonzero complex numbers is closed under multiplication and inverses, and
torsion is decidable: an element has finite order exactly when r = 1, and
the order is then the denominator of theta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"expected a rational, got {value!r}")


@dataclass(frozen=True)
class ExactScalar:
    """A nonzero scalar with exact rational modulus and phase fraction."""

    modulus: Fraction
    phase: Fraction

    def __post_init__(self):
        object.__setattr__(self, "modulus", _as_fraction(self.modulus))
        object.__setattr__(self, "phase", _as_fraction(self.phase) % 1)
        if self.modulus <= 0:
            raise ValueError(f"modulus must be positive, got {self.modulus}")

    @classmethod
    def identity(cls) -> ExactScalar:
        return cls(Fraction(1), Fraction(0))

    @classmethod
    def of(cls, modulus, phase=0) -> ExactScalar:
        """Build from ints, strings like "2/3", or Fractions."""
        return cls(_as_fraction(modulus), _as_fraction(phase))

    @property
    def is_identity(self) -> bool:
        return self.modulus == 1 and self.phase == 0

    @property
    def is_torsion(self) -> bool:
        return self.modulus == 1

    @property
    def torsion_order(self) -> int:
        """Order in the scalar group; only defined for torsion elements."""
        if not self.is_torsion:
            raise ValueError(f"{self} has modulus != 1 and infinite order")
        return self.phase.denominator

    def __mul__(self, other: ExactScalar) -> ExactScalar:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return ExactScalar(self.modulus * other.modulus, self.phase + other.phase)

    def inverse(self) -> ExactScalar:
        return ExactScalar(1 / self.modulus, -self.phase)

    def __pow__(self, n: int) -> ExactScalar:
        if not isinstance(n, int):
            return NotImplemented
        return ExactScalar(self.modulus**n, n * self.phase)

    def __str__(self) -> str:
        return f"{self.modulus}@{self.phase}"

    @classmethod
    def parse(cls, text: str) -> ExactScalar:
        """Inverse of str(): "modulus@phase" with rationals as p/q."""
        mod, sep, ph = text.partition("@")
        if not sep:
            raise ValueError(f"malformed scalar {text!r}, expected 'modulus@phase'")
        return cls(Fraction(mod), Fraction(ph))
