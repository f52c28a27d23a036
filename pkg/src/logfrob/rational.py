"""Nonzero rationals held in factored form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .arith import factor, is_prime

RationalLike = Union["RationalNonzero", int, Fraction, str]


@dataclass(frozen=True)
class RationalNonzero:
    """``sign * prod(p**e)`` with every key prime and every exponent nonzero."""

    sign: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        cleaned = {}
        for p, e in self.factors:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            cleaned[p] = cleaned.get(p, 0) + e
        object.__setattr__(
            self, "factors", tuple(sorted((p, e) for p, e in cleaned.items() if e))
        )

    @classmethod
    def from_fraction(cls, x: Fraction | int) -> "RationalNonzero":
        x = Fraction(x)
        if x == 0:
            raise ValueError("zero is not an element of the multiplicative group")
        exps = dict(factor(x.numerator))
        for p, e in factor(x.denominator).items():
            exps[p] = exps.get(p, 0) - e
        return cls(1 if x > 0 else -1, tuple(exps.items()))

    @classmethod
    def parse(cls, text: str) -> "RationalNonzero":
        """Parse ``"A/B"`` or ``"A"``."""
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {text!r}") from exc
        return cls.from_fraction(value)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def v(self, p: int) -> int:
        """Classical p-adic valuation."""
        return dict(self.factors).get(p, 0)

    def to_fraction(self) -> Fraction:
        x = Fraction(self.sign)
        for p, e in self.factors:
            x *= Fraction(p) ** e
        return x

    def unit_part(self, p: int) -> Fraction:
        """``a * p**(-v_p(a))`` as an exact rational."""
        return self.to_fraction() / Fraction(p) ** self.v(p)

    def __mul__(self, other: RationalLike) -> "RationalNonzero":
        other = as_rational(other)
        return RationalNonzero(self.sign * other.sign, self.factors + other.factors)

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike) -> "RationalNonzero":
        return self * as_rational(other).inverse()

    def inverse(self) -> "RationalNonzero":
        return RationalNonzero(self.sign, tuple((p, -e) for p, e in self.factors))

    def __pow__(self, n: int) -> "RationalNonzero":
        if n == 0:
            return RationalNonzero(1)
        sign = self.sign if n % 2 else 1
        return RationalNonzero(sign, tuple((p, e * n) for p, e in self.factors))

    def __str__(self) -> str:
        return str(self.to_fraction())


def as_rational(x: RationalLike) -> RationalNonzero:
    if isinstance(x, RationalNonzero):
        return x
    if isinstance(x, str):
        return RationalNonzero.parse(x)
    if isinstance(x, (int, Fraction)):
        return RationalNonzero.from_fraction(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a nonzero rational")


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, RationalNonzero):
        return x.to_fraction()
    if isinstance(x, str):
        value = Fraction(x.strip())
    elif isinstance(x, (int, Fraction)):
        value = Fraction(x)
    else:
        raise TypeError(f"cannot interpret {type(x).__name__} as a nonzero rational")
    if value == 0:
        raise ValueError("zero is not an element of the multiplicative group")
    return value


def valuation(x: RationalLike, p: int) -> int:
    """v_p(x) without factoring x."""
    if isinstance(x, RationalNonzero):
        return x.v(p)
    x = _as_fraction(x)
    v, num, den = 0, x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_part(x: RationalLike, p: int) -> Fraction:
    """x·p^(-v_p(x)), again without factoring."""
    return _as_fraction(x) / Fraction(p) ** valuation(x, p)
