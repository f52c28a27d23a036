"""Truncated ℓ-adic arithmetic.

Elements of ℤ_ℓ are stored as a residue modulo ``ell**digits``.  Each
:class:`Precision` also carries ``guard`` digits: operations that divide by
ℓ-divisible quantities work internally at ``digits + guard`` and raise
:class:`~logfrob.errors.PrecisionLoss` when the divisor eats more than the
guard.  Returned residues are therefore exact modulo ``ell**digits``; the
advertised certification level is ``ell**(digits - guard)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .arith import ceil_log, floor_log, is_prime, v_p
from .errors import NotAUnit, NotPrincipal, PrecisionMismatch
from .rational import RationalLike, unit_part, valuation

__all__ = [
    "Precision",
    "LAdicInt",
    "LAdicNum",
    "default_guard",
    "from_rational",
    "mul",
    "inv",
    "teichmuller",
    "principal_part",
    "iwasawa_log",
    "log_rational",
    "pow_ladic",
]

DEFAULT_DIGITS = 32


def default_guard(ell: int, digits: int) -> int:
    """``2*ceil(log_ell(digits)) + 1``, clipped so that guard < digits."""
    return max(0, min(2 * ceil_log(ell, digits) + 1, digits - 1))


@dataclass(frozen=True)
class Precision:
    ell: int
    digits: int = DEFAULT_DIGITS
    guard: int | None = None

    def __post_init__(self):
        if not is_prime(self.ell):
            raise ValueError(f"ell must be prime, got {self.ell}")
        if self.digits < 1:
            raise ValueError("digits must be positive")
        if self.guard is None:
            object.__setattr__(self, "guard", default_guard(self.ell, self.digits))
        if not 0 <= self.guard < self.digits:
            raise ValueError(f"need 0 <= guard < digits, got guard={self.guard}")

    @property
    def modulus(self) -> int:
        return self.ell**self.digits

    @property
    def certified(self) -> int:
        return self.digits - self.guard

    @property
    def working(self) -> int:
        return self.digits + self.guard

    def at(self, digits: int) -> "Precision":
        return Precision(self.ell, digits, min(self.guard, digits - 1))

    def for_prime(self, p: int) -> "Precision":
        return Precision(p, self.digits, self.guard)


def _as_precision(prec: Precision | int | None, ell: int | None = None) -> Precision:
    if isinstance(prec, Precision):
        return prec
    if ell is None:
        raise ValueError("a prime ell is required")
    return Precision(ell, DEFAULT_DIGITS if prec is None else prec)


def _to_residue(value: int | Fraction, ell: int, modulus: int) -> int:
    value = Fraction(value)
    if value.denominator % ell == 0:
        raise NotAUnit(f"{value} is not ℓ-integral for ℓ={ell}")
    return value.numerator * pow(value.denominator, -1, modulus) % modulus


_LITERAL = re.compile(r"^\s*(-?\d+)\s+mod\s+(\d+)\^(\d+)\s*$")


@dataclass(frozen=True, eq=False)
class LAdicInt:
    """Element of ℤ_ℓ truncated modulo ``ell**digits``."""

    residue: int
    prec: Precision

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.prec.modulus)

    @classmethod
    def coerce(cls, value: "LAdicInt | int | Fraction", prec: Precision) -> "LAdicInt":
        if isinstance(value, LAdicInt):
            if value.ell != prec.ell:
                raise PrecisionMismatch(f"ℓ={value.ell} vs ℓ={prec.ell}")
            return value
        return cls(_to_residue(value, prec.ell, prec.modulus), prec)

    @property
    def ell(self) -> int:
        return self.prec.ell

    @property
    def digits(self) -> int:
        return self.prec.digits

    @property
    def modulus(self) -> int:
        return self.prec.modulus

    def _pair(self, other) -> tuple[int, int, Precision]:
        if isinstance(other, LAdicInt):
            if other.ell != self.ell:
                raise PrecisionMismatch(f"ℓ={self.ell} vs ℓ={other.ell}")
            prec = self.prec if self.digits <= other.digits else other.prec
            return self.residue, other.residue, prec
        if isinstance(other, (int, Fraction)):
            return self.residue, _to_residue(other, self.ell, self.modulus), self.prec
        return NotImplemented

    def __add__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return pair
        a, b, prec = pair
        return LAdicInt(a + b, prec)

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return pair
        a, b, prec = pair
        return LAdicInt(a - b, prec)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return LAdicInt(-self.residue, self.prec)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return pair
        a, b, prec = pair
        return LAdicInt(a * b, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LAdicInt):
            other = LAdicInt.coerce(other, self.prec)
        return self * other.inverse()

    def __eq__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return pair
        a, b, prec = pair
        return (a - b) % prec.modulus == 0

    __hash__ = None

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.residue % self.ell != 0

    def valuation(self) -> float | int:
        """ℓ-adic valuation of the residue; ``math.inf`` for zero."""
        if self.residue == 0:
            return math.inf
        return v_p(self.residue, self.ell)

    def inverse(self) -> "LAdicInt":
        if not self.is_unit():
            raise NotAUnit(f"{self} is not invertible")
        return LAdicInt(pow(self.residue, -1, self.modulus), self.prec)

    def reduce(self, digits: int) -> "LAdicInt":
        if digits > self.digits:
            raise PrecisionMismatch(f"cannot raise {self.digits} digits to {digits}")
        return LAdicInt(self.residue, self.prec.at(digits))

    def signed(self) -> int:
        """Representative in (-modulus/2, modulus/2]."""
        r = self.residue
        return r - self.modulus if r > self.modulus // 2 else r

    def __int__(self) -> int:
        return self.residue

    def __str__(self) -> str:
        return f"{self.residue} mod {self.ell}^{self.digits}"

    def __repr__(self) -> str:
        return f"LAdicInt({self})"

    @classmethod
    def parse(cls, text: str, guard: int | None = None) -> "LAdicInt":
        """Inverse of ``str``: ``"21 mod 3^3"``."""
        m = _LITERAL.match(text)
        if not m:
            raise ValueError(f"not an ℓ-adic literal: {text!r}")
        residue, ell, digits = (int(g) for g in m.groups())
        return cls(residue, Precision(ell, digits, guard))


@dataclass(frozen=True, eq=False)
class LAdicNum:
    """``p**val * unit`` in ℚ_p, the unit truncated modulo ``p**digits``."""

    val: int
    unit: LAdicInt

    def __post_init__(self):
        if not self.unit.is_unit():
            raise NotAUnit(f"{self.unit} is divisible by {self.unit.ell}")

    @property
    def prime(self) -> int:
        return self.unit.ell

    @property
    def prec(self) -> Precision:
        return self.unit.prec

    def __mul__(self, other: "LAdicNum") -> "LAdicNum":
        return mul(self, other)

    def __truediv__(self, other: "LAdicNum") -> "LAdicNum":
        return mul(self, inv(other))

    def inverse(self) -> "LAdicNum":
        return inv(self)

    def __eq__(self, other):
        if not isinstance(other, LAdicNum):
            return NotImplemented
        return self.prime == other.prime and self.val == other.val and self.unit == other.unit

    __hash__ = None

    def __repr__(self) -> str:
        return f"LAdicNum({self.prime}^{self.val} * {self.unit})"


def from_rational(a: RationalLike, p: int, prec: Precision | int | None = None) -> LAdicNum:
    """Embed a nonzero rational into ℚ_p.

    ``prec`` supplies the digit count; its ``ell`` may differ from ``p``.
    """
    if isinstance(prec, Precision):
        prec = prec.for_prime(p)
    else:
        prec = _as_precision(prec, p)
    unit = unit_part(a, p)
    return LAdicNum(valuation(a, p), LAdicInt(_to_residue(unit, p, prec.modulus), prec))


def mul(x: LAdicNum, y: LAdicNum) -> LAdicNum:
    if x.prime != y.prime:
        raise PrecisionMismatch(f"elements of Q_{x.prime} and Q_{y.prime}")
    return LAdicNum(x.val + y.val, x.unit * y.unit)


def inv(x: LAdicNum | LAdicInt) -> LAdicNum | LAdicInt:
    if isinstance(x, LAdicInt):
        return x.inverse()
    return LAdicNum(-x.val, x.unit.inverse())


def _unit_arg(u, ell: int | None, digits: int | None) -> LAdicInt:
    if isinstance(u, LAdicInt):
        return u
    if ell is None or digits is None:
        raise ValueError("ell and digits are required for a bare integer")
    return LAdicInt.coerce(u, Precision(ell, digits))


def _teichmuller_residue(u: int, ell: int, digits: int) -> int:
    if ell == 2:
        return 1 if u % 4 == 1 else (-1) % 2**digits
    mod = ell**digits
    x = u % mod
    while True:
        y = pow(x, ell, mod)
        if y == x:
            return x
        x = y


def teichmuller(u, ell: int | None = None, digits: int | None = None) -> LAdicInt:
    """Teichmüller representative ω(u): the root of unity congruent to u.

    For odd ℓ the limit of ``u**(ell**n)``; for ℓ = 2 it is ±1 according
    to ``u mod 4``.
    """
    u = _unit_arg(u, ell, digits)
    if not u.is_unit():
        raise NotAUnit(f"{u} is divisible by {u.ell}")
    if u.ell == 2 and u.digits < 2:
        return LAdicInt(1, u.prec)
    return LAdicInt(_teichmuller_residue(u.residue, u.ell, u.digits), u.prec)


def principal_part(u, ell: int | None = None, digits: int | None = None) -> LAdicInt:
    """⟨u⟩ = u / ω(u), congruent to 1 mod ℓ (mod 4 when ℓ = 2)."""
    u = _unit_arg(u, ell, digits)
    return u * teichmuller(u).inverse()


def _log_series(z: int, ell: int, digits: int) -> int:
    """``sum (-1)**(n+1) z**n / n`` modulo ``ell**digits`` for z in ℓℤ (4ℤ if ℓ=2).

    Terms are accumulated at ``digits + floor_log(ell, N)`` so the division
    by n never drops below the target precision.
    """
    mod = ell**digits
    z %= mod
    if z == 0:
        return 0
    vz = v_p(z, ell)
    n_max = 1
    while n_max * vz - floor_log(ell, n_max) < digits:
        n_max += 1
    extra = floor_log(ell, n_max)
    wide = ell ** (digits + extra)
    total, zn = 0, 1
    for n in range(1, n_max + 1):
        zn = zn * z % wide
        vn = v_p(n, ell)
        term = (zn // ell**vn) * pow(n // ell**vn, -1, mod)
        total += term if n % 2 else -term
    return total % mod


def _log_unit_residue(u: int, ell: int, digits: int) -> int:
    mod = ell**digits
    w = _teichmuller_residue(u, ell, digits)
    principal = u * pow(w, -1, mod) % mod
    return _log_series(principal - 1, ell, digits)


def log_rational(a: RationalLike, ell: int, digits: int) -> int:
    """Residue of Log_Iw(a) modulo ``ell**digits`` for a nonzero rational a."""
    mod = ell**digits
    return _log_unit_residue(_to_residue(unit_part(a, ell), ell, mod), ell, digits)


def iwasawa_log(x, prec: Precision | None = None) -> LAdicInt:
    """Iwasawa logarithm Log_Iw on ℚ_ℓ^×.

    Vanishes on ℓ and on roots of unity; on a principal unit 1 + z it is
    the usual series.  ``x`` is an :class:`LAdicNum` over ℚ_ℓ or a nonzero
    rational (then ``prec`` is required).
    """
    if isinstance(x, LAdicNum):
        p = x.prec if prec is None else prec
        if p.ell != x.prime:
            raise PrecisionMismatch(f"Log_Iw over ℓ={p.ell} of an element of Q_{x.prime}")
        unit = x.unit if p.digits >= x.unit.digits else x.unit.reduce(p.digits)
        digits = min(p.digits, x.unit.digits)
        return LAdicInt(_log_unit_residue(unit.residue, p.ell, digits), p.at(digits))
    if prec is None:
        raise ValueError("prec is required for a rational argument")
    return LAdicInt(log_rational(x, prec.ell, prec.digits), prec)


def pow_ladic(u, t, prec: Precision | None = None) -> LAdicInt:
    """u**t for a principal unit u and an ℓ-adic exponent t."""
    if not isinstance(u, LAdicInt):
        if prec is None:
            raise ValueError("prec is required for a bare integer base")
        u = LAdicInt.coerce(u, prec)
    bound = 4 if u.ell == 2 else u.ell
    if (u.residue - 1) % min(bound, u.modulus):
        raise NotPrincipal(f"{u} is not ≡ 1 mod {bound}")
    if isinstance(t, LAdicInt):
        if t.ell != u.ell:
            raise PrecisionMismatch(f"exponent in Z_{t.ell}, base in Z_{u.ell}")
        if t.digits < u.digits:
            u = u.reduce(t.digits)
        t = t.residue
    else:
        t = _to_residue(t, u.ell, u.modulus)
    return LAdicInt(pow(u.residue, t % u.modulus, u.modulus), u.prec)

