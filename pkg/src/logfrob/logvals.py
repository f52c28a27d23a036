"""ℓ-adic degrees, logarithmic valuations and the indices (e, f, ẽ, f̃).

Sign convention: ṽ_ℓ is normalized so that ṽ_ℓ(1 + ℓ) = +1 and
ṽ_ℓ(ℓ) = 0, i.e. ṽ_ℓ(a) = Log_Iw(a) / Log_Iw(1 + ℓ).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import is_prime, kronecker, sqrt_mod_prime_power, v_p
from .errors import InvalidField, PrecisionLoss, ZeroNorm
from .families import FieldDescriptor, QuadraticField, TowerLayer
from .ladic import LAdicInt, Precision, _log_unit_residue, log_rational
from .rational import RationalLike, RationalNonzero, valuation

__all__ = [
    "IndexTuple",
    "QuadLocalElement",
    "LatticeValue",
    "deg_ell",
    "log_valuation_q",
    "norm_quad",
    "log_valuation_quad",
    "h_value",
    "indices",
    "tower_inertia_degree",
]


def _precision(prec: Precision | int) -> Precision:
    return prec if isinstance(prec, Precision) else Precision(prec)


@lru_cache(maxsize=256)
def _log_tilde_ell(ell: int, digits: int) -> int:
    return log_rational(1 + ell, ell, digits)


def _divide_by_degree(log_num: int, prec: Precision, f_log: int = 1) -> LAdicInt:
    """Log-numerator (given mod ℓ^working) divided by f̃·Log_Iw(1+ℓ)."""
    ell, wide_digits = prec.ell, prec.working
    wide = ell**wide_digits
    den = f_log * _log_tilde_ell(ell, wide_digits) % wide
    w = v_p(den, ell)
    if w > prec.guard:
        raise PrecisionLoss(
            f"dividing by an element of valuation {w} needs more than {prec.guard} guard digits"
        )
    num = log_num % wide
    if num % ell**w:
        raise PrecisionLoss(f"quotient is not ℓ-integral (numerator valuation < {w})")
    low = ell ** (wide_digits - w)
    q = (num // ell**w) * pow(den // ell**w, -1, low) % low
    return LAdicInt(q, prec)


def deg_ell(p: int, prec: Precision | int) -> LAdicInt:
    """ℓ-adic degree: Log_Iw(p) for p ≠ ℓ, Log_Iw(1 + ℓ) for p = ℓ."""
    prec = _precision(prec)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    arg = 1 + prec.ell if p == prec.ell else p
    return LAdicInt(log_rational(arg, prec.ell, prec.digits), prec)


def log_valuation_q(a: RationalLike, p: int, prec: Precision | int) -> LAdicInt:
    """ṽ_p(a) on ℚ_p, valued in ℤ_ℓ (ℓ = ``prec.ell``).

    Equals the classical v_p(a) for p ≠ ℓ.
    """
    prec = _precision(prec)
    if p != prec.ell:
        return LAdicInt(valuation(a, p), prec)
    return _divide_by_degree(log_rational(a, prec.ell, prec.working), prec)


@dataclass(frozen=True)
class IndexTuple:
    e: int
    f: int
    e_log: int
    f_log: int

    def __post_init__(self):
        if self.e * self.f != self.e_log * self.f_log:
            raise ValueError(f"inconsistent indices {self}")

    @property
    def local_degree(self) -> int:
        return self.e * self.f

    def to_dict(self) -> dict:
        return {"e": self.e, "f": self.f, "e_log": self.e_log, "f_log": self.f_log}

    @classmethod
    def from_dict(cls, data: dict) -> "IndexTuple":
        return cls(data["e"], data["f"], data["e_log"], data["f_log"])


def tower_inertia_degree(ell: int, n: int, p: int) -> int:
    """Order of ⟨p⟩ in (1 + ℓℤ)/(1 + ℓ^(n+1)ℤ), for p ≠ ℓ."""
    mod = ell ** (n + 1)
    q = pow(p, ell - 1, mod)  # lands in 1 + ℓℤ; same ℓ-power order as ⟨p⟩
    order = 1
    while q != 1:
        q = pow(q, ell, mod)
        order *= ell
    return order


def indices(field: FieldDescriptor, p: int) -> IndexTuple:
    """Classical (e, f) and logarithmic (ẽ, f̃) indices of p in ``field``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(field, QuadraticField):
        return _quadratic_indices(field.d, p)
    if isinstance(field, TowerLayer):
        if p == field.ell:
            return IndexTuple(field.degree, 1, 1, field.degree)
        f = tower_inertia_degree(field.ell, field.n, p)
        return IndexTuple(1, f, 1, f)
    raise InvalidField(f"unsupported field {field!r}")


def _quadratic_indices(d: int, p: int) -> IndexTuple:
    if p != 2:
        if d % p == 0:
            return IndexTuple(2, 1, 2, 1)
        if kronecker(d, p) == 1:
            return IndexTuple(1, 1, 1, 1)
        return IndexTuple(1, 2, 1, 2)
    # ℚ_2(√d) lies in the cyclotomic ℤ_2-extension iff d or d/2 is a 2-adic square
    if d % 8 == 1:
        return IndexTuple(1, 1, 1, 1)
    if d % 8 == 5:
        return IndexTuple(1, 2, 2, 1)
    if d % 16 == 2:
        return IndexTuple(2, 1, 1, 2)
    return IndexTuple(2, 1, 2, 1)


@dataclass(frozen=True)
class QuadLocalElement:
    """a + b√d in the completion of ℚ(√d) at a prime above p."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "d", QuadraticField(self.d).d)
        if self.a == 0 and self.b == 0:
            raise ZeroNorm("a + b√d must be nonzero")

    @property
    def field(self) -> QuadraticField:
        return QuadraticField(self.d)


def norm_quad(x: QuadLocalElement) -> RationalNonzero:
    n = x.a * x.a - x.d * x.b * x.b
    if n == 0:
        raise ZeroNorm(f"{x} has zero norm")
    return RationalNonzero.from_fraction(n)


def _split_embedding(x: QuadLocalElement, p: int, digits: int) -> tuple[int, int, int]:
    """Image of x under √d ↦ s in ℚ_p (s the canonical root).

    Returns ``(valuation, unit_residue, digits)`` with the unit known
    modulo ``p**digits``.
    """
    den = x.a.denominator * x.b.denominator
    A = int(x.a * den)
    B = int(x.b * den)
    n_int = A * A - x.d * B * B
    # v_p(A + Bs) <= v_p(N) since the two conjugate embeddings multiply to N
    K = digits + v_p(n_int, p) + 2
    s = sqrt_mod_prime_power(x.d, p, K)
    Y = (A + B * s) % p**K
    v = v_p(Y, p)
    vd = v_p(den, p)
    mod = p**digits
    unit = (Y // p**v) * pow(den // p**vd, -1, mod) % mod
    return v - vd, unit, digits


def log_valuation_quad(x: QuadLocalElement, p: int, prec: Precision | int) -> LAdicInt:
    """ṽ_𝔭(x) for the prime 𝔭 of ℚ(√d) above p.

    At a split p the prime 𝔭 is the one where √d is the canonical p-adic
    root (see :func:`~logfrob.arith.sqrt_mod_prime_power`).
    """
    prec = _precision(prec)
    if prec.ell != 2:
        raise InvalidField("quadratic fields are handled as 2-extensions (ℓ = 2)")
    idx = _quadratic_indices(x.d, p)
    if idx.local_degree == 2:
        norm = norm_quad(x)
        if p != prec.ell:
            vn = norm.v(p)
            if vn % idx.f_log:
                raise ValueError(f"v_{p}(N) = {vn} not divisible by f̃ = {idx.f_log}")
            return LAdicInt(vn // idx.f_log, prec)
        return _divide_by_degree(log_rational(norm, 2, prec.working), prec, idx.f_log)
    if p != prec.ell:
        v, _, _ = _split_embedding(x, p, 1)
        return LAdicInt(v, prec)
    _, unit, _ = _split_embedding(x, 2, prec.working)
    return _divide_by_degree(_log_unit_residue(unit, 2, prec.working), prec)


@dataclass(frozen=True, eq=False)
class LatticeValue:
    """``numerator / denominator`` in the ℤ_ℓ-lattice (1/denominator)·ℤ_ℓ."""

    numerator: LAdicInt
    denominator: int = 1

    def __post_init__(self):
        num, den = self.numerator, self.denominator
        ell = num.ell
        unit_den = den
        while unit_den % ell == 0:
            unit_den //= ell
        if unit_den != 1:
            num = num * pow(unit_den, -1, num.modulus)
            den //= unit_den
        if num.is_zero():
            den = 1
        while den % ell == 0 and num.valuation() >= 1 and num.digits > 1:
            num = LAdicInt(num.residue // ell, num.prec.at(num.digits - 1))
            den //= ell
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def scale(self, n: int) -> "LatticeValue | LAdicInt":
        out = LatticeValue(self.numerator * n, self.denominator)
        return out.numerator if out.denominator == 1 else out

    def __eq__(self, other):
        if isinstance(other, LatticeValue):
            return (
                self.numerator * other.denominator == other.numerator * self.denominator
            )
        if isinstance(other, (LAdicInt, int)):
            return self.numerator == other * self.denominator
        return NotImplemented

    __hash__ = None

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"({self.numerator})/{self.denominator}"


def h_value(x: QuadLocalElement | RationalLike, p: int, prec: Precision | int) -> LatticeValue:
    """h_𝔭(x) = ṽ_𝔭(x) / ẽ_𝔭; for a rational x (base ℚ) this is ṽ_p(x)."""
    prec = _precision(prec)
    if isinstance(x, QuadLocalElement):
        e_log = _quadratic_indices(x.d, p).e_log
        return LatticeValue(log_valuation_quad(x, p, prec), e_log)
    return LatticeValue(log_valuation_q(x, p, prec), 1)
