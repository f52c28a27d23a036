"""Logarithmic divisors, Frobenius elements and the logarithmic Artin map."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import is_prime, kronecker
from .errors import (
    FrobeniusUndefined,
    InvalidField,
    NotCoprime,
    PrecisionLoss,
    RayConditionFailed,
    RayConditionUnverifiable,
)
from .families import FieldDescriptor, QuadraticField, TowerLayer
from .fields import LogConductor, global_conductor
from .ladic import LAdicInt, Precision
from .logvals import indices, log_valuation_q
from .rational import RationalLike, as_rational
from .symbols import local_symbol

__all__ = [
    "LogDivisor",
    "QuadSign",
    "TowerExp",
    "GaloisElement",
    "CyclotomicAction",
    "ReciprocityResult",
    "log_divisor_of",
    "log_frobenius",
    "frobenius_action",
    "artin_image",
    "ray_condition",
    "is_admissible",
    "reciprocity_check",
]


def _field_prec(fld: FieldDescriptor, prec: Precision | None) -> Precision:
    prec = Precision(fld.ell) if prec is None else prec
    if prec.ell != fld.ell:
        raise InvalidField(f"field needs ℓ={fld.ell}, precision is for ℓ={prec.ell}")
    return prec


# ---------------------------------------------------------------- divisors

_TERM = re.compile(r"^\s*(l|\d+)\s*(?:\^\s*(\(.*\)|-?\d+))?\s*$")


@dataclass(frozen=True, eq=False)
class LogDivisor:
    """Finite formal sum Σ c_p·(p) with c_p ∈ ℤ_ℓ."""

    prec: Precision
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for p, c in self.coeffs.items():
            p = int(p)
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            c = LAdicInt.coerce(c, self.prec)
            if not c.is_zero():
                clean[p] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @property
    def ell(self) -> int:
        return self.prec.ell

    @property
    def support(self) -> frozenset:
        return frozenset(self.coeffs)

    def __getitem__(self, p: int) -> LAdicInt:
        return self.coeffs.get(p, LAdicInt(0, self.prec))

    def __add__(self, other: "LogDivisor") -> "LogDivisor":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out[p] + c if p in out else c
        prec = self.prec if self.prec.digits <= other.prec.digits else other.prec
        return LogDivisor(prec, out)

    def __neg__(self) -> "LogDivisor":
        return LogDivisor(self.prec, {p: -c for p, c in self.coeffs.items()})

    def __sub__(self, other: "LogDivisor") -> "LogDivisor":
        return self + (-other)

    def scale(self, n: int | LAdicInt) -> "LogDivisor":
        return LogDivisor(self.prec, {p: c * n for p, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, LogDivisor):
            return NotImplemented
        return all(self[p] == other[p] for p in self.support | other.support)

    __hash__ = None

    def is_coprime_to(self, conductor: LogConductor) -> bool:
        return not (self.support & conductor.support)

    @classmethod
    def parse(cls, text: str, prec: Precision) -> "LogDivisor":
        """Parse ``"7^1*13^2*l^3"``.

        ``l`` stands for the prime ℓ; its exponent may be an ℓ-adic literal
        in parentheses, e.g. ``l^(21 mod 3^3)``.  ``"1"`` or ``""`` is the
        zero divisor.
        """
        text = text.strip()
        coeffs: dict[int, LAdicInt] = {}
        if text in ("", "1", "0"):
            return cls(prec, coeffs)
        for term in text.split("*"):
            m = _TERM.match(term)
            if not m:
                raise ValueError(f"bad divisor term {term!r}")
            key, exp = m.groups()
            p = prec.ell if key == "l" else int(key)
            if exp is None:
                c = LAdicInt(1, prec)
            elif exp.startswith("("):
                c = LAdicInt.parse(exp[1:-1])
                if c.ell != prec.ell:
                    raise ValueError(f"coefficient {exp} is not {prec.ell}-adic")
            else:
                c = LAdicInt(int(exp), prec)
            coeffs[p] = coeffs[p] + c if p in coeffs else c
        return cls(prec, coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "1"
        terms = []
        for p, c in self.coeffs.items():
            s = c.signed()
            exp = str(s) if abs(s) < 10**6 else f"({c})"
            terms.append(f"{p}^{exp}")
        return "*".join(terms)

    def to_dict(self) -> dict:
        return {"ell": self.ell, "coeffs": {str(p): str(c) for p, c in self.coeffs.items()}}

    @classmethod
    def from_dict(cls, data: dict, guard: int | None = None) -> "LogDivisor":
        coeffs = {int(p): LAdicInt.parse(c, guard) for p, c in data["coeffs"].items()}
        if not coeffs:
            return cls(Precision(data["ell"]), {})
        prec = min((c.prec for c in coeffs.values()), key=lambda q: q.digits)
        return cls(prec, coeffs)


def log_divisor_of(a: RationalLike, ell: int, prec: Precision | None = None) -> LogDivisor:
    """diṽ(a): v_p(a) at p ≠ ℓ and ṽ_ℓ(a) at ℓ."""
    a = as_rational(a)
    prec = Precision(ell) if prec is None else prec
    coeffs = {p: LAdicInt(e, prec) for p, e in a.factors if p != ell}
    coeffs[ell] = log_valuation_q(a, ell, prec)
    return LogDivisor(prec, coeffs)


# ---------------------------------------------------------------- Galois side


@dataclass(frozen=True)
class QuadSign:
    """Element of Gal(ℚ(√d)/ℚ) as the sign it puts on √d."""

    s: int = 1

    def __post_init__(self):
        if self.s not in (1, -1):
            raise ValueError(f"sign must be ±1, got {self.s}")

    def __mul__(self, other: "QuadSign") -> "QuadSign":
        return QuadSign(self.s * other.s)

    def __pow__(self, c: int | LAdicInt) -> "QuadSign":
        if isinstance(c, LAdicInt):
            if c.ell != 2:
                raise ValueError("quadratic exponents must be 2-adic")
            c = c.residue
        return QuadSign(self.s ** (c % 2))

    def inverse(self) -> "QuadSign":
        return self

    def is_identity(self) -> bool:
        return self.s == 1

    def order(self) -> int:
        return 1 if self.s == 1 else 2

    def to_dict(self) -> dict:
        return {"sign": self.s}


@dataclass(frozen=True)
class TowerExp:
    """Element of Gal(B_n/ℚ) ≅ ℤ/ℓ^n as the exponent t of (1+ℓ)^t."""

    t: int
    ell: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "t", self.t % self.ell**self.n)

    @property
    def modulus(self) -> int:
        return self.ell**self.n

    def _check(self, other: "TowerExp"):
        if (self.ell, self.n) != (other.ell, other.n):
            raise ValueError("elements of different tower layers")

    def __mul__(self, other: "TowerExp") -> "TowerExp":
        self._check(other)
        return TowerExp(self.t + other.t, self.ell, self.n)

    def __pow__(self, c: int | LAdicInt) -> "TowerExp":
        if isinstance(c, LAdicInt):
            if c.ell != self.ell:
                raise ValueError(f"exponent must be {self.ell}-adic")
            if c.digits < self.n:
                raise PrecisionLoss(f"exponent known to {c.digits} digits, need {self.n}")
            c = c.residue
        return TowerExp(self.t * c, self.ell, self.n)

    def inverse(self) -> "TowerExp":
        return TowerExp(-self.t, self.ell, self.n)

    def is_identity(self) -> bool:
        return self.t == 0

    def order(self) -> int:
        if self.t == 0:
            return 1
        t, order = self.t, self.modulus
        while t % self.ell == 0:
            t //= self.ell
            order //= self.ell
        return order

    def restrict(self, m: int) -> "TowerExp":
        """Image under Gal(B_n/ℚ) → Gal(B_m/ℚ)."""
        if not 1 <= m <= self.n:
            raise ValueError(f"cannot restrict layer {self.n} to {m}")
        return TowerExp(self.t, self.ell, m)

    @property
    def cyclotomic_exponent(self) -> int:
        """The a with ζ ↦ ζ^a on ζ of order ℓ^(n+1)."""
        return pow(1 + self.ell, self.t, self.ell ** (self.n + 1))

    def to_dict(self) -> dict:
        return {"t": self.t, "ell": self.ell, "n": self.n}


GaloisElement = QuadSign | TowerExp


def galois_from_dict(data: dict) -> GaloisElement:
    if "sign" in data:
        return QuadSign(data["sign"])
    return TowerExp(data["t"], data["ell"], data["n"])


def identity(fld: FieldDescriptor) -> GaloisElement:
    if isinstance(fld, QuadraticField):
        return QuadSign(1)
    return TowerExp(0, fld.ell, fld.n)


@dataclass(frozen=True)
class CyclotomicAction:
    """ζ ↦ ζ^exponent on a primitive root of unity of order ``order``."""

    order: int
    exponent: int

    def to_dict(self) -> dict:
        return {"zeta_order": self.order, "exponent": self.exponent}


def log_frobenius(fld: FieldDescriptor, p: int, prec: Precision | None = None) -> GaloisElement:
    """Image of a logarithmic uniformizer at p under the Artin map."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    idx = indices(fld, p)
    if idx.e_log > 1:
        raise FrobeniusUndefined(f"{p} is logarithmically ramified in {fld.describe()}")
    if isinstance(fld, QuadraticField):
        if p != 2:
            return QuadSign(kronecker(fld.d, p))
        return QuadSign(1 if idx.f_log == 1 else -1)
    if isinstance(fld, TowerLayer):
        if p == fld.ell:
            return TowerExp(-1, fld.ell, fld.n)
        prec = _field_prec(fld, prec)
        if fld.n > prec.certified:
            raise PrecisionLoss(f"layer {fld.n} needs more than {prec.certified} certified digits")
        return TowerExp(log_valuation_q(p, fld.ell, prec).residue, fld.ell, fld.n)
    raise InvalidField(f"unsupported field {fld!r}")


def frobenius_action(fld: FieldDescriptor, p: int, prec: Precision | None = None) -> CyclotomicAction | None:
    """Realize the Frobenius at p on roots of unity, when the completion is cyclotomic.

    For ℚ(√d) this only happens at p = 2 with d ≡ 2 mod 16, where the
    completion is ℚ_2(√2) ⊂ ℚ_2(ζ_8) and the log uniformizer 3 acts through
    its local symbol.
    """
    frob = log_frobenius(fld, p, prec)
    if isinstance(frob, TowerExp):
        return CyclotomicAction(fld.ell ** (fld.n + 1), frob.cyclotomic_exponent)
    if p == 2 and frob.s == -1:
        sym = local_symbol(3, 2, 2, 3)
        return CyclotomicAction(8, sym.raw % 8)
    return None


def artin_image(fld: FieldDescriptor, D: LogDivisor, prec: Precision | None = None) -> GaloisElement:
    """Π_p Frob_p^{D(p)}, defined for D coprime to the conductor."""
    if D.ell != fld.ell:
        raise InvalidField(f"divisor is {D.ell}-adic, field needs ℓ={fld.ell}")
    _coprime(fld, D)
    out = identity(fld)
    for p, c in D.coeffs.items():
        out = out * log_frobenius(fld, p, prec) ** c
    return out


# ---------------------------------------------------------------- reciprocity


def _unit_mod8(a: Fraction) -> int:
    """2-adic unit part of a (odd numerator and denominator) mod 8."""
    num, den = a.numerator, a.denominator
    while num % 2 == 0:
        num //= 2
    while den % 2 == 0:
        den //= 2
    return num * den % 8  # den² ≡ 1 mod 8


def _norm_at_2(a: RationalLike, d: int) -> bool:
    """Whether a is a norm from ℚ_2(√d), via the 2-adic Hilbert symbol."""
    a = as_rational(a)
    alpha, u = a.v(2), _unit_mod8(a.to_fraction())
    beta, v = (1 if d % 2 == 0 else 0), _unit_mod8(Fraction(d))

    def eps(x):
        return (x - 1) // 2 % 2

    def omega(x):
        return (x * x - 1) // 8 % 2

    return (eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)) % 2 == 0


def ray_condition(fld: FieldDescriptor, a: RationalLike) -> None:
    """Raise unless a lies in the ray modulo the logarithmic conductor."""
    a = as_rational(a)
    cond = global_conductor(fld)
    for p, e in cond.exponents.items():
        if e != 1:
            raise RayConditionUnverifiable(f"conductor exponent {e} at {p}")
    if isinstance(fld, TowerLayer):
        return  # trivial conductor, no real places to worry about
    d = fld.d
    for p in sorted(cond.support):
        if p == 2:
            if not _norm_at_2(a, d):
                raise RayConditionFailed(f"{a} is not a local norm at 2 for d={d}")
        elif kronecker(_p_unit_residue(a, p), p) != 1:
            raise RayConditionFailed(f"{a} is not a square mod {p}")
    if d < 0 and a.sign < 0:
        raise RayConditionFailed(f"{a} is negative and d={d} < 0")


def _p_unit_residue(a, p: int) -> int:
    x = a.to_fraction()
    return x.numerator * pow(x.denominator, -1, p) % p


def _coprime(fld: FieldDescriptor, D: LogDivisor) -> None:
    bad = sorted(D.support & global_conductor(fld).support)
    if bad:
        raise NotCoprime(f"divisor meets the conductor at {bad}")


def is_admissible(fld: FieldDescriptor, a: RationalLike, prec: Precision | None = None) -> bool:
    prec = _field_prec(fld, prec)
    try:
        _coprime(fld, log_divisor_of(a, fld.ell, prec))
        ray_condition(fld, a)
    except (NotCoprime, RayConditionFailed):
        return False
    return True


@dataclass(frozen=True)
class ReciprocityResult:
    image: GaloisElement
    ok: bool
    divisor: LogDivisor | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        out = {"image": self.image.to_dict(), "ok": self.ok}
        if self.divisor is not None:
            out["divisor"] = str(self.divisor)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ReciprocityResult":
        return cls(galois_from_dict(data["image"]), data["ok"])


def reciprocity_check(fld: FieldDescriptor, a: RationalLike, prec: Precision | None = None) -> ReciprocityResult:
    """Artin image of diṽ(a) for a in the ray; ok when it is trivial."""
    prec = _field_prec(fld, prec)
    D = log_divisor_of(a, fld.ell, prec)
    _coprime(fld, D)
    ray_condition(fld, a)
    image = artin_image(fld, D, prec)
    return ReciprocityResult(image, image.is_identity(), D)
