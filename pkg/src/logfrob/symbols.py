"""The logarithmic local symbol on ℛ_{ℚ_p} acting on ℓ-power roots of unity.

For ζ of order ℓ^m the symbol (a, ℚ_p(ζ)/ℚ_p) sends ζ to ζ^{n_p} with

* n_p = p^{v_p(a)}              for p ≠ ℓ, ∞
* n_ℓ = (1 + ℓ)^{-ṽ_ℓ(a)}
* n_∞ = sgn(a) when ℓ = 2, and 1 otherwise.

Exponents are reported both raw and projected onto the ℓ-Sylow part
u ↦ u·ω(u)^{-1} (for ℓ = 2 the projection lands in 1 + 4ℤ).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import is_prime
from .errors import NotAUnit, PrecisionLoss
from .ladic import Precision, _teichmuller_residue
from .logvals import log_valuation_q
from .rational import RationalLike, as_rational

__all__ = [
    "INFINITY",
    "SylowExponent",
    "ProductCheck",
    "sylow_project",
    "local_symbol",
    "product_formula_check",
    "parse_place",
]

INFINITY = math.inf


@dataclass(frozen=True)
class SylowExponent:
    ell: int
    m: int
    raw: int
    value: int

    @property
    def modulus(self) -> int:
        return self.ell**self.m

    def __mul__(self, other: "SylowExponent") -> "SylowExponent":
        if (self.ell, self.m) != (other.ell, other.m):
            raise ValueError("symbols at different levels")
        mod = self.modulus
        return SylowExponent(self.ell, self.m, self.raw * other.raw % mod, self.value * other.value % mod)

    def is_trivial(self) -> bool:
        return self.value % self.modulus == 1 % self.modulus

    def to_dict(self) -> dict:
        return {"raw": self.raw, "projected": self.value, "modulus": f"{self.ell}^{self.m}"}

    @classmethod
    def from_dict(cls, data: dict) -> "SylowExponent":
        ell, m = (int(t) for t in data["modulus"].split("^"))
        return cls(ell, m, data["raw"], data["projected"])


def sylow_project(u: int, ell: int, m: int) -> SylowExponent:
    """Project the unit u mod ℓ^m onto the ℓ-Sylow part: u·ω(u)^{-1}.

    ``raw`` keeps u as given (so the sign at ∞ reads as -1).
    """
    if u % ell == 0:
        raise NotAUnit(f"{u} is divisible by {ell}")
    mod = ell**m
    # ω(u) mod 2 would lose the sign information needed for ℓ = 2
    digits = max(m, 2) if ell == 2 else m
    wide = ell**digits
    w = _teichmuller_residue(u % wide, ell, digits)
    value = u * pow(w, -1, wide) % mod
    return SylowExponent(ell, m, u, value)


def parse_place(p) -> int | float:
    """Accept a prime or one of ``inf``/``oo``/``∞``."""
    if isinstance(p, str):
        token = p.strip().lower()
        if token in ("inf", "oo", "∞", "infinity"):
            return INFINITY
        p = int(token)
    if p == INFINITY:
        return INFINITY
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime or ∞")
    return int(p)


def local_symbol(a: RationalLike, p, ell: int, m: int, prec: Precision | None = None) -> SylowExponent:
    """Exponent n_p of the logarithmic local symbol of a at p on ζ_{ℓ^m}."""
    a = as_rational(a)
    p = parse_place(p)
    prec = Precision(ell) if prec is None else prec
    if prec.ell != ell:
        raise ValueError(f"precision is for ℓ={prec.ell}, symbol asked for ℓ={ell}")
    mod = ell**m
    if p == INFINITY:
        raw = a.sign if ell == 2 else 1
    elif p != ell:
        raw = pow(p, a.v(p), mod)
    else:
        if m > prec.certified:
            raise PrecisionLoss(f"level {m} exceeds certified precision {prec.certified}")
        t = -log_valuation_q(a, ell, prec)
        raw = pow(1 + ell, t.residue, mod)
    return sylow_project(raw, ell, m)


@dataclass(frozen=True)
class ProductCheck:
    ell: int
    m: int
    residue: int
    ok: bool
    contributions: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"residue": f"{self.residue} mod {self.ell**self.m}", "ok": self.ok}


def product_formula_check(a: RationalLike, ell: int, m: int, prec: Precision | None = None) -> ProductCheck:
    """Multiply the projected local symbols of a over every contributing place."""
    a = as_rational(a)
    places: list = sorted(set(a.primes) | {ell})
    places.append(INFINITY)
    mod = ell**m
    residue = 1 % mod
    contributions = {}
    for p in places:
        sym = local_symbol(a, p, ell, m, prec)
        contributions["inf" if p == INFINITY else p] = sym
        residue = residue * sym.value % mod
    return ProductCheck(ell, m, residue, residue == 1 % mod, contributions)
