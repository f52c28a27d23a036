"""Prime classification and logarithmic conductors for the supported families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import factor, is_prime, v_p
from .errors import InvalidField
from .families import FieldDescriptor, QuadraticField, TowerLayer, make_field
from .ladic import LAdicInt
from .logvals import IndexTuple, indices

__all__ = [
    "FieldDescriptor",
    "QuadraticField",
    "TowerLayer",
    "make_field",
    "PrimeClassification",
    "LogConductor",
    "classify_prime",
    "local_conductor_exponent",
    "global_conductor",
    "filtration_level",
]


def _status(ram: int, inert: int) -> str:
    if ram > 1:
        return "ramified"
    if inert > 1:
        return "inert"
    return "split"


@dataclass(frozen=True)
class PrimeClassification:
    p: int
    e: int
    f: int
    e_log: int
    f_log: int

    @property
    def classical(self) -> str:
        return _status(self.e, self.f)

    @property
    def logarithmic(self) -> str:
        return _status(self.e_log, self.f_log)

    @property
    def index(self) -> IndexTuple:
        return IndexTuple(self.e, self.f, self.e_log, self.f_log)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "e_log": self.e_log,
            "f_log": self.f_log,
            "classical": self.classical,
            "logarithmic": self.logarithmic,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PrimeClassification":
        out = cls(data["p"], data["e"], data["f"], data["e_log"], data["f_log"])
        for key in ("classical", "logarithmic"):
            if key in data and data[key] != getattr(out, key):
                raise ValueError(f"{key} status {data[key]!r} disagrees with the indices")
        return out


def classify_prime(fld: FieldDescriptor, p: int) -> PrimeClassification:
    idx = indices(fld, p)
    return PrimeClassification(p, idx.e, idx.f, idx.e_log, idx.f_log)


def local_conductor_exponent(fld: FieldDescriptor, p: int) -> int:
    # in both families the first filtration layer is already made of local
    # norms, so a log-ramified prime gets exponent exactly 1
    return 1 if indices(fld, p).e_log > 1 else 0


@dataclass(frozen=True)
class LogConductor:
    exponents: dict = field(default_factory=dict)

    @property
    def support(self) -> frozenset:
        return frozenset(p for p, e in self.exponents.items() if e > 0)

    def divides(self, other: "LogConductor") -> bool:
        return all(other.exponents.get(p, 0) >= e for p, e in self.exponents.items())

    def is_trivial(self) -> bool:
        return not self.support

    def to_dict(self) -> dict:
        return {str(p): e for p, e in sorted(self.exponents.items())}

    @classmethod
    def from_dict(cls, data: dict) -> "LogConductor":
        return cls({int(p): int(e) for p, e in data.items()})


def _ramified_candidates(fld: FieldDescriptor) -> list[int]:
    # only classically ramified primes can be log-ramified, plus ℓ itself
    if isinstance(fld, QuadraticField):
        return sorted(set(factor(abs(fld.d))) | {2})
    if isinstance(fld, TowerLayer):
        return [fld.ell]
    raise InvalidField(f"unsupported field {fld!r}")


def global_conductor(fld: FieldDescriptor) -> LogConductor:
    exps = {}
    for p in _ramified_candidates(fld):
        e = local_conductor_exponent(fld, p)
        if e:
            exps[p] = e
    return LogConductor(exps)


def filtration_level(ell: int, c: LAdicInt | int) -> int | float:
    """Depth n of ℓ^c in the filtration ℓ^{ℓ^n ℤ_ℓ}; ∞ for c = 0."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if isinstance(c, LAdicInt):
        return c.valuation()
    return math.inf if c == 0 else v_p(c, ell)
