"""The two supported field families: ℚ(√d) with ℓ = 2, and tower layers B_n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .arith import is_prime, squarefree_part
from .errors import InvalidField


@dataclass(frozen=True)
class QuadraticField:
    """ℚ(√d) viewed as a 2-extension of ℚ; d is stored squarefree."""

    d: int

    def __post_init__(self):
        if self.d == 0:
            raise InvalidField("d must be nonzero")
        d = squarefree_part(self.d)
        if d == 1:
            raise InvalidField(f"d={self.d} is a square; Q(sqrt d) = Q")
        object.__setattr__(self, "d", d)

    @property
    def ell(self) -> int:
        return 2

    @property
    def degree(self) -> int:
        return 2

    def describe(self) -> dict:
        return {"family": "quadratic", "d": self.d, "ell": 2}


@dataclass(frozen=True)
class TowerLayer:
    """B_n: the degree-ℓ^n subfield of ℚ(ζ_{ℓ^(n+1)}), ℓ odd."""

    ell: int
    n: int

    def __post_init__(self):
        if not is_prime(self.ell) or self.ell == 2:
            raise InvalidField(f"tower layers need an odd prime ℓ, got {self.ell}")
        if self.n < 1:
            raise InvalidField(f"layer index must be >= 1, got {self.n}")

    @property
    def degree(self) -> int:
        return self.ell**self.n

    @property
    def conductor_modulus(self) -> int:
        return self.ell ** (self.n + 1)

    def describe(self) -> dict:
        return {"family": "tower", "ell": self.ell, "n": self.n}


FieldDescriptor = Union[QuadraticField, TowerLayer]


def make_field(d: int | None = None, tower_ell: int | None = None, layer: int | None = None) -> FieldDescriptor:
    if d is not None:
        if tower_ell is not None or layer is not None:
            raise InvalidField("give either d or (tower_ell, layer), not both")
        return QuadraticField(d)
    if tower_ell is None or layer is None:
        raise InvalidField("a tower layer needs both tower_ell and layer")
    return TowerLayer(tower_ell, layer)
