"""Finite Boolean algebras, represented as powerset algebras over ``n`` atoms.

Every finite Boolean algebra is isomorphic to the powerset of its atoms, so
these are the only algebras constructed here.  An element is the set of atoms
below it, stored as an ``int`` bitmask (bit ``i`` set when atom ``i`` belongs
to the element).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

MAX_ATOMS = 16


class MixedAlgebraError(ValueError):
    """Raised when an operation combines elements of different algebras."""


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    atom_count: int

    def __post_init__(self):
        if self.atom_count < 0:
            raise ValueError("atom count must be non-negative")

    @property
    def full_mask(self) -> int:
        return (1 << self.atom_count) - 1

    @property
    def bottom(self) -> BAElement:
        return BAElement(0, self)

    @property
    def top(self) -> BAElement:
        return BAElement(self.full_mask, self)

    def __len__(self):
        return 1 << self.atom_count

    def __iter__(self) -> Iterator[BAElement]:
        for bits in range(1 << self.atom_count):
            yield BAElement(bits, self)

    def __contains__(self, x):
        return isinstance(x, BAElement) and x.algebra == self

    def element(self, atoms: Iterable[int]) -> BAElement:
        """Build the element whose atoms are the given indices."""
        bits = 0
        for i in atoms:
            if not 0 <= i < self.atom_count:
                raise ValueError(f"atom index {i} out of range for {self.atom_count} atoms")
            bits |= 1 << i
        return BAElement(bits, self)

    def from_bits(self, bits: int) -> BAElement:
        if bits & ~self.full_mask:
            raise ValueError(f"bitmask {bits:#x} has atoms outside the algebra")
        return BAElement(bits, self)

    def big_meet(self, xs: Iterable[BAElement]) -> BAElement:
        bits = self.full_mask
        for x in xs:
            self._own(x)
            bits &= x.bits
        return BAElement(bits, self)

    def big_join(self, xs: Iterable[BAElement]) -> BAElement:
        bits = 0
        for x in xs:
            self._own(x)
            bits |= x.bits
        return BAElement(bits, self)

    def _own(self, x):
        if not isinstance(x, BAElement) or x.algebra != self:
            raise MixedAlgebraError(f"{x!r} is not an element of {self!r}")

    def to_json(self) -> dict:
        return {"type": "powerset", "atoms": self.atom_count}

    @classmethod
    def from_json(cls, data) -> FiniteBooleanAlgebra:
        if data.get("type") != "powerset":
            raise ValueError(f"unsupported algebra type {data.get('type')!r}")
        return powerset_algebra(int(data["atoms"]))


@dataclass(frozen=True)
class BAElement:
    """An element of a powerset algebra.  ``<=`` is the lattice order."""

    bits: int
    algebra: FiniteBooleanAlgebra

    def _check(self, other):
        if not isinstance(other, BAElement) or other.algebra != self.algebra:
            raise MixedAlgebraError(f"cannot combine {self!r} with {other!r}")

    def meet(self, other: BAElement) -> BAElement:
        self._check(other)
        return BAElement(self.bits & other.bits, self.algebra)

    def join(self, other: BAElement) -> BAElement:
        self._check(other)
        return BAElement(self.bits | other.bits, self.algebra)

    def compl(self) -> BAElement:
        return BAElement(self.algebra.full_mask & ~self.bits, self.algebra)

    def imp(self, other: BAElement) -> BAElement:
        self._check(other)
        return BAElement((self.algebra.full_mask & ~self.bits) | other.bits, self.algebra)

    def __and__(self, other):
        return self.meet(other)

    def __or__(self, other):
        return self.join(other)

    def __invert__(self):
        return self.compl()

    def __le__(self, other):
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other):
        return other <= self

    def __lt__(self, other):
        return self <= other and self != other

    def __gt__(self, other):
        return other < self

    @property
    def is_top(self) -> bool:
        return self.bits == self.algebra.full_mask

    @property
    def is_bottom(self) -> bool:
        return self.bits == 0

    def atoms(self) -> list[int]:
        return [i for i in range(self.algebra.atom_count) if self.bits >> i & 1]

    def to_json(self) -> list[int]:
        return self.atoms()

    def __repr__(self):
        if self.algebra.atom_count == 1:
            return str(self.bits)
        return "{" + ",".join(map(str, self.atoms())) + "}"


# plain functions, for callers that prefer the spelled-out names
def meet(x: BAElement, y: BAElement) -> BAElement:
    return x.meet(y)


def join(x: BAElement, y: BAElement) -> BAElement:
    return x.join(y)


def compl(x: BAElement) -> BAElement:
    return x.compl()


def imp(x: BAElement, y: BAElement) -> BAElement:
    return x.imp(y)


def big_meet(xs: Iterable[BAElement], algebra: FiniteBooleanAlgebra | None = None) -> BAElement:
    """Infimum of ``xs``; the empty infimum is ``top`` and needs ``algebra``."""
    xs = list(xs)
    if algebra is None:
        if not xs:
            raise ValueError("big_meet of an empty collection needs the algebra")
        algebra = xs[0].algebra
    return algebra.big_meet(xs)


def big_join(xs: Iterable[BAElement], algebra: FiniteBooleanAlgebra | None = None) -> BAElement:
    xs = list(xs)
    if algebra is None:
        if not xs:
            raise ValueError("big_join of an empty collection needs the algebra")
        algebra = xs[0].algebra
    return algebra.big_join(xs)


@lru_cache(maxsize=None)
def powerset_algebra(n: int, cap: int = MAX_ATOMS) -> FiniteBooleanAlgebra:
    if n < 0:
        raise ValueError("atom count must be non-negative")
    if n > cap:
        raise ValueError(f"{n} atoms exceeds the cap of {cap}")
    return FiniteBooleanAlgebra(n)


def two() -> FiniteBooleanAlgebra:
    """The two-element algebra {0, 1}."""
    return powerset_algebra(1)
