"""Twist structures: the deterministic semantics of LFI1o.

A twist pair ``(z1, z2)`` with ``z1 | z2 = 1`` stores the values of a formula
and of its negation; consistency is computed, so no third coordinate is
needed.  Over the two-element algebra this is the three-valued matrix with
``1 = (1,0)``, ``1/2 = (1,1)`` and ``0 = (0,1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

from .boolalg import BAElement, FiniteBooleanAlgebra, two
from .search import Verdict
from .swap import BINARY_OPS, UNARY_OPS, _grid
from .syntax import And, Atom, Cons, Imp, Neg, Or, format_formula

HALF = "½"


class UnmappedAtom(KeyError):
    pass


@dataclass(frozen=True)
class TwistPair:
    z1: BAElement
    z2: BAElement

    @property
    def algebra(self) -> FiniteBooleanAlgebra:
        return self.z1.algebra

    def is_legal(self) -> bool:
        return (self.z1 | self.z2).is_top

    @property
    def key(self) -> tuple:
        return (self.z1.bits, self.z2.bits)

    def to_json(self) -> list:
        return [self.z1.to_json(), self.z2.to_json()]

    @classmethod
    def from_json(cls, data, algebra: FiniteBooleanAlgebra) -> TwistPair:
        if len(data) != 2:
            raise ValueError(f"a twist pair needs 2 coordinates, got {len(data)}")
        return cls(algebra.element(data[0]), algebra.element(data[1]))

    def __repr__(self):
        return f"({self.z1!r},{self.z2!r})"


@lru_cache(maxsize=None)
def twist_domain(algebra: FiniteBooleanAlgebra) -> tuple[TwistPair, ...]:
    return tuple(p for p in (TwistPair(a, b) for a, b in product(algebra, repeat=2))
                 if p.is_legal())


class TwistMatrix:
    """The twist algebra over ``algebra`` with designated set ``{z : z1 = 1}``."""

    def __init__(self, algebra: FiniteBooleanAlgebra, names: Mapping[TwistPair, str] | None = None):
        self.algebra = algebra
        self.domain = twist_domain(algebra)
        self.index = {p: i for i, p in enumerate(self.domain)}
        self.designated = tuple(p for p in self.domain if p.z1.is_top)
        self.names = dict(names or {})

    def __repr__(self):
        return f"TwistMatrix(atoms={self.algebra.atom_count}, |T|={len(self.domain)})"

    def is_designated(self, x: TwistPair) -> bool:
        return x.z1.is_top

    def name(self, x: TwistPair) -> str:
        return self.names.get(x, repr(x))

    def and_(self, x, y):
        return TwistPair(x.z1 & y.z1, x.z2 | y.z2)

    def or_(self, x, y):
        return TwistPair(x.z1 | y.z1, x.z2 & y.z2)

    def imp(self, x, y):
        return TwistPair(x.z1.imp(y.z1), x.z1 & y.z2)

    def neg(self, x):
        return TwistPair(x.z2, x.z1)

    def cons(self, x):
        both = x.z1 & x.z2
        return TwistPair(~both, both)

    def apply(self, op: str, *args) -> TwistPair:
        fn = {"and": self.and_, "or": self.or_, "imp": self.imp,
              "neg": self.neg, "cons": self.cons}.get(op)
        if fn is None:
            raise ValueError(f"unknown connective {op!r}")
        return fn(*args)

    def forall(self, xs: Iterable[TwistPair]) -> TwistPair:
        xs = list(xs)
        A = self.algebra
        return TwistPair(A.big_meet(x.z1 for x in xs), A.big_join(x.z2 for x in xs))

    def exists(self, xs: Iterable[TwistPair]) -> TwistPair:
        xs = list(xs)
        A = self.algebra
        return TwistPair(A.big_join(x.z1 for x in xs), A.big_meet(x.z2 for x in xs))


@lru_cache(maxsize=None)
def twist_matrix(algebra: FiniteBooleanAlgebra) -> TwistMatrix:
    return TwistMatrix(algebra)


def lfi1_values() -> dict[str, TwistPair]:
    A = two()
    z, o = A.bottom, A.top
    return {"1": TwistPair(o, z), HALF: TwistPair(o, o), "0": TwistPair(z, o)}


@lru_cache(maxsize=None)
def lfi1_matrix() -> TwistMatrix:
    """The three-valued matrix: twist structure over the two-element algebra."""
    return TwistMatrix(two(), names={p: n for n, p in lfi1_values().items()})


def lfi1_value(name: str) -> TwistPair:
    """Look up ``1``, ``0`` or the middle value (``½``, ``1/2`` or ``h``)."""
    if name in ("1/2", "h", "0.5"):
        name = HALF
    try:
        return lfi1_values()[name]
    except KeyError:
        raise ValueError(f"unknown three-valued name {name!r}") from None


def _atom_key(phi):
    if isinstance(phi, Atom) and not phi.args:
        return phi.pred
    raise ValueError(f"{format_formula(phi)} is not a propositional formula")


def atoms_of(formulas: Iterable) -> list[str]:
    """Propositional letters in first-occurrence order."""
    out: dict = {}

    def walk(phi):
        if isinstance(phi, (Neg, Cons)):
            walk(phi.body)
        elif isinstance(phi, (And, Or, Imp)):
            walk(phi.left)
            walk(phi.right)
        else:
            out.setdefault(_atom_key(phi), None)

    for phi in formulas:
        walk(phi)
    return list(out)


def eval_twist(phi, atom_map: Mapping, matrix: TwistMatrix | None = None) -> TwistPair:
    """Homomorphic extension of ``atom_map`` (keys: letter names or 0-ary atoms)."""
    M = matrix if matrix is not None else lfi1_matrix()
    amap = {(k.pred if isinstance(k, Atom) else k): v for k, v in atom_map.items()}

    def ev(f):
        if isinstance(f, Neg):
            return M.neg(ev(f.body))
        if isinstance(f, Cons):
            return M.cons(ev(f.body))
        if isinstance(f, And):
            return M.and_(ev(f.left), ev(f.right))
        if isinstance(f, Or):
            return M.or_(ev(f.left), ev(f.right))
        if isinstance(f, Imp):
            return M.imp(ev(f.left), ev(f.right))
        key = _atom_key(f)
        if key not in amap:
            raise UnmappedAtom(key)
        return amap[key]

    return ev(phi)


def lfi1_consequence(premises: Iterable, goal, matrix=None) -> Verdict:
    """Exhaustive check over every map from letters to twist pairs.

    ``matrix`` may be a :class:`TwistMatrix` or a Boolean algebra; default is
    the three-valued matrix.  The countermodel is the first falsifying atom
    map, letters taken in first-occurrence order and values in domain order.
    """
    if isinstance(matrix, FiniteBooleanAlgebra):
        matrix = lfi1_matrix() if matrix == two() else twist_matrix(matrix)
    M = matrix if matrix is not None else lfi1_matrix()
    premises = list(premises)
    letters = atoms_of(premises + [goal])
    for vals in product(M.domain, repeat=len(letters)):
        amap = dict(zip(letters, vals))
        if all(M.is_designated(eval_twist(g, amap, M)) for g in premises) and \
                not M.is_designated(eval_twist(goal, amap, M)):
            return Verdict(False, amap, "atom map")
    return Verdict(True)


def format_tables(M: TwistMatrix) -> str:
    order = sorted(M.domain, key=lambda p: (not p.z1.is_top, p.z2.bits))
    sym = {"and": "&", "or": "|", "imp": "->", "neg": "~", "cons": "*"}
    lines = []
    for op in BINARY_OPS:
        rows = [[sym[op]] + [M.name(y) for y in order]]
        rows += [[M.name(x)] + [M.name(M.apply(op, x, y)) for y in order] for x in order]
        lines += _grid(rows) + [""]
    for op in UNARY_OPS:
        rows = [["", sym[op]]] + [[M.name(x), M.name(M.apply(op, x))] for x in order]
        lines += _grid(rows) + [""]
    return "\n".join(lines).rstrip() + "\n"
