"""Snapshots, swap structures and their non-deterministic matrices.

A snapshot ``(z1, z2, z3)`` records a value for a formula, for its negation
and for its consistency.  The full swap structure over an algebra takes every
triple with ``z1 | z2 = 1`` and ``z1 & z2 & z3 = 0`` and lets each connective
return *all* snapshots whose first coordinate is the Boolean result.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping

from .boolalg import BAElement, FiniteBooleanAlgebra, two

BINARY_OPS = ("and", "or", "imp")
UNARY_OPS = ("neg", "cons")
OPS = BINARY_OPS + UNARY_OPS
M5_NAMES = ("T", "t", "t0", "F", "f0")
TABLE_MEMO_LIMIT = 125


class SwapStructureError(ValueError):
    pass


class EmptyOutput(SwapStructureError):
    pass


class FirstProjectionViolation(SwapStructureError):
    pass


class DomainEscape(SwapStructureError):
    pass


@dataclass(frozen=True)
class Snapshot:
    z1: BAElement
    z2: BAElement
    z3: BAElement

    @property
    def algebra(self) -> FiniteBooleanAlgebra:
        return self.z1.algebra

    def is_legal(self) -> bool:
        return (self.z1 | self.z2).is_top and (self.z1 & self.z2 & self.z3).is_bottom

    @property
    def key(self) -> tuple:
        return (self.z1.bits, self.z2.bits, self.z3.bits)

    def to_json(self) -> list:
        return [self.z1.to_json(), self.z2.to_json(), self.z3.to_json()]

    @classmethod
    def from_json(cls, data, algebra: FiniteBooleanAlgebra) -> Snapshot:
        if len(data) != 3:
            raise ValueError(f"a snapshot needs 3 coordinates, got {len(data)}")
        return cls(*(algebra.element(z) for z in data))

    def __repr__(self):
        return f"({self.z1!r},{self.z2!r},{self.z3!r})"


def boolean_op(op: str, x: BAElement, y: BAElement) -> BAElement:
    if op == "and":
        return x & y
    if op == "or":
        return x | y
    if op == "imp":
        return x.imp(y)
    raise ValueError(f"unknown binary connective {op!r}")


@lru_cache(maxsize=None)
def swap_domain(algebra: FiniteBooleanAlgebra) -> tuple[Snapshot, ...]:
    """All legal snapshots over ``algebra``, in lexicographic encoding order."""
    out = []
    els = list(algebra)
    for z1, z2, z3 in product(els, repeat=3):
        s = Snapshot(z1, z2, z3)
        if s.is_legal():
            out.append(s)
    return tuple(out)


class SwapNmatrix:
    """A swap structure together with its designated set ``{x : x1 = 1}``.

    Outputs are computed from the defining first-coordinate condition over
    the structure's domain; ``overrides`` narrows individual entries (used by
    :func:`sub_swap`).  Output sets are tuples in the domain's order.
    """

    def __init__(self, algebra: FiniteBooleanAlgebra, domain=None, overrides: Mapping | None = None,
                 names: Mapping[Snapshot, str] | None = None, full: bool = True):
        self.algebra = algebra
        self.domain = tuple(sorted(domain if domain is not None else swap_domain(algebra),
                                   key=lambda s: s.key))
        self.index = {s: i for i, s in enumerate(self.domain)}
        self.overrides = dict(overrides or {})
        self.names = dict(names or {})
        self.full = full and not self.overrides and domain is None
        self.designated = tuple(s for s in self.domain if s.z1.is_top)
        self._by_first: dict[int, tuple] = {}
        for s in self.domain:
            self._by_first.setdefault(s.z1.bits, [])
            self._by_first[s.z1.bits].append(s)
        self._by_first = {k: tuple(v) for k, v in self._by_first.items()}
        self._masks: dict[str, list] = {}

    def __repr__(self):
        return f"SwapNmatrix(atoms={self.algebra.atom_count}, |B|={len(self.domain)})"

    def is_designated(self, x: Snapshot) -> bool:
        return x.z1.is_top

    def name(self, x: Snapshot) -> str:
        return self.names.get(x, repr(x))

    def with_first(self, z1: BAElement) -> tuple:
        return self._by_first.get(z1.bits, ())

    def apply(self, op: str, *args: Snapshot) -> tuple:
        """The (set-valued) result of connective ``op`` on ``args``."""
        key = (op,) + args
        if key in self.overrides:
            return self.overrides[key]
        if op in BINARY_OPS:
            x, y = args
            return self.with_first(boolean_op(op, x.z1, y.z1))
        if op == "neg":
            return self.with_first(args[0].z2)
        if op == "cons":
            return self.with_first(args[0].z3)
        raise ValueError(f"unknown connective {op!r}")

    def and_(self, x, y):
        return self.apply("and", x, y)

    def or_(self, x, y):
        return self.apply("or", x, y)

    def imp(self, x, y):
        return self.apply("imp", x, y)

    def neg(self, x):
        return self.apply("neg", x)

    def cons(self, x):
        return self.apply("cons", x)

    def mask_table(self, op: str) -> list:
        """Outputs of ``op`` as bitmasks over domain indices, indexed by argument indices.

        Tables are memoized when the domain has at most ``TABLE_MEMO_LIMIT`` elements.
        """
        if op in self._masks:
            return self._masks[op]
        def mask(outs):
            m = 0
            for z in outs:
                m |= 1 << self.index[z]
            return m
        if op in BINARY_OPS:
            table = [[mask(self.apply(op, x, y)) for y in self.domain] for x in self.domain]
        else:
            table = [mask(self.apply(op, x)) for x in self.domain]
        if len(self.domain) <= TABLE_MEMO_LIMIT:
            self._masks[op] = table
        return table

    def designated_mask(self) -> int:
        m = 0
        for i, s in enumerate(self.domain):
            if s.z1.is_top:
                m |= 1 << i
        return m

    def validate(self):
        """Check the swap-structure laws; raise the matching error on the first breach."""
        legal = set(swap_domain(self.algebra))
        for s in self.domain:
            if s.algebra != self.algebra or s not in legal:
                raise DomainEscape(f"{s!r} is not a legal snapshot over {self.algebra}")
        if not self.designated:
            raise SwapStructureError("no designated snapshot")
        dom = set(self.domain)
        for op in OPS:
            arity = 2 if op in BINARY_OPS else 1
            for args in product(self.domain, repeat=arity):
                outs = self.apply(op, *args)
                if not outs:
                    raise EmptyOutput(f"{op}{args!r} has no output")
                if op in BINARY_OPS:
                    want = boolean_op(op, args[0].z1, args[1].z1)
                else:
                    want = args[0].z2 if op == "neg" else args[0].z3
                for z in outs:
                    if z not in dom:
                        raise DomainEscape(f"{op}{args!r} yields {z!r} outside the domain")
                    if z.z1 != want:
                        raise FirstProjectionViolation(f"{op}{args!r} yields {z!r}, first "
                                                       f"coordinate should be {want!r}")
        return self


@lru_cache(maxsize=None)
def full_swap(algebra: FiniteBooleanAlgebra) -> SwapNmatrix:
    return SwapNmatrix(algebra)


def m5_values() -> dict[str, Snapshot]:
    A = two()
    z, o = A.bottom, A.top
    return {"T": Snapshot(o, z, o), "t": Snapshot(o, o, z), "t0": Snapshot(o, z, z),
            "F": Snapshot(z, o, o), "f0": Snapshot(z, o, z)}


@lru_cache(maxsize=None)
def m5() -> SwapNmatrix:
    """The five-valued matrix: full swap structure over the two-element algebra."""
    vals = m5_values()
    return SwapNmatrix(two(), names={s: n for n, s in vals.items()})


def sub_swap(full: SwapNmatrix, domain=None, outputs: Mapping | None = None) -> SwapNmatrix:
    """Restrict ``full`` to a sub-domain and/or narrowed outputs, then validate.

    ``outputs`` maps ``(op, x)`` or ``(op, x, y)`` to the replacement output
    collection.  Entries not overridden keep the defining condition, read
    inside the new domain.
    """
    overrides = {}
    for key, outs in (outputs or {}).items():
        overrides[tuple(key)] = tuple(sorted(set(outs), key=lambda s: s.key))
    dom = tuple(domain) if domain is not None else full.domain
    m = SwapNmatrix(full.algebra, domain=dom, overrides=overrides, names=full.names, full=False)
    return m.validate()


def condensed(m: SwapNmatrix, outs) -> str:
    """Write an output set as ``D`` / ``ND`` when it is one of those, else by names."""
    outs = set(outs)
    if outs == set(m.designated):
        return "D"
    if outs == set(m.domain) - set(m.designated):
        return "ND"
    return "{" + ",".join(m.name(s) for s in m.domain if s in outs) + "}"


def display_order(m: SwapNmatrix) -> list:
    """Designated values first, keeping names in the conventional T, t, t0, F, f0 order."""
    if m.names and set(m.names.values()) == set(M5_NAMES):
        inv = {n: s for s, n in m.names.items()}
        return [inv[n] for n in M5_NAMES]
    return sorted(m.domain, key=lambda s: (not s.z1.is_top, s.key))


def format_tables(m: SwapNmatrix, condensed_form: bool = True) -> str:
    order = display_order(m)
    lines = []
    sym = {"and": "&", "or": "|", "imp": "->", "neg": "~", "cons": "*"}
    cell = (lambda outs: condensed(m, outs)) if condensed_form else \
        (lambda outs: "{" + ",".join(m.name(s) for s in order if s in set(outs)) + "}")
    for op in BINARY_OPS:
        rows = [[sym[op]] + [m.name(y) for y in order]]
        for x in order:
            rows.append([m.name(x)] + [cell(m.apply(op, x, y)) for y in order])
        lines.extend(_grid(rows))
        lines.append("")
    for op in UNARY_OPS:
        rows = [["", sym[op]]] + [[m.name(x), cell(m.apply(op, x))] for x in order]
        lines.extend(_grid(rows))
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def _grid(rows):
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return [" | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
