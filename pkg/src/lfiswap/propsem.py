"""Propositional valuations over swap Nmatrices, and mbC bivaluations.

Consequence is decided on the subformula closure of the premises and goal:
a legal assignment of snapshots to a subformula-closed set extends to a
valuation of every formula (each missing formula just picks any output of its
multioperation), so countermodels found on the closure are genuine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .search import ValuationSearch, Verdict
from .swap import Snapshot, SwapNmatrix, m5
from .syntax import And, Atom, Cons, Imp, Neg, Or, children, format_formula

_OPNAME = {And: "and", Or: "or", Imp: "imp", Neg: "neg", Cons: "cons"}


class NotPropositional(ValueError):
    pass


class IllegalBivaluation(ValueError):
    pass


def _check_prop(phi):
    if isinstance(phi, Atom):
        if phi.args:
            raise NotPropositional(f"{format_formula(phi)} has arguments; use a 0-ary atom")
        return
    if type(phi) not in _OPNAME:
        raise NotPropositional(f"{format_formula(phi)} is not propositional")
    for c in children(phi):
        _check_prop(c)


def closure(formulas: Iterable) -> list:
    """Subformulas of ``formulas``, children before parents, each listed once.

    Order is the post-order of a left-to-right walk over the inputs in turn.
    """
    seen: dict = {}

    def walk(phi):
        if phi in seen:
            return
        for c in children(phi):
            walk(c)
        seen[phi] = None

    for phi in formulas:
        _check_prop(phi)
        walk(phi)
    return list(seen)


@dataclass
class PropValuation:
    """Snapshot assignment to a finite set of formulas."""

    matrix: SwapNmatrix
    values: dict = field(default_factory=dict)

    def __getitem__(self, phi) -> Snapshot:
        return self.values[phi]

    def __contains__(self, phi):
        return phi in self.values

    def __iter__(self):
        return iter(self.values)

    def designated(self, phi) -> bool:
        return self.values[phi].z1.is_top

    def violations(self) -> list[str]:
        """Formulas whose value is not an allowed output for their components' values."""
        bad = []
        dom = set(self.matrix.domain)
        for phi, z in self.values.items():
            if z not in dom:
                bad.append(f"{format_formula(phi)}: {z!r} is outside the matrix")
                continue
            op = _OPNAME.get(type(phi))
            if op is None:
                continue
            kids = children(phi)
            if not all(k in self.values for k in kids):
                continue
            if z not in self.matrix.apply(op, *(self.values[k] for k in kids)):
                bad.append(f"{format_formula(phi)}: {z!r} is not an output of {op}")
        return bad

    def is_legal(self) -> bool:
        return not self.violations()

    def to_json(self) -> dict:
        return {format_formula(phi): (self.matrix.names.get(z) or z.to_json())
                for phi, z in self.values.items()}

    def format(self) -> str:
        width = max((len(format_formula(p)) for p in self.values), default=0)
        return "\n".join(f"{format_formula(p).ljust(width)}  ->  {self.matrix.name(z)}"
                         for p, z in self.values.items())


def _search_for(nodes, matrix, premises, goal):
    index = {phi: i for i, phi in enumerate(nodes)}
    full = (1 << len(matrix.domain)) - 1
    des = matrix.designated_mask()
    doms = [full] * len(nodes)
    for g in premises:
        doms[index[g]] &= des
    if goal is not None:
        doms[index[goal]] &= ~des & full
    cons = []
    for phi, i in index.items():
        op = _OPNAME.get(type(phi))
        if op is not None:
            cons.append(("op", op, i, tuple(index[c] for c in children(phi))))
    return ValuationSearch(matrix, doms, cons)


def prop_consequence(premises: Iterable, goal, matrix=None) -> Verdict:
    """Does ``goal`` follow from ``premises`` in ``matrix`` (default M5)?

    A twist matrix is accepted too and handed to :func:`lfiswap.twist.lfi1_consequence`.
    """
    premises = list(premises)
    matrix = matrix if matrix is not None else m5()
    if not isinstance(matrix, SwapNmatrix):
        from .twist import lfi1_consequence
        return lfi1_consequence(premises, goal, matrix)
    nodes = closure(premises + [goal])
    sol = _search_for(nodes, matrix, premises, goal).first_solution()
    if sol is None:
        return Verdict(True)
    v = PropValuation(matrix, {phi: matrix.domain[k] for phi, k in zip(nodes, sol)})
    return Verdict(False, v, "valuation on the subformula closure")


def is_valid(phi, matrix=None) -> bool:
    return prop_consequence([], phi, matrix).holds


def legal_valuations(formulas: Iterable, matrix=None):
    """Every legal valuation of the closure of ``formulas``, in the canonical order."""
    matrix = matrix if matrix is not None else m5()
    nodes = closure(formulas)
    for sol in _search_for(nodes, matrix, [], None).solutions():
        yield PropValuation(matrix, {phi: matrix.domain[k] for phi, k in zip(nodes, sol)})


# -- bivaluations ----------------------------------------------------------------

def bivaluation_failures(rho: Mapping) -> list[str]:
    """Clauses broken by ``rho``; each clause is checked where all its formulas are present."""
    out = []
    val = {phi: int(b) for phi, b in rho.items()}
    for phi, b in val.items():
        if b not in (0, 1):
            out.append(f"{format_formula(phi)} has non-Boolean value {b}")
            continue
        if isinstance(phi, (And, Or, Imp)):
            if phi.left in val and phi.right in val:
                x, y = val[phi.left], val[phi.right]
                want = {And: x & y, Or: x | y, Imp: (1 - x) | y}[type(phi)]
                if b != want:
                    out.append(f"{type(phi).__name__.lower()}: {format_formula(phi)}")
        elif isinstance(phi, Neg):
            if b == 0 and val.get(phi.body) == 0:
                out.append(f"neg: {format_formula(phi)} and its body are both 0")
        elif isinstance(phi, Cons):
            a, n = phi.body, Neg(phi.body)
            if b == 1 and val.get(a) == 1 and val.get(n) == 1:
                out.append(f"cons: {format_formula(phi)} is 1 yet {format_formula(a)} "
                           f"and its negation are both 1")
    return out


def check_bivaluation(rho: Mapping) -> bool:
    return not bivaluation_failures(rho)


def bival_to_valuation(rho: Mapping) -> PropValuation:
    """Send ``alpha`` to ``(rho(alpha), rho(~alpha), rho(*alpha))`` over M5.

    When ``~alpha`` or ``*alpha`` is outside the domain of ``rho`` the missing
    bit is filled with a value some clause-respecting extension would take:
    ``~alpha`` gets ``1 - rho(alpha)`` and ``*alpha`` gets 1 unless both
    ``alpha`` and ``~alpha`` are 1.
    """
    bad = bivaluation_failures(rho)
    if bad:
        raise IllegalBivaluation("; ".join(bad))
    M = m5()
    A = M.algebra
    el = {0: A.bottom, 1: A.top}
    vals = {}
    for phi, b in rho.items():
        b = int(b)
        n = int(rho[Neg(phi)]) if Neg(phi) in rho else 1 - b
        c = int(rho[Cons(phi)]) if Cons(phi) in rho else int(not (b and n))
        z = Snapshot(el[b], el[n], el[c])
        if not z.is_legal():
            raise IllegalBivaluation(f"{format_formula(phi)} maps to illegal {z!r}")
        vals[phi] = z
    v = PropValuation(M, vals)
    bad = v.violations()
    if bad:
        raise IllegalBivaluation("; ".join(bad))
    return v


def bival_domain(formulas: Iterable) -> list:
    """The closure extended with ``~alpha`` for every ``*alpha`` it contains."""
    base = closure(formulas)
    extra = [Neg(phi.body) for phi in base if isinstance(phi, Cons)]
    return closure(base + extra)


def bival_consequence(premises: Iterable, goal) -> Verdict:
    """Consequence over mbC bivaluations, by exhaustive 0/1 search.

    Only atoms, negations and consistency formulas are free choices; binary
    formulas are computed.  Any clause-respecting assignment to this finite
    domain extends to a bivaluation of every formula, so the search is exact.
    """
    premises = list(premises)
    nodes = bival_domain(premises + [goal])
    pos = {phi: i for i, phi in enumerate(nodes)}
    want = {}
    for g in premises:
        want[g] = 1
    if goal in want:
        return Verdict(True)
    want[goal] = 0
    # cons checks fire once all of *a, a and ~a are assigned
    cons_at: dict[int, list] = {}
    for phi in nodes:
        if isinstance(phi, Cons):
            trio = (pos[phi], pos[phi.body], pos[Neg(phi.body)])
            cons_at.setdefault(max(trio), []).append(trio)
    rho = [0] * len(nodes)

    def options(i, phi):
        if isinstance(phi, (And, Or, Imp)):
            x, y = rho[pos[phi.left]], rho[pos[phi.right]]
            return ({And: x & y, Or: x | y, Imp: (1 - x) | y}[type(phi)],)
        if isinstance(phi, Neg) and rho[pos[phi.body]] == 0:
            return (1,)
        return (0, 1)

    def dfs(i):
        if i == len(nodes):
            return True
        phi = nodes[i]
        for b in options(i, phi):
            if phi in want and want[phi] != b:
                continue
            rho[i] = b
            if any(rho[c] and rho[a] and rho[n] for c, a, n in cons_at.get(i, ())):
                continue
            if dfs(i + 1):
                return True
        return False

    if dfs(0):
        return Verdict(False, dict(zip(nodes, rho)), "bivaluation")
    return Verdict(True)

