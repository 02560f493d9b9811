"""Terms, formulas and the syntactic operations the calculi need.

All AST nodes are frozen dataclasses, so they hash and compare structurally.
Connectives are exactly ``~`` (paraconsistent negation), ``*`` (consistency),
``&``, ``|`` and ``->``; equivalence, bottom and classical negation are built
from them by :func:`iff`, :func:`derived_bottom` and :func:`derived_strong_neg`.
"""

from __future__ import annotations

from itertools import count
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union


class CaptureError(ValueError):
    """A substitution would bind a variable of the substituted term."""


# -- signatures -------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    constants: frozenset = frozenset()
    functions: Mapping[str, int] = field(default_factory=dict)
    predicates: Mapping[str, int] = field(default_factory=dict)
    has_equality: bool = False

    def __post_init__(self):
        object.__setattr__(self, "constants", frozenset(self.constants))
        object.__setattr__(self, "functions", dict(self.functions))
        object.__setattr__(self, "predicates", dict(self.predicates))
        names = [set(self.constants), set(self.functions), set(self.predicates)]
        for i in range(3):
            for j in range(i + 1, 3):
                clash = names[i] & names[j]
                if clash:
                    raise ValueError(f"symbol(s) declared twice: {sorted(clash)}")
        if not self.predicates and not self.has_equality:
            raise ValueError("a signature needs at least one predicate symbol")
        for name, n in list(self.functions.items()) + list(self.predicates.items()):
            if n < 0:
                raise ValueError(f"negative arity for {name}")
        for name, n in self.functions.items():
            if n < 1:
                raise ValueError(f"function {name} must have arity >= 1")
        for c in self.constants:
            if c.startswith("@"):
                raise ValueError(f"{c!r} uses the reserved domain-constant namespace")

    def __hash__(self):
        return hash((self.constants, tuple(sorted(self.functions.items())),
                     tuple(sorted(self.predicates.items())), self.has_equality))


# -- terms -------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Dom:
    """Diagram-language constant naming domain element ``index``; prints ``@index``."""

    index: int

    def __str__(self):
        return f"@{self.index}"


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple

    def __str__(self):
        return f"{self.fn}({','.join(map(str, self.args))})"


Term = Union[Var, Const, Dom, App]


# -- formulas ------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class Cons:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Atom, Eq, Neg, Cons, And, Or, Imp, Forall, Exists]
UNARY = (Neg, Cons)
BINARY = (And, Or, Imp)
QUANTIFIERS = (Forall, Exists)

for _cls in (Atom, Eq, Neg, Cons, And, Or, Imp, Forall, Exists):
    _cls.__str__ = lambda self: format_formula(self)


def is_atomic(phi) -> bool:
    return isinstance(phi, (Atom, Eq))


def children(phi) -> tuple:
    if isinstance(phi, UNARY):
        return (phi.body,)
    if isinstance(phi, BINARY):
        return (phi.left, phi.right)
    if isinstance(phi, QUANTIFIERS):
        return (phi.body,)
    return ()


def subformulas(phi) -> Iterator:
    """Pre-order walk over every subformula occurrence (quantifier bodies unopened)."""
    yield phi
    for c in children(phi):
        yield from subformulas(c)


# -- variables -----------------------------------------------------------------

def term_vars(t) -> list[str]:
    """Variables of ``t`` in first-occurrence order."""
    out: list[str] = []
    _term_vars(t, out)
    return out


def _term_vars(t, out):
    if isinstance(t, Var):
        if t.name not in out:
            out.append(t.name)
    elif isinstance(t, App):
        for a in t.args:
            _term_vars(a, out)


def _atom_terms(phi) -> tuple:
    if isinstance(phi, Atom):
        return phi.args
    return (phi.left, phi.right)


def free_vars_ordered(phi) -> list[str]:
    out: list[str] = []
    _free(phi, frozenset(), out)
    return out


def _free(phi, bound, out):
    if is_atomic(phi):
        for t in _atom_terms(phi):
            for v in term_vars(t):
                if v not in bound and v not in out:
                    out.append(v)
    elif isinstance(phi, QUANTIFIERS):
        _free(phi.body, bound | {phi.var}, out)
    else:
        for c in children(phi):
            _free(c, bound, out)


def free_vars(phi) -> frozenset:
    return frozenset(free_vars_ordered(phi))


def is_sentence(phi) -> bool:
    return not free_vars_ordered(phi)


def is_closed_term(t) -> bool:
    return not term_vars(t)


# -- substitution ----------------------------------------------------------------

def subst_term(t, x: str, s):
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, App):
        return App(t.fn, tuple(subst_term(a, x, s) for a in t.args))
    return t


def is_free_for(t, x: str, phi) -> bool:
    """True iff no variable of ``t`` gets captured at a free occurrence of ``x``."""
    return _free_for(set(term_vars(t)), x, phi)


def _free_for(tvars, x, phi) -> bool:
    if is_atomic(phi):
        return True
    if isinstance(phi, QUANTIFIERS):
        if phi.var == x:
            return True
        if phi.var in tvars and x in free_vars(phi.body):
            return False
        return _free_for(tvars, x, phi.body)
    return all(_free_for(tvars, x, c) for c in children(phi))


def substitute(phi, x: str, t):
    """``phi[x/t]``: replace every free occurrence of ``x`` by ``t``."""
    if not is_free_for(t, x, phi):
        raise CaptureError(f"{t} is not free for {x} in {phi}")
    return _subst(phi, x, t)


def _subst(phi, x, t):
    if isinstance(phi, Atom):
        return Atom(phi.pred, tuple(subst_term(a, x, t) for a in phi.args))
    if isinstance(phi, Eq):
        return Eq(subst_term(phi.left, x, t), subst_term(phi.right, x, t))
    if isinstance(phi, QUANTIFIERS):
        if phi.var == x:
            return phi
        return type(phi)(phi.var, _subst(phi.body, x, t))
    if isinstance(phi, UNARY):
        return type(phi)(_subst(phi.body, x, t))
    return type(phi)(_subst(phi.left, x, t), _subst(phi.right, x, t))


# -- variants --------------------------------------------------------------------

def _drop_void(phi):
    if is_atomic(phi):
        return phi
    if isinstance(phi, QUANTIFIERS):
        body = _drop_void(phi.body)
        if phi.var not in free_vars(body):
            return body
        return type(phi)(phi.var, body)
    if isinstance(phi, UNARY):
        return type(phi)(_drop_void(phi.body))
    return type(phi)(_drop_void(phi.left), _drop_void(phi.right))


def _rename_term(t, env):
    if isinstance(t, Var):
        return Var(env.get(t.name, t.name))
    if isinstance(t, App):
        return App(t.fn, tuple(_rename_term(a, env) for a in t.args))
    return t


def _rename_bound(phi, env, depth, namer=lambda d: f"%{d}"):
    # '%' cannot appear in parsed identifiers, so canonical names never clash
    if isinstance(phi, Atom):
        return Atom(phi.pred, tuple(_rename_term(a, env) for a in phi.args))
    if isinstance(phi, Eq):
        return Eq(_rename_term(phi.left, env), _rename_term(phi.right, env))
    if isinstance(phi, QUANTIFIERS):
        name = namer(depth)
        return type(phi)(name, _rename_bound(phi.body, {**env, phi.var: name}, depth + 1, namer))
    if isinstance(phi, UNARY):
        return type(phi)(_rename_bound(phi.body, env, depth, namer))
    return type(phi)(_rename_bound(phi.left, env, depth, namer),
                     _rename_bound(phi.right, env, depth, namer))


def readable_bound_names(phi):
    """Rename bound variables by depth to x, y, z, w, u, v, x1, ... skipping free names.

    Meant for display of normal forms; the result is a variant of ``phi``.
    """
    free = set(free_vars(phi))
    pool = (f"{c}{i or ''}" for i in count() for c in "xyzwuv")
    names = []

    def namer(d):
        while len(names) <= d:
            names.append(next(n for n in pool if n not in free))
        return names[d]

    return _rename_bound(phi, {}, 0, namer)


def variant_normal_form(phi):
    """Delete void quantifiers, then name bound variables by binding depth."""
    return _rename_bound(_drop_void(phi), {}, 0)


def is_variant(phi, psi) -> bool:
    return variant_normal_form(phi) == variant_normal_form(psi)


def universal_closure(phi):
    """Prefix ``forall`` over the free variables, first occurrence outermost."""
    for v in reversed(free_vars_ordered(phi)):
        phi = Forall(v, phi)
    return phi


# -- derived connectives ---------------------------------------------------------

def derived_bottom(beta):
    return And(beta, And(Neg(beta), Cons(beta)))


def derived_strong_neg(alpha, beta):
    """Classical negation of ``alpha`` relative to the bottom built from ``beta``."""
    return Imp(alpha, derived_bottom(beta))


def iff(alpha, beta):
    return And(Imp(alpha, beta), Imp(beta, alpha))


# -- partial replacement for the equality axiom -----------------------------------

def partial_replace_ok(psi, psi2, x: str, y: str) -> bool:
    """Is ``psi2`` the result of replacing some free ``x`` in ``psi`` by ``y``?"""
    return _pr(psi, psi2, x, y, frozenset())


def _pr_term(t, t2, x, y, bound) -> bool:
    if isinstance(t, Var) and t.name == x and x not in bound:
        return t2 == t or t2 == Var(y)
    if isinstance(t, App):
        return (isinstance(t2, App) and t.fn == t2.fn and len(t.args) == len(t2.args)
                and all(_pr_term(a, b, x, y, bound) for a, b in zip(t.args, t2.args)))
    return t == t2


def _pr(phi, phi2, x, y, bound) -> bool:
    if type(phi) is not type(phi2):
        return False
    if isinstance(phi, Atom):
        return (phi.pred == phi2.pred and len(phi.args) == len(phi2.args)
                and all(_pr_term(a, b, x, y, bound) for a, b in zip(phi.args, phi2.args)))
    if isinstance(phi, Eq):
        return _pr_term(phi.left, phi2.left, x, y, bound) and _pr_term(phi.right, phi2.right, x, y, bound)
    if isinstance(phi, QUANTIFIERS):
        return phi.var == phi2.var and _pr(phi.body, phi2.body, x, y, bound | {phi.var})
    return all(_pr(a, b, x, y, bound) for a, b in zip(children(phi), children(phi2)))


# -- printing --------------------------------------------------------------------

_PREC = {Imp: 1, Or: 2, And: 3}
_SYM = {Imp: "->", Or: "|", And: "&"}


def format_term(t) -> str:
    return str(t)


def format_formula(phi) -> str:
    """Render ``phi`` in the ASCII grammar with as few parentheses as parse back."""
    return _fmt(phi, 0, True)


def _fmt(phi, ctx, rightmost) -> str:
    if isinstance(phi, Atom):
        if not phi.args:
            return phi.pred
        return f"{phi.pred}({','.join(map(str, phi.args))})"
    if isinstance(phi, Eq):
        return f"{phi.left} = {phi.right}"
    if isinstance(phi, Neg):
        return "~" + _fmt(phi.body, 4, rightmost)
    if isinstance(phi, Cons):
        return "*" + _fmt(phi.body, 4, rightmost)
    if isinstance(phi, QUANTIFIERS):
        kw = "forall" if isinstance(phi, Forall) else "exists"
        text = f"{kw} {phi.var}. {_fmt(phi.body, 0, True)}"
        return text if rightmost else f"({text})"
    p = _PREC[type(phi)]
    wrap = p < ctx
    inner_right = True if wrap else rightmost
    if isinstance(phi, Imp):
        left = _fmt(phi.left, p + 1, False)
        right = _fmt(phi.right, p, inner_right)
    else:
        left = _fmt(phi.left, p, False)
        right = _fmt(phi.right, p + 1, inner_right)
    text = f"{left} {_SYM[type(phi)]} {right}"
    return f"({text})" if wrap else text
