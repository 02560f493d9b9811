"""First-order structures over swap Nmatrices and twist matrices.

Domain elements are indices ``0..|U|-1``; in formulas they are named by the
diagram constants ``@k``.  Before anything is valued, sentences are
*canonicalized*: every closed term is replaced by the constant of its
denotation.  Two sentences that speak about the same elements through
different terms therefore become literally the same sentence and must get the
same value.

Twist structures are deterministic, so a sentence has exactly one value.
Swap structures are not: QmbC consequence searches the legal valuations of a
finite *ground closure* (subformulas plus every quantifier instance) with
atoms fixed by the structure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping

from .boolalg import FiniteBooleanAlgebra, powerset_algebra
from .search import ValuationSearch, Verdict
from .swap import Snapshot, SwapNmatrix, full_swap, m5
from .syntax import (And, App, Atom, Cons, Const, Dom, Eq, Exists, Forall, Imp, Neg, Or,
                     QUANTIFIERS, Signature, Var, children, format_formula, free_vars_ordered,
                     readable_bound_names, substitute, universal_closure, variant_normal_form)
from .twist import TwistMatrix, TwistPair, lfi1_matrix, lfi1_value, twist_matrix

CLOSURE_CAP = 20_000
_OPNAME = {And: "and", Or: "or", Imp: "imp", Neg: "neg", Cons: "cons"}


class ModelError(ValueError):
    pass


class NonStandardEquality(ModelError):
    pass


class UnmappedVariable(KeyError):
    pass


class ClosureCapExceeded(RuntimeError):
    pass


@dataclass
class FOStructure:
    """A finite structure.  Predicate tables map argument index tuples to values.

    ``equality`` maps index pairs to values when the signature has equality;
    with ``standard_equality`` set, construction fails unless exactly the
    diagonal pairs are designated.
    """

    matrix: SwapNmatrix | TwistMatrix
    domain: tuple
    constants: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    predicates: dict = field(default_factory=dict)
    equality: dict | None = None
    standard_equality: bool = True

    def __post_init__(self):
        self.domain = tuple(self.domain)
        n = len(self.domain)
        if n == 0:
            raise ModelError("the domain must be nonempty")
        if len(set(self.domain)) != n:
            raise ModelError("domain names must be distinct")
        legal = set(self.matrix.domain)
        for c, a in self.constants.items():
            if not (isinstance(a, int) and 0 <= a < n):
                raise ModelError(f"constant {c} denotes {a!r}, not a domain index")
        self.arities = {}
        for f, table in self.functions.items():
            k = self._arity(f, table, n)
            if k == 0:
                raise ModelError(f"function {f} needs arity >= 1")
            for args, out in table.items():
                if not (isinstance(out, int) and 0 <= out < n):
                    raise ModelError(f"{f}{args} = {out!r} is not a domain index")
            self.arities[f] = k
        for p, table in self.predicates.items():
            self.arities[p] = self._arity(p, table, n)
            for args, val in table.items():
                if val not in legal:
                    raise ModelError(f"{p}{args} = {val!r} is not a value of the matrix")
        if self.equality is not None:
            if self._arity("=", self.equality, n) != 2:
                raise ModelError("the equality table must be binary")
            for args, val in self.equality.items():
                if val not in legal:
                    raise ModelError(f"equality at {args} = {val!r} is not a value of the matrix")
            if self.standard_equality and not check_standard_equality(self):
                raise NonStandardEquality("equality must be designated exactly on the diagonal")

    @staticmethod
    def _arity(name, table, n):
        keys = list(table)
        if not keys:
            raise ModelError(f"{name} has an empty table")
        k = len(keys[0])
        if any(len(key) != k for key in keys) or set(keys) != set(product(range(n), repeat=k)):
            raise ModelError(f"{name} is not a total table over the domain")
        return k

    @property
    def kind(self) -> str:
        return "twist" if isinstance(self.matrix, TwistMatrix) else "swap"

    @property
    def size(self) -> int:
        return len(self.domain)

    @property
    def signature(self) -> Signature:
        return Signature(constants=frozenset(self.constants),
                         functions={f: self.arities[f] for f in self.functions},
                         predicates={p: self.arities[p] for p in self.predicates},
                         has_equality=self.equality is not None)

    def element(self, name) -> int:
        if isinstance(name, int):
            return name
        try:
            return self.domain.index(name)
        except ValueError:
            raise ModelError(f"{name!r} is not a domain element") from None

    def value_name(self, v) -> str:
        return self.matrix.name(v)


# -- terms and canonical sentences ---------------------------------------------

def eval_term(S: FOStructure, mu: Mapping, t) -> int:
    """Denotation of ``t`` under assignment ``mu`` (variable name -> domain index)."""
    if isinstance(t, Var):
        if t.name not in mu:
            raise UnmappedVariable(t.name)
        return S.element(mu[t.name])
    if isinstance(t, Const):
        if t.name not in S.constants:
            raise ModelError(f"constant {t.name} is not interpreted")
        return S.constants[t.name]
    if isinstance(t, Dom):
        if not 0 <= t.index < S.size:
            raise ModelError(f"@{t.index} is outside the domain")
        return t.index
    if t.fn not in S.functions:
        raise ModelError(f"function {t.fn} is not interpreted")
    return S.functions[t.fn][tuple(eval_term(S, mu, a) for a in t.args)]


def _canon_term(S, t, mu, bound):
    if isinstance(t, Var):
        if t.name in bound:
            return t
        if t.name not in mu:
            raise UnmappedVariable(t.name)
        return Dom(S.element(mu[t.name]))
    if isinstance(t, (Const, Dom)):
        return Dom(eval_term(S, {}, t))
    args = tuple(_canon_term(S, a, mu, bound) for a in t.args)
    if all(isinstance(a, Dom) for a in args):
        return Dom(eval_term(S, {}, App(t.fn, args)))
    return App(t.fn, args)


def canonicalize(S: FOStructure, phi, mu: Mapping | None = None, _bound=frozenset()):
    """Replace free variables by ``@k`` via ``mu`` and collapse every closed term."""
    mu = mu or {}
    if isinstance(phi, Atom):
        return Atom(phi.pred, tuple(_canon_term(S, a, mu, _bound) for a in phi.args))
    if isinstance(phi, Eq):
        return Eq(_canon_term(S, phi.left, mu, _bound), _canon_term(S, phi.right, mu, _bound))
    if isinstance(phi, QUANTIFIERS):
        return type(phi)(phi.var, canonicalize(S, phi.body, mu, _bound | {phi.var}))
    if isinstance(phi, (Neg, Cons)):
        return type(phi)(canonicalize(S, phi.body, mu, _bound))
    return type(phi)(canonicalize(S, phi.left, mu, _bound), canonicalize(S, phi.right, mu, _bound))


def instance(S: FOStructure, phi, a: int):
    """Canonical ``body[x/@a]`` for a quantified ``phi``."""
    return canonicalize(S, substitute(phi.body, phi.var, Dom(a)))


def atom_value(S: FOStructure, phi):
    """Value the structure assigns to a canonical ground atom."""
    if isinstance(phi, Eq):
        if S.equality is None:
            raise ModelError("the structure does not interpret equality")
        return S.equality[(phi.left.index, phi.right.index)]
    if phi.pred not in S.predicates:
        raise ModelError(f"predicate {phi.pred} is not interpreted")
    if S.arities[phi.pred] != len(phi.args):
        raise ModelError(f"predicate {phi.pred} takes {S.arities[phi.pred]} argument(s)")
    return S.predicates[phi.pred][tuple(a.index for a in phi.args)]


# -- deterministic semantics ----------------------------------------------------

def qlfi1_interpret(S: FOStructure, sigma, mu: Mapping | None = None) -> TwistPair:
    """Twist value of ``sigma`` (canonicalized first, with ``mu`` for free variables)."""
    if S.kind != "twist":
        raise ModelError("interpretation needs a twist structure")
    M = S.matrix
    memo: dict = {}

    def ev(f):
        if f in memo:
            return memo[f]
        if isinstance(f, (Atom, Eq)):
            r = atom_value(S, f)
        elif isinstance(f, QUANTIFIERS):
            inst = [ev(instance(S, f, a)) for a in range(S.size)]
            r = M.forall(inst) if isinstance(f, Forall) else M.exists(inst)
        else:
            r = M.apply(_OPNAME[type(f)], *(ev(c) for c in children(f)))
        memo[f] = r
        return r

    return ev(canonicalize(S, sigma, mu))


def assignments(S: FOStructure, variables: list) -> Iterator[dict]:
    for vals in product(range(S.size), repeat=len(variables)):
        yield dict(zip(variables, vals))


def _free_list(formulas) -> list:
    out: dict = {}
    for phi in formulas:
        for v in free_vars_ordered(phi):
            out.setdefault(v, None)
    return list(out)


def qlfi1_consequence(premises: Iterable, goal, S: FOStructure) -> Verdict:
    """Per-structure consequence: premises designated under every assignment
    force the goal designated under every assignment."""
    premises = list(premises)
    M = S.matrix
    xs = _free_list(premises + [goal])
    for mu in assignments(S, xs):
        for g in premises:
            if not M.is_designated(qlfi1_interpret(S, g, mu)):
                return Verdict(True, note=f"premise {format_formula(g)} is not designated "
                                          f"under {_show_mu(S, mu)}")
    for mu in assignments(S, xs):
        val = qlfi1_interpret(S, goal, mu)
        if not M.is_designated(val):
            named = {x: S.domain[i] for x, i in mu.items()}
            return Verdict(False, {"assignment": named, "value": val}, "assignment")
    return Verdict(True)


def _show_mu(S, mu):
    return "{" + ", ".join(f"{x}={S.domain[i]}" for x, i in mu.items()) + "}"


# -- ground closure and QmbC valuations -----------------------------------------

def _ground_key(S, phi):
    return variant_normal_form(canonicalize(S, phi))


def ground_closure(S: FOStructure, sentences: Iterable, cap: int = CLOSURE_CAP) -> list:
    """Canonical sentences closed under subformulas and quantifier instances.

    Members are variant normal forms, so variants collapse to one entry.
    Children come before parents.
    """
    seen: dict = {}
    stack = []

    def kids(f):
        if isinstance(f, QUANTIFIERS):
            return [_ground_key(S, instance(S, f, a)) for a in range(S.size)]
        return [variant_normal_form(c) for c in children(f)]

    for sigma in sentences:
        if free_vars_ordered(sigma):
            raise ValueError(f"{format_formula(sigma)} is not a sentence")
        root = _ground_key(S, sigma)
        stack.append((root, False))
        while stack:
            f, expanded = stack.pop()
            if f in seen:
                continue
            if expanded:
                seen[f] = None
                if len(seen) > cap:
                    raise ClosureCapExceeded(f"ground closure exceeds {cap} sentences")
                continue
            stack.append((f, True))
            for c in reversed(kids(f)):
                if c not in seen:
                    stack.append((c, False))
    return list(seen)


@dataclass
class FOValuation:
    """Snapshots for the members of a ground closure."""

    structure: FOStructure
    values: dict

    def __getitem__(self, sigma) -> Snapshot:
        return self.values[_ground_key(self.structure, sigma)]

    def designated(self, sigma) -> bool:
        return self[sigma].z1.is_top

    def violations(self) -> list[str]:
        """Re-check atoms, connective outputs and quantifier first coordinates."""
        S, M, bad = self.structure, self.structure.matrix, []
        A = M.algebra
        for f, z in self.values.items():
            if isinstance(f, (Atom, Eq)):
                if z != atom_value(S, f):
                    bad.append(f"{format_formula(f)} differs from the structure")
            elif isinstance(f, QUANTIFIERS):
                inst = [self.values[_ground_key(S, instance(S, f, a))].z1 for a in range(S.size)]
                want = A.big_meet(inst) if isinstance(f, Forall) else A.big_join(inst)
                if z.z1 != want:
                    bad.append(f"{format_formula(f)}: first coordinate should be {want!r}")
            else:
                args = [self.values[variant_normal_form(c)] for c in children(f)]
                if z not in M.apply(_OPNAME[type(f)], *args):
                    bad.append(f"{format_formula(f)}: {z!r} is not an allowed output")
        return bad

    def check(self) -> bool:
        return not self.violations()

    def to_json(self) -> dict:
        M = self.structure.matrix
        return {_show(f): (M.names.get(z) or z.to_json()) for f, z in self.values.items()}

    def format(self) -> str:
        M = self.structure.matrix
        rows = [(_show(f), M.name(z)) for f, z in self.values.items()]
        w = max((len(f) for f, _ in rows), default=0)
        return "\n".join(f"{f.ljust(w)}  ->  {z}" for f, z in rows)


def _show(f) -> str:
    return format_formula(readable_bound_names(f))


def _eq_triples(S, nodes):
    """Ground instances of the equality clause that live inside ``nodes``.

    Yields ``(a, b, i, j)``: node ``j`` is node ``i`` with some occurrences of
    ``@a`` replaced by ``@b``.  Occurrences hidden inside collapsed function
    terms are not visible, so with function symbols this under-approximates.
    """
    groups: dict = {}
    for i, f in enumerate(nodes):
        doms: list = []
        groups.setdefault(_skeleton(f, doms), []).append((i, tuple(doms)))
    out = []
    for members in groups.values():
        for (i, di), (j, dj) in product(members, repeat=2):
            if i == j:
                continue
            diff = {(p, q) for p, q in zip(di, dj) if p != q}
            if len(diff) == 1:
                (a, b), = diff
                out.append((a, b, i, j))
    return out


def _skeleton(f, doms):
    def term(t):
        if isinstance(t, Dom):
            doms.append(t.index)
            return Dom(-1)
        if isinstance(t, App):
            return App(t.fn, tuple(term(a) for a in t.args))
        return t

    if isinstance(f, Atom):
        return Atom(f.pred, tuple(term(a) for a in f.args))
    if isinstance(f, Eq):
        return Eq(term(f.left), term(f.right))
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.var, _skeleton(f.body, doms))
    if isinstance(f, (Neg, Cons)):
        return type(f)(_skeleton(f.body, doms))
    return type(f)(_skeleton(f.left, doms), _skeleton(f.right, doms))


def _eq_ok(S, nodes, triples, sol) -> bool:
    dom = S.matrix.domain
    for a, b, i, j in triples:
        e = S.equality[(a, b)].z1
        if not (e & dom[sol[i]].z1) <= dom[sol[j]].z1:
            return False
    return True


def qmbc_valuations(S: FOStructure, sentences: Iterable, premises=(), goal=None,
                    cap: int = CLOSURE_CAP, eq_filter: bool = True,
                    fixed: Mapping | None = None) -> Iterator[FOValuation]:
    """Legal valuations of the ground closure of ``sentences``, canonical order.

    ``premises`` are forced designated, ``goal`` undesignated and each
    sentence in ``fixed`` to the given snapshot.  With
    equality in the structure and ``eq_filter`` on, valuations breaking a
    ground instance of the equality clause inside the closure are dropped.
    """
    if S.kind != "swap":
        raise ModelError("valuation search needs a swap structure")
    M = S.matrix
    nodes = ground_closure(S, sentences, cap)
    index = {f: i for i, f in enumerate(nodes)}
    full = (1 << len(M.domain)) - 1
    des = M.designated_mask()
    doms = [full] * len(nodes)
    cons = []
    for f, i in index.items():
        if isinstance(f, (Atom, Eq)):
            doms[i] = 1 << M.index[atom_value(S, f)]
        elif isinstance(f, QUANTIFIERS):
            inst = tuple(index[_ground_key(S, instance(S, f, a))] for a in range(S.size))
            cons.append(("quant", "forall" if isinstance(f, Forall) else "exists", i, inst))
        else:
            cons.append(("op", _OPNAME[type(f)], i,
                         tuple(index[variant_normal_form(c)] for c in children(f))))
    for g in premises:
        doms[index[_ground_key(S, g)]] &= des
    if goal is not None:
        doms[index[_ground_key(S, goal)]] &= ~des & full
    for sigma, z in (fixed or {}).items():
        doms[index[_ground_key(S, sigma)]] &= 1 << M.index[z]
    triples = _eq_triples(S, nodes) if (eq_filter and S.equality is not None) else []
    for sol in ValuationSearch(M, doms, cons).solutions():
        if triples and not _eq_ok(S, nodes, triples, sol):
            continue
        yield FOValuation(S, {f: M.domain[k] for f, k in zip(nodes, sol)})


def possible_values(S: FOStructure, sentence, cap: int = CLOSURE_CAP) -> list:
    """Snapshots that some legal valuation gives ``sentence`` (universally closed first)."""
    sigma = universal_closure(sentence)
    return [z for z in S.matrix.domain
            if next(qmbc_valuations(S, [sigma], cap=cap, fixed={sigma: z}), None) is not None]


def qmbc_eq_filter(valuations: Iterable[FOValuation], S: FOStructure) -> Iterator[FOValuation]:
    """Drop valuations that break a ground equality-clause instance inside their closure."""
    for v in valuations:
        if S.equality is None:
            yield v
            continue
        nodes = list(v.values)
        index = [S.matrix.index[v.values[f]] for f in nodes]
        if _eq_ok(S, nodes, _eq_triples(S, nodes), index):
            yield v


def qmbc_consequence(premises: Iterable, goal, S: FOStructure, cap: int = CLOSURE_CAP,
                     eq_filter: bool = True) -> Verdict:
    """Consequence in one swap structure, on universal closures of the inputs.

    A countermodel is a legal valuation of the finite ground closure; whether
    it extends to the whole diagram language is not checked.
    """
    prem = [universal_closure(g) for g in premises]
    gl = universal_closure(goal)
    for v in qmbc_valuations(S, prem + [gl], prem, gl, cap, eq_filter):
        return Verdict(False, v, "closure countermodel")
    return Verdict(True)


def fo_consequence(premises: Iterable, goal, S: FOStructure, **kw) -> Verdict:
    """Dispatch on the structure's semantics."""
    if S.kind == "twist":
        return qlfi1_consequence(premises, goal, S)
    return qmbc_consequence(premises, goal, S, **kw)


# -- equality tables ------------------------------------------------------------

def check_standard_equality(S: FOStructure) -> bool:
    if S.equality is None:
        return False
    return all(S.matrix.is_designated(v) == (a == b) for (a, b), v in S.equality.items())


def default_equality(matrix, size: int, mode: str = "classical") -> dict:
    """A standard equality table over ``size`` elements.

    ``classical`` gives a consistent true value on the diagonal, ``mid`` the
    value true together with its negation.  Off the diagonal it is false.
    """
    A = matrix.algebra
    o, z = A.top, A.bottom
    if isinstance(matrix, TwistMatrix):
        same = TwistPair(o, z) if mode == "classical" else TwistPair(o, o)
        other = TwistPair(z, o)
    else:
        same = Snapshot(o, z, o) if mode == "classical" else Snapshot(o, o, z)
        other = Snapshot(z, o, o)
    if mode not in ("classical", "mid"):
        raise ValueError(f"unknown equality mode {mode!r}")
    return {(a, b): same if a == b else other for a in range(size) for b in range(size)}


# -- JSON models -------------------------------------------------------------------

def _matrix_for(kind, algebra):
    if kind == "twist":
        return lfi1_matrix() if algebra.atom_count == 1 else twist_matrix(algebra)
    if kind == "swap":
        return m5() if algebra.atom_count == 1 else full_swap(algebra)
    raise ModelError(f"unknown semantics {kind!r}")


def _parse_value(M, algebra, data):
    if isinstance(data, str):
        for v, n in M.names.items():
            if n == data:
                return v
        if isinstance(M, TwistMatrix) and algebra.atom_count == 1:
            try:
                return lfi1_value(data)
            except ValueError:
                pass
        raise ModelError(f"unknown value name {data!r}")
    if isinstance(M, TwistMatrix):
        return TwistPair.from_json(data, algebra)
    return Snapshot.from_json(data, algebra)


def _parse_key(S_domain, key: str, where: str) -> tuple:
    if key == "":
        return ()
    out = []
    for part in key.split(","):
        part = part.strip()
        if part not in S_domain:
            raise ModelError(f"{where}: {part!r} is not a domain element")
        out.append(S_domain.index(part))
    return tuple(out)


def model_from_json(data: Mapping) -> FOStructure:
    try:
        algebra = FiniteBooleanAlgebra.from_json(data.get("algebra", {"type": "powerset", "atoms": 1}))
        M = _matrix_for(data.get("semantics", "swap"), algebra)
        domain = list(data["domain"])
        consts = {c: _parse_key(domain, a, f"constant {c}")[0] for c, a in data.get("constants", {}).items()}
        funcs = {}
        for f, table in data.get("functions", {}).items():
            funcs[f] = {_parse_key(domain, k, f"function {f}"): _parse_key(domain, v, f"function {f}")[0]
                        for k, v in table.items()}
        preds = {}
        for p, table in data.get("predicates", {}).items():
            preds[p] = {_parse_key(domain, k, f"predicate {p}"): _parse_value(M, algebra, v)
                        for k, v in table.items()}
        eq = data.get("equality")
        standard = bool(data.get("standard_equality", True))
        if eq is None:
            table = None
        elif eq in ("standard-classical", "standard-mid"):
            table = default_equality(M, len(domain), eq.split("-")[1])
        elif isinstance(eq, Mapping):
            table = {_parse_key(domain, k, "equality"): _parse_value(M, algebra, v) for k, v in eq.items()}
        else:
            raise ModelError(f"bad equality specification {eq!r}")
    except (KeyError, TypeError, IndexError) as e:
        raise ModelError(f"malformed model: {e}") from None
    except ValueError as e:
        if isinstance(e, ModelError):
            raise
        raise ModelError(str(e)) from None
    return FOStructure(M, tuple(domain), consts, funcs, preds, table, standard)


def load_model(path) -> FOStructure:
    with open(path, encoding="utf-8") as fh:
        return model_from_json(json.load(fh))


def _value_json(M, v):
    return M.names.get(v) or v.to_json()


def model_to_json(S: FOStructure) -> dict:
    M = S.matrix
    key = lambda args: ",".join(S.domain[i] for i in args)
    return {
        "semantics": S.kind,
        "algebra": M.algebra.to_json(),
        "domain": list(S.domain),
        "constants": {c: S.domain[a] for c, a in S.constants.items()},
        "functions": {f: {key(k): S.domain[v] for k, v in t.items()} for f, t in S.functions.items()},
        "predicates": {p: {key(k): _value_json(M, v) for k, v in t.items()}
                       for p, t in S.predicates.items()},
        **({} if S.equality is None else {
            "equality": {key(k): _value_json(M, v) for k, v in S.equality.items()},
            "standard_equality": S.standard_equality}),
    }


# -- tiny structure enumeration ------------------------------------------------------

def enumerate_structures(kind: str, size: int, predicates: Mapping[str, int],
                         constants: Iterable[str] = (), equality: str | None = None,
                         atoms: int = 1) -> Iterator[FOStructure]:
    """Every structure with the given predicates over a domain of ``size`` elements.

    Bounded to ``size <= 2`` and one-atom algebras; constants range over all
    elements, and ``equality`` (``classical``/``mid``) adds a standard table.
    """
    if size > 2 or atoms > 1:
        raise ValueError("structure enumeration is limited to |U| <= 2 and one atom")
    M = _matrix_for(kind, powerset_algebra(atoms))
    domain = tuple("ab"[:size])
    cells = [(p, args) for p, k in predicates.items() for args in product(range(size), repeat=k)]
    consts = list(constants)
    eq = default_equality(M, size, equality) if equality else None
    for cvals in product(range(size), repeat=len(consts)):
        for vals in product(M.domain, repeat=len(cells)):
            preds: dict = {p: {} for p in predicates}
            for (p, args), v in zip(cells, vals):
                preds[p][args] = v
            yield FOStructure(M, domain, dict(zip(consts, cvals)), {}, preds, eq)
