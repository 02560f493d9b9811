"""Derivation checking for the Hilbert calculi mbC, QmbC, LFI1o, QLFI1o and QmbCeq.

Every step carries its own justification; the checker confirms each one and
never searches.  Step references are 1-based, as in proof files.

Schemas are formulas over metavariables: a 0-ary atom ``?A`` stands for any
formula and a variable ``?x`` (bound or free) for any variable.  Schemas whose
side condition is a substitution (instances, variants, partial replacement)
have dedicated matchers.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .parser import parse_formula
from .sampling import random_formula
from .search import Verdict
from .syntax import (And, App, Atom, Cons, Const, Eq, Exists, Forall, Imp, Neg, Or,
                     QUANTIFIERS, CaptureError, Var, children, format_formula, free_vars,
                     is_free_for, is_variant, partial_replace_ok, substitute)

LOGICS = ("mbC", "QmbC", "LFI1o", "QLFI1o", "QmbCeq")
FIRST_ORDER = {"QmbC", "QLFI1o", "QmbCeq"}


class ProofError(ValueError):
    pass


class BadReference(ProofError):
    pass


class SideConditionViolated(ProofError):
    pass


class ShapeMismatch(ProofError):
    pass


class UnknownSchema(ProofError):
    pass


# -- metavariable patterns -----------------------------------------------------

_FORMULA_MV = {"A", "B", "C"}
_VAR_MV = {"x", "y"}


def _mv_term(t):
    if isinstance(t, Var) and t.name in _VAR_MV:
        return Var("?" + t.name)
    return t


def _to_pattern(phi):
    if isinstance(phi, Atom):
        if not phi.args and phi.pred in _FORMULA_MV:
            return Atom("?" + phi.pred)
        return Atom(phi.pred, tuple(_mv_term(a) for a in phi.args))
    if isinstance(phi, Eq):
        return Eq(_mv_term(phi.left), _mv_term(phi.right))
    if isinstance(phi, QUANTIFIERS):
        var = "?" + phi.var if phi.var in _VAR_MV else phi.var
        return type(phi)(var, _to_pattern(phi.body))
    if isinstance(phi, (Neg, Cons)):
        return type(phi)(_to_pattern(phi.body))
    return type(phi)(_to_pattern(phi.left), _to_pattern(phi.right))


def pattern(text: str):
    """Parse a schema: ``A``, ``B``, ``C`` are formula metavariables, ``x``, ``y`` variable ones.

    ``X <-> Y`` at the top level abbreviates ``(X -> Y) & (Y -> X)``.
    """
    if "<->" in text:
        left, right = (s.strip() for s in text.split("<->"))
        text = f"(({left}) -> ({right})) & (({right}) -> ({left}))"
    return _to_pattern(parse_formula(text))


def match(pat, phi, binding: dict | None = None) -> dict | None:
    """Bind metavariables of ``pat`` so that it becomes ``phi``; ``None`` when impossible."""
    b = dict(binding or {})
    return b if _match(pat, phi, b) else None


def _bind(b, key, val) -> bool:
    if key in b:
        return b[key] == val
    b[key] = val
    return True


def _match_term(p, t, b) -> bool:
    if isinstance(p, Var) and p.name.startswith("?"):
        return isinstance(t, Var) and _bind(b, p.name, t.name)
    if isinstance(p, App):
        return (isinstance(t, App) and p.fn == t.fn and len(p.args) == len(t.args)
                and all(_match_term(x, y, b) for x, y in zip(p.args, t.args)))
    return p == t


def _match(p, phi, b) -> bool:
    if isinstance(p, Atom) and p.pred.startswith("?"):
        return _bind(b, p.pred, phi)
    if type(p) is not type(phi):
        return False
    if isinstance(p, Atom):
        return (p.pred == phi.pred and len(p.args) == len(phi.args)
                and all(_match_term(x, y, b) for x, y in zip(p.args, phi.args)))
    if isinstance(p, Eq):
        return _match_term(p.left, phi.left, b) and _match_term(p.right, phi.right, b)
    if isinstance(p, QUANTIFIERS):
        if p.var.startswith("?"):
            if not _bind(b, p.var, phi.var):
                return False
        elif p.var != phi.var:
            return False
        return _match(p.body, phi.body, b)
    return all(_match(x, y, b) for x, y in zip(children(p), children(phi)))


def instantiate(pat, binding: dict):
    """Replace metavariables in ``pat`` by their bindings."""
    def term(t):
        if isinstance(t, Var) and t.name.startswith("?"):
            return Var(binding[t.name])
        if isinstance(t, App):
            return App(t.fn, tuple(term(a) for a in t.args))
        return t

    def go(p):
        if isinstance(p, Atom):
            if p.pred.startswith("?"):
                return binding[p.pred]
            return Atom(p.pred, tuple(term(a) for a in p.args))
        if isinstance(p, Eq):
            return Eq(term(p.left), term(p.right))
        if isinstance(p, QUANTIFIERS):
            return type(p)(binding[p.var] if p.var.startswith("?") else p.var, go(p.body))
        if isinstance(p, (Neg, Cons)):
            return type(p)(go(p.body))
        return type(p)(go(p.left), go(p.right))

    return go(pat)


def metavariables(pat) -> list[str]:
    out: dict = {}

    def term(t):
        if isinstance(t, Var) and t.name.startswith("?"):
            out.setdefault(t.name, None)
        elif isinstance(t, App):
            for a in t.args:
                term(a)

    def go(p):
        if isinstance(p, Atom):
            if p.pred.startswith("?"):
                out.setdefault(p.pred, None)
            for a in p.args:
                term(a)
        elif isinstance(p, Eq):
            term(p.left)
            term(p.right)
        else:
            if isinstance(p, QUANTIFIERS) and p.var.startswith("?"):
                out.setdefault(p.var, None)
            for c in children(p):
                go(c)

    go(pat)
    return list(out)


# -- substitution-style schemas ---------------------------------------------------

def _witness(phi, x, target):
    """A term ``t`` with ``phi[x/t] == target``, found by aligning the two formulas.

    Returns ``x`` itself when ``x`` has no free occurrence, and ``None`` when
    the shapes disagree.
    """
    found: list = []

    def term(s, t, bound):
        if isinstance(s, Var) and s.name == x and x not in bound:
            found.append(t)
            return True
        if isinstance(s, App):
            return (isinstance(t, App) and s.fn == t.fn and len(s.args) == len(t.args)
                    and all(term(a, c, bound) for a, c in zip(s.args, t.args)))
        return True

    def go(p, q, bound):
        if type(p) is not type(q):
            return False
        if isinstance(p, Atom):
            return (p.pred == q.pred and len(p.args) == len(q.args)
                    and all(term(a, c, bound) for a, c in zip(p.args, q.args)))
        if isinstance(p, Eq):
            return term(p.left, q.left, bound) and term(p.right, q.right, bound)
        if isinstance(p, QUANTIFIERS):
            return p.var == q.var and go(p.body, q.body, bound | {p.var})
        return all(go(a, c, bound) for a, c in zip(children(p), children(q)))

    if not go(phi, target, frozenset()):
        return None
    return found[0] if found else Var(x)


def _is_instance(phi, x, target) -> bool:
    t = _witness(phi, x, target)
    if t is None or not is_free_for(t, x, phi):
        return False
    try:
        return substitute(phi, x, t) == target
    except CaptureError:
        return False


def _ax12(f) -> bool:
    return (isinstance(f, Imp) and isinstance(f.right, Exists)
            and _is_instance(f.right.body, f.right.var, f.left))


def _ax13(f) -> bool:
    return (isinstance(f, Imp) and isinstance(f.left, Forall)
            and _is_instance(f.left.body, f.left.var, f.right))


def _ax14(f) -> bool:
    return isinstance(f, Imp) and is_variant(f.left, f.right)


def _axeq2(f) -> bool:
    if not (isinstance(f, Imp) and isinstance(f.left, Eq) and isinstance(f.right, Imp)):
        return False
    l, r = f.left.left, f.left.right
    if not (isinstance(l, Var) and isinstance(r, Var)):
        return False
    phi, phi2 = f.right.left, f.right.right
    return is_free_for(r, l.name, phi) and partial_replace_ok(phi, phi2, l.name, r.name)


# -- catalog -----------------------------------------------------------------------

@dataclass(frozen=True)
class Schema:
    id: str
    text: str
    matcher: Callable | None = None

    @property
    def pattern(self):
        return pattern(self.text)

    def matches(self, phi) -> bool:
        if self.matcher is not None:
            return self.matcher(phi)
        return match(self.pattern, phi) is not None


_SCHEMAS = [
    Schema("A1", "A -> (B -> A)"),
    Schema("A2", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))"),
    Schema("A3", "A -> (B -> (A & B))"),
    Schema("A4", "(A & B) -> A"),
    Schema("A5", "(A & B) -> B"),
    Schema("A6", "A -> (A | B)"),
    Schema("A7", "B -> (A | B)"),
    Schema("A8", "(A -> C) -> ((B -> C) -> ((A | B) -> C))"),
    Schema("A9", "A | (A -> B)"),
    Schema("A10", "A | ~A"),
    Schema("A11", "*A -> (A -> (~A -> B))"),
    Schema("Ax12", "phi[x/t] -> exists x. phi, t free for x", _ax12),
    Schema("Ax13", "forall x. phi -> phi[x/t], t free for x", _ax13),
    Schema("Ax14", "alpha -> beta, alpha a variant of beta", _ax14),
    Schema("ci", "~*A -> (A & ~A)"),
    Schema("dneg", "~~A <-> A"),
    Schema("neg-or", "~(A | B) <-> (~A & ~B)"),
    Schema("neg-and", "~(A & B) <-> (~A | ~B)"),
    Schema("neg-imp", "~(A -> B) <-> (A & ~B)"),
    Schema("Ax-neg-exists", "~(exists x. A) <-> (forall x. ~A)"),
    Schema("Ax-neg-forall", "~(forall x. A) <-> (exists x. ~A)"),
    Schema("AxEq1", "forall x. x = x"),
    Schema("AxEq2", "x = y -> (phi -> phi[x~y]), y free for x", _axeq2),
]
SCHEMAS = {s.id: s for s in _SCHEMAS}

_MBC = [f"A{i}" for i in range(1, 12)]
_LFI1 = ["ci", "dneg", "neg-or", "neg-and", "neg-imp"]
CATALOG = {
    "mbC": _MBC,
    "QmbC": _MBC + ["Ax12", "Ax13", "Ax14"],
    "LFI1o": _MBC + _LFI1,
    "QLFI1o": _MBC + _LFI1 + ["Ax12", "Ax13", "Ax-neg-exists", "Ax-neg-forall"],
    "QmbCeq": _MBC + ["Ax12", "Ax13", "Ax14", "AxEq1", "AxEq2"],
}

_ALIASES = {"neg∨": "neg-or", "neg∧": "neg-and", "neg→": "neg-imp",
            "ax¬∃": "Ax-neg-exists", "ax¬∀": "Ax-neg-forall"}


def schema_id(name: str) -> str:
    """Canonical id for a schema name, case-insensitively."""
    name = _ALIASES.get(name.lower(), name)
    for sid in SCHEMAS:
        if sid.lower() == name.lower():
            return sid
    raise UnknownSchema(f"no axiom schema named {name!r}")


def logic_id(name: str) -> str:
    key = name.lower().replace("∘", "o").replace("≈", "eq").replace("_", "")
    for lid in LOGICS:
        if lid.lower() == key:
            return lid
    raise ValueError(f"unknown logic {name!r}; expected one of {', '.join(LOGICS)}")


def match_axiom(schema: str, phi) -> bool:
    return SCHEMAS[schema_id(schema)].matches(phi)


def sample_instance(schema: str):
    """A simple instance of ``schema`` built from fresh atoms (catalog self-check)."""
    sid = schema_id(schema)
    p = Atom("P", (Var("x"),))
    c = Const("c")
    special = {
        "Ax12": Imp(Atom("P", (c,)), Exists("x", p)),
        "Ax13": Imp(Forall("x", p), Atom("P", (c,))),
        "Ax14": Imp(Forall("x", p), Forall("z", Atom("P", (Var("z"),)))),
        "AxEq2": Imp(Eq(Var("x"), Var("y")),
                     Imp(Atom("R", (Var("x"), Var("x"))), Atom("R", (Var("x"), Var("y"))))),
    }
    if sid in special:
        return special[sid]
    pat = SCHEMAS[sid].pattern
    fresh = {}
    for i, mv in enumerate(metavariables(pat)):
        fresh[mv] = Atom(f"p{i}") if mv[1:] in _FORMULA_MV else mv[1:]
    if sid.startswith("Ax-neg"):
        fresh["?A"] = p
    return instantiate(pat, fresh)


# -- derivations ----------------------------------------------------------------------

@dataclass(frozen=True)
class Premise:
    def __str__(self):
        return "premise"


@dataclass(frozen=True)
class Axiom:
    schema: str

    def __str__(self):
        return f"axiom:{self.schema}"


@dataclass(frozen=True)
class MP:
    i: int
    j: int

    def __str__(self):
        return f"mp:{self.i},{self.j}"


@dataclass(frozen=True)
class ExistsIn:
    i: int

    def __str__(self):
        return f"exists-in:{self.i}"


@dataclass(frozen=True)
class ForallIn:
    i: int

    def __str__(self):
        return f"forall-in:{self.i}"


@dataclass(frozen=True)
class Derivation:
    logic_id: str
    premises: tuple
    steps: tuple  # of (formula, justification)

    def __post_init__(self):
        object.__setattr__(self, "logic_id", logic_id(self.logic_id))
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "steps", tuple(tuple(s) for s in self.steps))

    @property
    def conclusion(self):
        return self.steps[-1][0] if self.steps else None


@dataclass(frozen=True)
class StepVerdict:
    step: int
    ok: bool
    error: ProofError | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"step {self.step}: ok"
        return f"step {self.step}: {type(self.error).__name__}: {self.error}"


def _earlier(d: Derivation, k: int, i: int):
    if not (isinstance(i, int) and 1 <= i < k):
        raise BadReference(f"step {k} cites step {i}, which is not an earlier step")
    return d.steps[i - 1][0]


def _check(d: Derivation, k: int):
    phi, why = d.steps[k - 1]
    if isinstance(why, Premise):
        if phi not in d.premises:
            raise ShapeMismatch(f"{format_formula(phi)} is not a premise")
    elif isinstance(why, Axiom):
        sid = schema_id(why.schema)
        if sid not in CATALOG[d.logic_id]:
            raise UnknownSchema(f"{sid} is not an axiom of {d.logic_id}")
        if not SCHEMAS[sid].matches(phi):
            raise ShapeMismatch(f"{format_formula(phi)} is not an instance of {sid}")
    elif isinstance(why, MP):
        a, b = _earlier(d, k, why.i), _earlier(d, k, why.j)
        if not (b == Imp(a, phi) or a == Imp(b, phi)):
            raise ShapeMismatch(f"steps {why.i} and {why.j} do not yield "
                                f"{format_formula(phi)} by modus ponens")
    elif isinstance(why, (ExistsIn, ForallIn)):
        if d.logic_id not in FIRST_ORDER:
            raise UnknownSchema(f"{d.logic_id} has no quantifier rules")
        src = _earlier(d, k, why.i)
        if not (isinstance(src, Imp) and isinstance(phi, Imp)):
            raise ShapeMismatch("quantifier rules act on implications")
        if isinstance(why, ExistsIn):
            q = phi.left
            if not (isinstance(q, Exists) and q.body == src.left and phi.right == src.right):
                raise ShapeMismatch(f"step {k} is not exists x.phi -> psi for step {why.i}")
            if q.var in free_vars(phi.right):
                raise SideConditionViolated(f"{q.var} occurs free in {format_formula(phi.right)}")
        else:
            q = phi.right
            if not (isinstance(q, Forall) and q.body == src.right and phi.left == src.left):
                raise ShapeMismatch(f"step {k} is not phi -> forall x.psi for step {why.i}")
            if q.var in free_vars(phi.left):
                raise SideConditionViolated(f"{q.var} occurs free in {format_formula(phi.left)}")
    else:
        raise ProofError(f"unknown justification {why!r}")


def check_step(d: Derivation, k: int) -> StepVerdict:
    """Validate step ``k`` (1-based) given the earlier steps."""
    if not 1 <= k <= len(d.steps):
        return StepVerdict(k, False, BadReference(f"there is no step {k}"))
    try:
        _check(d, k)
    except ProofError as e:
        return StepVerdict(k, False, e)
    return StepVerdict(k, True)


def check_derivation(d: Derivation) -> Verdict:
    """Valid when every step checks; otherwise the first failing step is reported."""
    if not d.steps:
        return Verdict(False, StepVerdict(0, False, ShapeMismatch("empty derivation")), "empty")
    for k in range(1, len(d.steps) + 1):
        v = check_step(d, k)
        if not v:
            return Verdict(False, v, str(v))
    return Verdict(True)


# -- proof files -----------------------------------------------------------------------

def parse_justification(text: str):
    kind, _, rest = text.strip().partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "premise" and not rest:
            return Premise()
        if kind == "axiom":
            return Axiom(schema_id(rest.strip()))
        if kind == "mp":
            i, j = (int(s) for s in rest.split(","))
            return MP(i, j)
        if kind == "exists-in":
            return ExistsIn(int(rest))
        if kind == "forall-in":
            return ForallIn(int(rest))
    except ValueError as e:
        if isinstance(e, UnknownSchema):
            raise
        raise ProofError(f"bad justification {text!r}") from None
    raise ProofError(f"bad justification {text!r}")


def read_premises(text: str, constants=()) -> list:
    """One formula per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_formula(line, constants=constants))
    return out


def derivation_from_json(data, logic: str, premises: Sequence = (), constants: Iterable = ()) -> Derivation:
    """Build a derivation from a proof script.

    ``data`` is a list of ``{"formula", "by"}`` objects, or an object with
    ``steps`` and optionally ``constants`` and ``premises``.
    """
    constants = set(constants)
    premises = list(premises)
    if isinstance(data, dict):
        constants |= set(data.get("constants", ()))
        premises += [parse_formula(p, constants=constants) for p in data.get("premises", ())]
        data = data.get("steps", [])
    steps = []
    for n, item in enumerate(data, 1):
        try:
            steps.append((parse_formula(item["formula"], constants=constants),
                          parse_justification(item["by"])))
        except (KeyError, TypeError):
            raise ProofError(f"proof entry {n} needs 'formula' and 'by'") from None
    return Derivation(logic, premises, steps)


def derivation_to_json(d: Derivation) -> list:
    return [{"formula": format_formula(f), "by": str(j)} for f, j in d.steps]


def load_derivation(path, logic: str, premises: Sequence = (), constants: Iterable = ()) -> Derivation:
    with open(path, encoding="utf-8") as fh:
        return derivation_from_json(json.load(fh), logic, premises, constants)


# -- random derivations ------------------------------------------------------------------

def random_derivation(logic: str, rng: random.Random, length: int = 12,
                      letters=("p", "q"), depth: int = 1) -> Derivation:
    """Forward-chain a valid propositional derivation from axiom instances and MP.

    Each round either adds a fresh axiom instance, or picks an earlier step
    ``X``, adds an axiom instance ``X -> Y`` whose antecedent matches it, and
    then ``Y`` by modus ponens.
    """
    lid = logic_id(logic)
    ids = [s for s in CATALOG[lid] if SCHEMAS[s].matcher is None and not s.startswith("Ax")]
    pats = {s: SCHEMAS[s].pattern for s in ids}
    imp_ids = [s for s in ids if isinstance(pats[s], Imp)]
    steps: list = []

    def fill(pat, binding):
        b = dict(binding)
        for mv in metavariables(pat):
            b.setdefault(mv, random_formula(rng, letters, depth))
        return instantiate(pat, b)

    while len(steps) < length:
        if steps and rng.random() < 0.6:
            k = rng.randrange(len(steps))
            x = steps[k][0]
            rng.shuffle(imp_ids)
            for sid in imp_ids:
                b = match(pats[sid].left, x)
                if b is not None:
                    inst = fill(pats[sid], b)
                    steps.append((inst, Axiom(sid)))
                    steps.append((inst.right, MP(k + 1, len(steps))))
                    break
            continue
        sid = rng.choice(ids)
        steps.append((fill(pats[sid], {}), Axiom(sid)))
    return Derivation(lid, (), steps)
