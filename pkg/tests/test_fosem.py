import json
import random
from itertools import islice, product

import pytest
from hypothesis import given, settings, strategies as st

from lfiswap.boolalg import powerset_algebra
from lfiswap.fosem import (ClosureCapExceeded, FOStructure, ModelError, NonStandardEquality,
                           UnmappedVariable, assignments, canonicalize, check_standard_equality,
                           default_equality, enumerate_structures, eval_term, fo_consequence,
                           ground_closure, model_from_json, model_to_json, possible_values,
                           qlfi1_consequence, qlfi1_interpret, qmbc_consequence, qmbc_eq_filter,
                           qmbc_valuations)
from lfiswap.hilbert import match_axiom
from lfiswap.parser import parse_formula, parse_term
from lfiswap.swap import m5, m5_values
from lfiswap.syntax import Dom, Signature, substitute, universal_closure, variant_normal_form
from lfiswap.twist import lfi1_matrix, lfi1_value, twist_matrix

L = lfi1_matrix()
V5 = m5_values()
ONE, HALF, ZERO = lfi1_value("1"), lfi1_value("1/2"), lfi1_value("0")
SIG = Signature(constants=frozenset({"c", "d"}), functions={"f": 1},
                predicates={"P": 1, "Q": 1, "R": 2}, has_equality=True)


def f(text, sig=SIG):
    return parse_formula(text, sig)


def twist_model(p_table, size=2, eq="classical", matrix=L, consts=None):
    dom = tuple("abc"[:size])
    preds = {"P": {(i,): v for i, v in enumerate(p_table)},
             "Q": {(i,): matrix.domain[i % len(matrix.domain)] for i in range(size)},
             "R": {(i, j): matrix.domain[(i + 2 * j) % len(matrix.domain)]
                   for i in range(size) for j in range(size)}}
    funcs = {"f": {(i,): (i + 1) % size for i in range(size)}}
    return FOStructure(matrix, dom, consts or {"c": 0, "d": size - 1}, funcs, preds,
                       default_equality(matrix, size, eq) if eq else None)


def swap_model(p_table, eq="classical", consts=None):
    size = len(p_table)
    dom = tuple("abc"[:size])
    preds = {"P": {(i,): v for i, v in enumerate(p_table)}}
    return FOStructure(m5(), dom, consts or {"c": 0}, {}, preds,
                       default_equality(m5(), size, eq) if eq else None)


# -- terms and canonical forms ---------------------------------------------------

def test_eval_term_examples():
    S = twist_model([ONE, HALF])
    assert eval_term(S, {}, parse_term("c", SIG)) == 0
    assert eval_term(S, {"x": 1}, parse_term("x", SIG)) == 1
    assert eval_term(S, {}, parse_term("f(c)", SIG)) == 1
    with pytest.raises(UnmappedVariable):
        eval_term(S, {}, parse_term("x", SIG))


def test_canonicalize_examples():
    S = twist_model([ONE, HALF])
    assert canonicalize(S, f("P(f(c))")) == f("P(@1)")
    assert canonicalize(S, f("forall x. P(x)")) == f("forall x. P(x)")
    assert canonicalize(S, f("P(x)"), {"x": 0}) == f("P(@0)")
    assert canonicalize(S, f("forall x. R(x, f(d))")) == f("forall x. R(x, @0)")


# -- deterministic semantics ---------------------------------------------------------

def test_quantifier_examples():
    S = twist_model([ONE, HALF])
    assert qlfi1_interpret(S, f("forall x. P(x)")) == HALF
    assert qlfi1_interpret(S, f("~forall x. P(x)")) == HALF == qlfi1_interpret(S, f("exists x. ~P(x)"))
    assert qlfi1_interpret(twist_model([ONE, ONE]), f("forall x. P(x)")) == ONE


def test_consequence_examples():
    for table in product(L.domain, repeat=2):
        S = twist_model(list(table))
        assert qlfi1_consequence([], f("(forall x. P(x)) -> P(c)"), S).holds
        assert qlfi1_consequence([f("P(x)")], f("forall x. P(x)"), S).holds


def test_consequence_countermodel_reports_assignment():
    S = twist_model([ONE, ZERO])
    v = qlfi1_consequence([], f("P(x)"), S)
    assert not v.holds and v.countermodel == {"assignment": {"x": "b"}, "value": ZERO}


def test_mid_equality_breaks_consistency_of_identity():
    S = twist_model([ONE, ONE], eq="mid")
    assert check_standard_equality(S)
    assert qlfi1_interpret(S, f("*(c = c)")) == ZERO
    assert not qlfi1_consequence([], f("*(c = c)"), S).holds
    assert qlfi1_consequence([], f("*(c = c)"), twist_model([ONE, ONE])).holds


def test_standard_equality_checks():
    assert check_standard_equality(twist_model([ONE, ONE]))
    with pytest.raises(NonStandardEquality):
        FOStructure(L, ("a",), {}, {}, {}, {(0, 0): ZERO})
    S = FOStructure(L, ("a",), {}, {}, {}, {(0, 0): ZERO}, standard_equality=False)
    assert not check_standard_equality(S)


def test_structure_validation():
    with pytest.raises(ModelError):
        FOStructure(L, (), {}, {}, {})
    with pytest.raises(ModelError):
        FOStructure(L, ("a", "b"), {}, {}, {"P": {(0,): ONE}})
    with pytest.raises(ModelError):
        FOStructure(L, ("a",), {"c": 3}, {}, {})
    with pytest.raises(ModelError):
        FOStructure(L, ("a",), {}, {}, {"P": {(0,): V5["T"]}})


def _random_twist(rng, size, n=1):
    M = L if n == 1 else twist_matrix(powerset_algebra(n))
    return twist_model([rng.choice(M.domain) for _ in range(size)], size, matrix=M)


@pytest.mark.parametrize("seed", range(20))
def test_quantifier_de_morgan(seed):
    rng = random.Random(seed)
    S = _random_twist(rng, rng.randint(1, 3), rng.choice([1, 2]))
    for body in ("P(x)", "R(x, c)", "P(x) & Q(f(x))", "exists y. R(x, y)", "*P(x) -> ~Q(x)"):
        phi = f(body)
        assert qlfi1_interpret(S, f(f"~forall x. ({body})")) == \
            qlfi1_interpret(S, f(f"exists x. ~({body})")), phi
        assert qlfi1_interpret(S, f(f"~exists x. ({body})")) == \
            qlfi1_interpret(S, f(f"forall x. ~({body})"))


@pytest.mark.parametrize("size", [1, 2, 3])
def test_universal_closure_designation(size):
    for table in product(L.domain, repeat=size):
        S = twist_model(list(table), size)
        for text in ("P(x)", "R(x, y)", "P(x) -> Q(y)", "~R(y, x) | P(f(x))"):
            phi = f(text)
            closed = L.is_designated(qlfi1_interpret(S, universal_closure(phi)))
            every = all(L.is_designated(qlfi1_interpret(S, phi, mu))
                        for mu in assignments(S, sorted({"x", "y"})))
            assert closed == every


@pytest.mark.parametrize("seed", range(10))
def test_substitution_lemma(seed):
    rng = random.Random(seed)
    S = _random_twist(rng, 2)
    phi = f("R(z, x) & exists y. R(y, z)")
    for t in ("c", "f(x)", "f(f(d))", "x"):
        term = parse_term(t, SIG)
        for mu in assignments(S, ["x"]):
            b = eval_term(S, mu, term)
            lhs = qlfi1_interpret(S, substitute(phi, "z", term), mu)
            rhs = qlfi1_interpret(S, substitute(phi, "z", Dom(b)), mu)
            assert lhs == rhs


def test_ax12_ax13_designated_on_twist_models():
    instances = ["P(c) -> exists x. P(x)", "(forall x. R(x, d)) -> R(f(c), d)",
                 "R(c, c) -> exists x. R(x, c)", "(forall x. P(x) & Q(x)) -> P(d) & Q(d)"]
    for sent in instances:
        phi = f(sent)
        assert match_axiom("Ax12", phi) or match_axiom("Ax13", phi)
    for table in product(L.domain, repeat=2):
        S = twist_model(list(table))
        for sent in instances:
            assert L.is_designated(qlfi1_interpret(S, f(sent)))


# -- ground closure and swap valuations ---------------------------------------------

def test_ground_closure_examples():
    S2 = swap_model([V5["T"], V5["F"]])
    want = [f("P(@0)"), f("P(@1)"), f("forall x. P(x)")]
    assert ground_closure(S2, [f("forall x. P(x)")]) == [variant_normal_form(g) for g in want]
    S1 = swap_model([V5["T"]])
    want = [f("P(@0)"), f("~P(@0)"), f("exists x. ~P(x)")]
    assert ground_closure(S1, [f("exists x. ~P(x)")]) == [variant_normal_form(g) for g in want]
    R = FOStructure(m5(), ("a", "b"), {}, {}, {"R": {k: V5["T"] for k in product(range(2), repeat=2)}})
    nodes = ground_closure(R, [f("forall x. exists y. R(x, y)")])
    assert len(nodes) == 7


def test_ground_closure_collapses_variants():
    S = swap_model([V5["T"], V5["F"]])
    nodes = ground_closure(S, [f("(forall x. P(x)) & forall y. P(y)")])
    assert len(nodes) == 4


def test_closure_cap():
    R = FOStructure(m5(), ("a", "b"), {}, {}, {"R": {k: V5["T"] for k in product(range(2), repeat=2)}})
    with pytest.raises(ClosureCapExceeded):
        ground_closure(R, [f("forall x. exists y. R(x, y)")], cap=5)
    with pytest.raises(ClosureCapExceeded):
        qmbc_consequence([], f("forall x. exists y. R(x, y)"), R, cap=5)


def test_qmbc_examples():
    for table in product(m5().domain, repeat=2):
        S = swap_model(list(table))
        assert qmbc_consequence([], f("(forall x. P(x)) -> P(c)"), S).holds
    S = FOStructure(m5(), ("a",), {"c": 0}, {}, {"P": {(0,): V5["t"]}, "Q": {(0,): V5["F"]}})
    assert qmbc_consequence([f("*P(c)"), f("P(c)"), f("~P(c)")], f("Q(c)"), S).holds


def test_qmbc_negated_universal_countermodel():
    S = swap_model([V5["T"]])
    v = qmbc_consequence([], f("~(forall x. P(x)) -> exists x. ~P(x)"), S)
    assert not v.holds and v.note == "closure countermodel"
    cm = v.countermodel
    assert cm.check()
    assert cm.designated(f("~forall x. P(x)"))
    assert not cm.designated(f("exists x. ~P(x)"))


def test_quantifier_first_coordinates_rechecked():
    S = swap_model([V5["t"], V5["F"]])
    sentences = [f("forall x. P(x) | ~P(x)"), f("exists x. *P(x)")]
    count = 0
    for v in islice(qmbc_valuations(S, sentences), 300):
        assert v.violations() == []
        count += 1
    assert count > 0


def test_possible_values_of_quantified_sentence():
    S = swap_model([V5["T"], V5["t"]])
    vals = possible_values(S, f("forall x. P(x)"))
    assert vals and all(z.z1.is_top for z in vals)
    assert set(vals) == {z for z in m5().domain if z.z1.is_top}


@pytest.mark.parametrize("table", list(product(["T", "t", "t0", "F", "f0"], repeat=2)))
def test_axioms_designated_in_every_swap_valuation(table):
    S = swap_model([V5[n] for n in table])
    sents = [f("P(c) -> exists x. P(x)"), f("(forall x. P(x)) -> P(c)"), f("forall x. x = x"),
             f("forall x. forall y. x = y -> (P(x) -> P(y))")]
    for s in sents:
        assert qmbc_consequence([], s, S).holds, s


def test_eq_filter_removes_bad_valuations():
    # non-classical but standard equality in swap mode: P(@0) designated, same atom under @0=@0
    S = swap_model([V5["T"], V5["F"]], eq="classical")
    sents = [f("@0 = @0 -> (P(@0) -> P(@0))"), f("@0 = @1 -> (P(@0) -> P(@1))")]
    kept = list(qmbc_valuations(S, sents))
    assert kept == list(qmbc_eq_filter(qmbc_valuations(S, sents, eq_filter=False), S))
    assert kept


def test_eq_filter_is_identity_without_equality_atoms():
    S = swap_model([V5["T"], V5["t"]])
    a = [v.values for v in qmbc_valuations(S, [f("forall x. ~P(x)")])]
    b = [v.values for v in qmbc_eq_filter(qmbc_valuations(S, [f("forall x. ~P(x)")], eq_filter=False), S)]
    assert a == b


def test_eq_filter_prunes_substitution_failures():
    # P(@0) fixed designated, P(@1) not; a non-standard "equality" designating @0 = @1
    eq = default_equality(m5(), 2)
    eq[(0, 1)] = V5["T"]
    S = FOStructure(m5(), ("a", "b"), {}, {}, {"P": {(0,): V5["T"], (1,): V5["F"]}}, eq,
                    standard_equality=False)
    sents = [f("P(@0)"), f("P(@1)"), f("@0 = @1")]
    assert list(qmbc_valuations(S, sents, eq_filter=False))
    assert list(qmbc_valuations(S, sents)) == []


def test_fo_consequence_dispatch():
    assert fo_consequence([], f("P(c) -> exists x. P(x)"), twist_model([ONE, ZERO])).holds
    assert fo_consequence([], f("P(c) -> exists x. P(x)"), swap_model([V5["F"], V5["T"]])).holds


# -- JSON ------------------------------------------------------------------------------

def test_json_roundtrip():
    for S in (twist_model([ONE, HALF]), swap_model([V5["t"], V5["f0"]])):
        data = json.loads(json.dumps(model_to_json(S)))
        back = model_from_json(data)
        assert back.matrix is S.matrix
        assert (back.domain, back.constants, back.functions, back.predicates, back.equality) == \
            (S.domain, S.constants, S.functions, S.predicates, S.equality)


def test_json_model_file_format():
    data = {"semantics": "twist", "algebra": {"type": "powerset", "atoms": 1},
            "domain": ["a", "b"], "constants": {"c": "a"}, "functions": {"f": {"a": "b", "b": "a"}},
            "predicates": {"P": {"a": [[0], []], "b": "1/2"}}, "equality": "standard-mid"}
    S = model_from_json(data)
    assert S.predicates["P"] == {(0,): ONE, (1,): HALF}
    assert S.equality[(0, 0)] == HALF
    assert qlfi1_interpret(S, parse_formula("P(f(c))", S.signature)) == HALF


def test_json_errors():
    with pytest.raises(ModelError):
        model_from_json({"domain": ["a"], "predicates": {"P": {"z": "T"}}})
    with pytest.raises(ModelError):
        model_from_json({"domain": ["a"], "predicates": {"P": {"a": "nope"}}})
    with pytest.raises(ModelError):
        model_from_json({"semantics": "other", "domain": ["a"]})
    with pytest.raises(ModelError):
        model_from_json({"predicates": {}})


def test_enumerate_structures_counts():
    assert sum(1 for _ in enumerate_structures("twist", 2, {"P": 1})) == 9
    assert sum(1 for _ in enumerate_structures("swap", 1, {"P": 1}, ["c"])) == 5
    with pytest.raises(ValueError):
        list(enumerate_structures("swap", 3, {"P": 1}))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(L.domain), min_size=2, max_size=2),
       st.sampled_from(["P(x)", "~P(x)", "*P(x)", "P(x) & ~P(x)", "P(f(x)) -> P(x)"]))
def test_universal_instantiation_designated_in_twist_mode(table, body):
    S = twist_model(table)
    phi = f(f"(forall x. {body}) -> " + body.replace("x", "c"))
    assert L.is_designated(qlfi1_interpret(S, phi))
