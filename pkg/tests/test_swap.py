from itertools import product

import pytest
from hypothesis import given, strategies as st

from lfiswap.boolalg import powerset_algebra, two
from lfiswap.golden import m5_mismatches
from lfiswap.swap import (DomainEscape, EmptyOutput, FirstProjectionViolation, Snapshot,
                          boolean_op, condensed, format_tables, full_swap, m5, m5_values,
                          sub_swap, swap_domain)

V = m5_values()


def brute_count(n):
    A = powerset_algebra(n)
    full = A.full_mask
    return sum(1 for a, b, c in product(range(1 << n), repeat=3)
               if (a | b) == full and (a & b & c) == 0)


@pytest.mark.parametrize("n", range(5))
def test_domain_size(n):
    # each atom independently picks one of 5 legal bit patterns
    assert len(swap_domain(powerset_algebra(n))) == 5 ** n == brute_count(n)


def test_two_element_domain_is_the_five_values():
    assert set(swap_domain(two())) == set(V.values())
    assert V["T"].key == (1, 0, 1) and V["t"].key == (1, 1, 0) and V["t0"].key == (1, 0, 0)
    assert V["F"].key == (0, 1, 1) and V["f0"].key == (0, 1, 0)
    assert len(swap_domain(powerset_algebra(0))) == 1


def test_m5_examples():
    M = m5()
    D = set(M.designated)
    assert D == {V["T"], V["t"], V["t0"]}
    assert set(M.and_(V["t"], V["T"])) == D
    assert set(M.neg(V["t"])) == D
    assert set(M.cons(V["t"])) == {V["F"], V["f0"]}
    assert all(condensed(M, M.and_(V["F"], y)) == "ND" for y in V.values())
    assert condensed(M, M.imp(V["F"], V["F"])) == "D"


def test_golden_tables():
    assert m5_mismatches() == []


def test_tables_render():
    text = format_tables(m5())
    assert text.splitlines()[0].split("|")[0].strip() == "&"
    assert "ND" in text
    full = format_tables(m5(), condensed_form=False)
    assert "{T,t,t0}" in full


@pytest.mark.parametrize("n", [1, 2])
def test_first_projection_and_nonempty(n):
    M = full_swap(powerset_algebra(n))
    for x, y in product(M.domain, repeat=2):
        for op in ("and", "or", "imp"):
            outs = M.apply(op, x, y)
            assert outs
            assert all(z.z1 == boolean_op(op, x.z1, y.z1) for z in outs)
            # designation law
            assert all(M.is_designated(z) for z in outs) == boolean_op(op, x.z1, y.z1).is_top
    for x in M.domain:
        assert all(z.z1 == x.z2 for z in M.neg(x))
        assert all(z.z1 == x.z3 for z in M.cons(x))


def test_designation_law_for_and():
    M = m5()
    D = set(M.designated)
    for x, y in product(M.domain, repeat=2):
        assert set(M.and_(x, y)) <= D if (x in D and y in D) else not (set(M.and_(x, y)) & D)


def test_full_swap_validates():
    full_swap(powerset_algebra(2)).validate()


def test_sub_swap_narrowing():
    M = m5()
    sub = sub_swap(M, outputs={("neg", V["F"]): [V["t"]]})
    assert sub.neg(V["F"]) == (V["t"],)
    assert set(sub.neg(V["T"])) == set(M.neg(V["T"]))


def test_sub_swap_errors():
    M = m5()
    with pytest.raises(EmptyOutput):
        sub_swap(M, outputs={("cons", V["T"]): []})
    with pytest.raises(FirstProjectionViolation):
        sub_swap(M, outputs={("neg", V["F"]): [V["F"]]})
    A = two()
    bad = Snapshot(A.bottom, A.bottom, A.top)
    with pytest.raises(DomainEscape):
        sub_swap(M, domain=list(M.domain) + [bad])


def test_sub_swap_smaller_domain():
    # dropping t0 and f0 keeps every output nonempty
    M = m5()
    sub = sub_swap(M, domain=[V["T"], V["t"], V["F"]])
    assert set(sub.neg(V["t"])) == {V["T"], V["t"]}


@given(st.integers(0, 24), st.integers(0, 24))
def test_mask_tables_match_apply(i, j):
    M = full_swap(powerset_algebra(2))
    x, y = M.domain[i], M.domain[j]
    table = M.mask_table("imp")
    got = {M.domain[k] for k in range(len(M.domain)) if table[i][j] >> k & 1}
    assert got == set(M.imp(x, y))


def test_snapshot_json():
    A = powerset_algebra(2)
    s = swap_domain(A)[7]
    assert Snapshot.from_json(s.to_json(), A) == s
