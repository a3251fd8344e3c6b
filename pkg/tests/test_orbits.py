from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.utilities.iterables import partitions as sympy_partitions

from thetacorr.orbits import (
    ORTH,
    SYMP,
    CapExceeded,
    ComplexOrbit,
    MultForm,
    Orth,
    Symp,
    Tableau,
    column_data,
    complex_orbits,
    complexify,
    dominance_leq,
    dominance_maxima,
    enumerate_orbits,
    enumerate_tableaux,
    make_tableau,
    partition,
    partitions,
    partition_is_valid,
    rank,
    row_form_kind,
    stabilizer_factors,
    symmetric_signature,
    tableau_gram,
    tableaux_of,
    total_signature,
    transpose,
    validate_complex,
    validate_tableau,
)


def _sympy_parts(n):
    out = set()
    for d in sympy_partitions(n):
        out.add(tuple(sorted((k for k, m in d.items() for _ in range(m)), reverse=True)))
    return out if n else {()}


@pytest.mark.parametrize("n", range(0, 11))
def test_partitions_match_sympy(n):
    ours = list(partitions(n))
    assert len(ours) == len(set(ours))
    assert set(ours) == _sympy_parts(n)


@pytest.mark.parametrize("n", range(0, 11))
@pytest.mark.parametrize("lie_type", [ORTH, SYMP])
def test_complex_orbit_counts(n, lie_type):
    bad_parity = 0 if lie_type == ORTH else 1
    expected = {
        lam
        for lam in _sympy_parts(n)
        if all(m % 2 == 0 for t, m in Counter(lam).items() if t % 2 == bad_parity)
    }
    if lie_type == SYMP and n % 2:
        expected = set()
    assert {O.parts for O in complex_orbits(lie_type, n)} == expected


def test_known_orbit_counts():
    assert len(list(complex_orbits(SYMP, 4))) == 4
    assert [O.parts for O in complex_orbits(ORTH, 4)] == [(3, 1), (2, 2), (1, 1, 1, 1)]
    assert not partition_is_valid(ORTH, (2, 1))
    assert validate_complex(ComplexOrbit(SYMP, (3, 1))) == ["part 3 has odd multiplicity 1", "part 1 has odd multiplicity 1"]


def test_cap():
    with pytest.raises(CapExceeded):
        list(complex_orbits(ORTH, 13))
    with pytest.raises(CapExceeded):
        list(enumerate_tableaux(1, (7, 7)))


@st.composite
def partition_pairs(draw):
    n = draw(st.integers(0, 10))
    parts = list(partitions(n))
    return draw(st.sampled_from(parts)), draw(st.sampled_from(parts)), draw(st.sampled_from(parts))


@given(partition_pairs())
def test_dominance_is_a_partial_order(abc):
    a, b, c = abc
    assert dominance_leq(a, a)
    if dominance_leq(a, b) and dominance_leq(b, a):
        assert a == b
    if dominance_leq(a, b) and dominance_leq(b, c):
        assert dominance_leq(a, c)
    # Transposition reverses the order.
    assert dominance_leq(a, b) == dominance_leq(transpose(b), transpose(a))


def test_dominance_size_mismatch():
    with pytest.raises(ValueError):
        dominance_leq((2,), (1,))


def test_dominance_maxima():
    assert dominance_maxima([(3, 3), (4, 1, 1), (2, 2, 2)]) == [(3, 3), (4, 1, 1)]


def test_transpose():
    assert transpose((3, 1)) == (2, 1, 1)
    assert transpose(()) == ()
    assert partition([1, 3, 2]) == (3, 2, 1)


def test_row_form_kind():
    assert row_form_kind(1, 1) == ORTH and row_form_kind(1, 2) == SYMP
    assert row_form_kind(-1, 1) == SYMP and row_form_kind(-1, 2) == ORTH


def test_tableau_round_trip_and_merge():
    T = make_tableau(1, [(1, Orth(1, 0)), (3, Orth(0, 1)), (1, Orth(0, 2)), (2, Symp(0))])
    assert T.rows == ((3, Orth(0, 1)), (1, Orth(1, 2)))
    assert Tableau.from_json(T.to_json()) == T
    assert MultForm.from_json({"symp": 4}) == Symp(4)


def test_validate_tableau():
    assert validate_tableau(Tableau(1, ((2, Orth(1, 0)),))) == ["length-2 row needs a Symp form"]
    assert validate_tableau(Tableau(-1, ((1, Symp(1)),))) == ["length-1 row has an odd-dimensional Symp form"]
    assert validate_tableau(Tableau(1, ((1, Orth(1, 0)), (3, Orth(1, 0))))) == ["row lengths must be strictly decreasing"]


def test_tensor_rule_examples():
    assert total_signature(make_tableau(1, [(3, Orth(1, 0))])) == (2, 1)
    assert total_signature(make_tableau(1, [(3, Orth(0, 1))])) == (1, 2)
    assert total_signature(make_tableau(1, [(2, Symp(2))])) == (2, 2)
    with pytest.raises(ValueError):
        total_signature(make_tableau(-1, [(2, Orth(1, 0))]))


def test_enumerate_small_algebras():
    assert len(list(enumerate_tableaux(1, (2, 1)))) == 2
    assert len(list(enumerate_tableaux(-1, 2))) == 3
    assert len(list(enumerate_orbits("sp", 2))) == 2


@pytest.mark.parametrize("N", range(0, 7))
def test_gram_oracle_symmetric(N):
    for p in range(N + 1):
        for T in enumerate_tableaux(1, (p, N - p)):
            G = tableau_gram(T)
            assert all(G[i][j] == G[j][i] for i in range(N) for j in range(N))
            assert symmetric_signature(G) == total_signature(T) + (0,)


@pytest.mark.parametrize("N", [0, 2, 4, 6])
def test_gram_oracle_skew(N):
    for T in enumerate_tableaux(-1, N):
        G = tableau_gram(T)
        assert len(G) == T.total_dim == N
        assert all(G[i][j] == -G[j][i] for i in range(N) for j in range(N))
        assert rank(G) == N


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n)))
def test_congruence_signature_matches_eigenvalues(entries):
    n = int(len(entries) ** 0.5)
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = Fraction(entries[i * n + j])
    ev = sympy.Matrix(M).eigenvals(multiple=True)
    pos = sum(1 for e in ev if sympy.re(sympy.N(e, 30)) > 1e-20)
    neg = sum(1 for e in ev if sympy.re(sympy.N(e, 30)) < -1e-20)
    assert symmetric_signature(M) == (pos, neg, n - pos - neg)


@given(st.sampled_from([ORTH, SYMP]), st.integers(0, 8))
def test_complexify_is_valid(lie_type, n):
    for O in complex_orbits(lie_type, n):
        for T in tableaux_of(O):
            assert validate_tableau(T) == []
            assert complexify(T) == O
            assert validate_complex(complexify(T)) == []


def test_column_data_and_stabilizers():
    assert column_data((3, 1, 1)) == (3, 1, False)
    assert column_data((2, 2)) == (2, 2, True)
    T = make_tableau(1, [(3, Orth(1, 0)), (2, Symp(2)), (1, Orth(0, 0))])
    assert stabilizer_factors(T) == ["O(1,0)", "Sp_2(R)"]


def test_worked_examples():
    T = make_tableau(1, [(3, Orth(1, 0)), (1, Orth(1, 1))])
    assert validate_tableau(T) == [] and total_signature(T) == (3, 2)
    assert complexify(T) == ComplexOrbit(ORTH, (3, 1, 1))
    assert stabilizer_factors(T) == ["O(1,0)", "O(1,1)"]
    assert validate_tableau(make_tableau(-1, [(2, Orth(1, 0))])) == []
    assert stabilizer_factors(make_tableau(-1, [(4, Orth(1, 0))])) == ["O(1,0)"]
    for p, q in [(0, 0), (2, 1), (3, 3)]:
        zero = make_tableau(1, [(1, Orth(p, q))])
        assert total_signature(zero) == (p, q)
        assert stabilizer_factors(zero) == ([f"O({p},{q})"] if p + q else [])
    assert validate_complex(ComplexOrbit(SYMP, (2, 2))) == []
    assert dominance_leq((2, 2), (4,)) and not dominance_leq((4,), (2, 2))
    assert dominance_leq((2, 2), (3, 1)) and not dominance_leq((3, 1), (2, 2))
    assert [O.parts for O in complex_orbits(SYMP, 2)] == [(2,), (1, 1)]
    assert [O.parts for O in complex_orbits(ORTH, 3)] == [(3,), (1, 1, 1)]
    assert list(enumerate_tableaux(1, (1, 1))) == [make_tableau(1, [(1, Orth(1, 1))])]
    assert column_data((4,)) == (1, 1, True)
