import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetacorr.formed_spaces import (
    COMPLEX,
    NONARCH,
    NONTRIV,
    REAL,
    SYMP,
    TRIV,
    FamilyMismatch,
    FormedSpace,
    WittTower,
    adjacent,
    anisotropic_kernel_dim,
    complex_quadratic,
    difference_witt_index,
    discriminant_alpha,
    enumerate_towers,
    hilbert_symbol_real,
    nonarch,
    quasi_split,
    real,
    real_tower,
    space_at,
    symplectic,
    tower_of,
    witt_index,
)


def test_kernel_table():
    assert {anisotropic_kernel_dim(0, TRIV, s) for s in "+-"} == {0, 4}
    assert [anisotropic_kernel_dim(0, NONTRIV, s) for s in "+-"] == [2, 2]
    for chi in (TRIV, NONTRIV):
        assert [anisotropic_kernel_dim(1, chi, s) for s in "+-"] == [1, 3]
    with pytest.raises(ValueError):
        anisotropic_kernel_dim(2, TRIV, "+")


def test_real_space_basics():
    V = real(2, 1)
    assert V.dim == 3 and witt_index(V) == 1
    assert tower_of(V) == real_tower(1)
    assert V.negated() == real(1, 2)
    assert quasi_split(V)
    assert not quasi_split(real(4, 0))


def test_symplectic_needs_even_dim():
    with pytest.raises(ValueError):
        symplectic(3)
    assert witt_index(symplectic(6)) == 3


def test_complex_and_nonarch_spaces():
    assert witt_index(complex_quadratic(5)) == 2
    assert tower_of(complex_quadratic(5)) == WittTower(COMPLEX, 1)
    V = nonarch(0, TRIV, "-", 2)
    assert V.dim == 4 + 4 and witt_index(V) == 2


@given(st.integers(0, 50), st.integers(0, 50))
def test_real_json_round_trip(p, q):
    V = real(p, q)
    assert FormedSpace.from_json(V.to_json()) == V


@given(st.integers(0, 1), st.sampled_from([TRIV, NONTRIV]), st.sampled_from("+-"), st.integers(0, 50))
def test_nonarch_json_round_trip(eps, chi, sign, r):
    V = nonarch(eps, chi, sign, r)
    assert FormedSpace.from_json(V.to_json()) == V
    assert tower_of(space_at(tower_of(V), r)) == tower_of(V)


@given(st.integers(0, 25))
def test_symplectic_json_round_trip(n):
    V = symplectic(2 * n)
    assert FormedSpace.from_json(V.to_json()) == V


def test_hilbert_symbol_and_alpha():
    assert hilbert_symbol_real(-1, -1) == -1
    assert hilbert_symbol_real(-1, 3) == 1
    # chi_alpha is trivial exactly for alpha = 0, 1.
    for p, q in itertools.product(range(6), repeat=2):
        d = discriminant_alpha(real(p, q))
        assert d.alpha == (p - q) % 4
        assert d.trivial == (d.alpha in (0, 1))


def test_tower_counts():
    assert enumerate_towers(NONARCH, 1, NONTRIV).count == 2
    assert enumerate_towers(COMPLEX, 1).count == 1
    assert enumerate_towers(REAL, 1, 3).count == math.inf
    with pytest.raises(ValueError):
        enumerate_towers(REAL, 0, 1)


def test_real_family_members():
    fam = enumerate_towers(REAL, 0, 2)
    assert [t.k for t in fam.towers(6)] == [-6, -2, 2, 6]
    it = fam.iter_towers()
    assert [next(it).k for _ in range(4)] == [-2, 2, -6, 6]


def test_tower_labels():
    assert real_tower(-2).label() == "t(-2)"
    assert WittTower(COMPLEX, 1).label() == "t_1"
    assert WittTower(NONARCH, 0, chi=TRIV, sign="-").label() == "t-"


def _brute_witt_index_of_difference(V1, V2):
    """Largest r such that V1 + V2^- contains the split space of rank r."""
    p, q = V1.p + V2.q, V1.q + V2.p
    return max(r for r in range(0, p + q + 1) if r <= p and r <= q)


def test_same_tower_brute_force():
    spaces = [real(p, q) for p in range(9) for q in range(9)]
    for V1, V2 in itertools.product(spaces, repeat=2):
        d = difference_witt_index(V1, V2)
        assert d.index == _brute_witt_index_of_difference(V1, V2)
        # Same tower exactly when V1 + V2^- is split.
        assert d.same_tower == (2 * d.index == V1.dim + V2.dim)
        assert d.same_family == ((V1.p - V1.q) % 4 == (V2.p - V2.q) % 4)


@given(st.integers(-12, 12), st.integers(-12, 12))
def test_adjacency_symmetric(k, l):
    t, u = real_tower(k), real_tower(l)
    if t.family != u.family:
        with pytest.raises(FamilyMismatch):
            adjacent(t, u)
        return
    assert adjacent(t, u) == adjacent(u, t)
    assert adjacent(t, u) == (abs(k - l) == 4)


def test_self_not_adjacent():
    assert not adjacent(real_tower(2), real_tower(2))
    a, b = enumerate_towers(NONARCH, 0, TRIV).towers()
    assert adjacent(a, b) and not adjacent(a, a)


@settings(max_examples=200)
@given(st.integers(0, 20), st.integers(0, 20))
def test_quasi_split_monotone_in_rank(p, q):
    # Adding a hyperbolic plane preserves quasi-splitness.
    if quasi_split(real(p, q)):
        assert quasi_split(real(p + 1, q + 1))


def test_space_at_walks_tower():
    t = real_tower(-3)
    assert [space_at(t, r) for r in range(3)] == [real(0, 3), real(1, 4), real(2, 5)]
    assert t.dims(9) == [3, 5, 7, 9]
    assert t.on_progression(7) and not t.on_progression(6) and not t.on_progression(1)


def test_bad_inputs():
    with pytest.raises(ValueError):
        FormedSpace(field="Q")
    with pytest.raises(ValueError):
        real(-1, 0)
    with pytest.raises(ValueError):
        tower_of(symplectic(2))
    with pytest.raises(ValueError):
        FormedSpace(kind=SYMP, n_dim=1)


def test_worked_examples():
    assert witt_index(real(3, 1)) == 1 and witt_index(real(0, 0)) == 0
    V = nonarch(0, NONTRIV, "-", 2)
    assert witt_index(nonarch(0, TRIV, "-", 2)) == 2 and nonarch(0, TRIV, "-", 2).dim == 8
    assert V.dim == 6
    d = discriminant_alpha(real(3, 1))
    assert (d.alpha, d.character) == (2, "sign")
    assert (discriminant_alpha(real(0, 0)).alpha, discriminant_alpha(real(0, 0)).character) == (0, "trivial")
    assert (discriminant_alpha(real(2, 5)).alpha, discriminant_alpha(real(2, 5)).character) == (1, "trivial")
    assert tower_of(real(4, 2)) == real_tower(2)
    assert space_at(real_tower(-2), 1) == real(1, 3)
    assert space_at(WittTower(NONARCH, 1, chi=TRIV, sign="-"), 0).dim == 3


def test_adjacency_examples():
    assert adjacent(real_tower(2), real_tower(-2))
    assert adjacent(real_tower(2), real_tower(6))
    assert not adjacent(real_tower(2), real_tower(10))


def test_quasi_split_examples():
    for n in range(6):
        assert quasi_split(real(n + 2, n))
    assert not quasi_split(real(4, 0))
    assert quasi_split(real(1, 1))


def test_difference_index_examples():
    d = difference_witt_index(real(3, 1), real(1, 3))
    assert d.index == 2 and d.attains_bound and not d.same_tower
    d = difference_witt_index(real(2, 0), real(2, 0))
    assert d.index == 2 and d.same_tower
    d = difference_witt_index(real(6, 0), real(1, 1))
    assert d.index == 1 and not d.attains_bound


def _all_towers(kmax=9):
    ts = [real_tower(k) for k in range(-kmax, kmax + 1)]
    ts += [WittTower(COMPLEX, e) for e in (0, 1)]
    ts += [t for e in (0, 1) for c in (TRIV, NONTRIV) for t in enumerate_towers(NONARCH, e, c).towers()]
    return ts


@pytest.mark.parametrize("t", _all_towers(), ids=lambda t: t.label() + t.field)
def test_tower_round_trip_and_quasi_split_monotone(t):
    base = witt_index(space_at(t, 0))
    seen_qs = False
    for r in range(51):
        V = space_at(t, r)
        assert tower_of(V) == t
        assert witt_index(V) == r + base
        qs = quasi_split(V)
        assert qs or not seen_qs
        seen_qs = seen_qs or qs
