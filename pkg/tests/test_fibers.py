from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_fiber
from factorlab.errors import EmptyTargetSet, FiberCapExceeded, NotInMonoid
from factorlab.fibers import (catenary_of, distance, distance_matrix, distance_to_set, elasticity_of, fiber,
                              length_set, mu_of, r_classes, tame_of)
from factorlab.monoid import new_affine, new_numerical
from factorlab.oracle import catenary_by_threshold


def test_fiber_examples(m23):
    assert fiber(m23, 6).factorizations == ((0, 2), (3, 0))
    assert fiber(m23, 0).factorizations == ((0, 0),)
    assert fiber(m23, 7).factorizations == ((2, 1),)
    with pytest.raises(NotInMonoid):
        fiber(m23, 1)


def test_fiber_cap(m23):
    with pytest.raises(FiberCapExceeded):
        fiber(m23, 60, cap=3)


def test_length_sets(m23):
    assert length_set(fiber(m23, 6)) == length_set(fiber(m23, 6))
    ls = length_set(fiber(m23, 6))
    assert ls.lengths == (2, 3) and ls.deltas == (1,)
    ls0 = length_set(fiber(m23, 0))
    assert ls0.lengths == (0,) and ls0.deltas == ()
    ls12 = length_set(fiber(m23, 12))
    assert ls12.lengths == (4, 5, 6) and ls12.deltas == (1,)


def test_elasticity_examples(m23):
    assert elasticity_of(fiber(m23, 6)) == Fraction(3, 2)
    assert elasticity_of(fiber(m23, 0)) == 1
    assert elasticity_of(fiber(m23, 7)) == 1


def test_distance_examples():
    assert distance((3, 0), (0, 2)) == 3
    assert distance((4, 1), (4, 1)) == 0
    assert distance((6, 0), (3, 2)) == 3


def test_catenary_examples(m23):
    assert catenary_of(fiber(m23, 6)) == 3
    assert catenary_of(fiber(m23, 7)) == 0
    assert catenary_of(fiber(m23, 12)) == 3


def test_r_classes_and_mu(m23):
    rc = r_classes(fiber(m23, 6))
    assert rc.classes == (((0, 2),), ((3, 0),))
    assert mu_of(fiber(m23, 6)) == 3
    assert len(r_classes(fiber(m23, 7))) == 1
    assert len(r_classes(fiber(m23, 12))) == 1
    assert mu_of(fiber(m23, 12)) == 4
    assert mu_of(fiber(m23, 9)) == 3  # (0,3) and (3,1) share atom 3


def test_distance_to_set():
    assert distance_to_set((3, 0), [(3, 0)]) == 0
    assert distance_to_set((0, 2), [(3, 0)]) == 3
    assert distance_to_set((6, 0), [(3, 2), (0, 4)]) == 3
    with pytest.raises(EmptyTargetSet):
        distance_to_set((1, 0), [])


def test_tame_of(m23):
    assert tame_of(m23, 6, (1, 0)) == 3
    assert tame_of(m23, 7, (0, 1)) == 0


@pytest.mark.parametrize("gens", [[2, 3], [6, 9, 20], [5, 7, 11, 13], [4, 6, 9]])
def test_fiber_matches_brute_force_numerical(gens):
    M = new_numerical(gens)
    for a in range(0, 70):
        try:
            fast = list(fiber(M, a).factorizations)
        except NotInMonoid:
            fast = []
        assert fast == brute_fiber(M.generators, (a,))


def test_fiber_matches_brute_force_affine():
    M = new_affine([[4, 0], [4, 1], [5, 1], [5, 3], [1, 2]])
    for x in range(0, 14):
        for y in range(0, 8):
            try:
                fast = list(fiber(M, (x, y)).factorizations)
            except NotInMonoid:
                fast = []
            assert fast == brute_fiber(M.generators, (x, y))


vec = st.lists(st.integers(0, 6), min_size=3, max_size=3).map(tuple)


@settings(max_examples=200, deadline=None)
@given(vec, vec, vec)
def test_distance_is_a_metric(x, y, z):
    assert distance(x, y) == distance(y, x) >= 0
    assert (distance(x, y) == 0) == (x == y)
    assert distance(x, z) <= distance(x, y) + distance(y, z)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 20), min_size=2, max_size=4, unique=True), st.integers(0, 80))
def test_fiber_invariants_properties(gens, a):
    M = new_numerical(gens)
    try:
        f = fiber(M, a)
    except NotInMonoid:
        return
    D = distance_matrix(f)
    assert (D == D.T).all() and (D.diagonal() == 0).all()
    assert catenary_of(f) == catenary_by_threshold(D)
    if len(f) > 1:
        assert catenary_of(f) >= 2
    rc = r_classes(f)
    assert sorted(z for c in rc.classes for z in c) == sorted(f.factorizations)
    if len(rc) >= 2:
        assert catenary_of(f) >= mu_of(f)
    ls = length_set(f)
    assert elasticity_of(f) == (Fraction(ls.lengths[-1], ls.lengths[0]) if ls.lengths[0] else 1)
