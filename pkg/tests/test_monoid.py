from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from factorlab.errors import DimensionMismatch, EmptyGenerators, InvalidInput, ZeroGenerator
from factorlab.monoid import (elements_up_to, hermite_rows, integer_rank, kernel_lattice, member,
                              minimal_generators, new_affine, new_numerical)


def test_numerical_construction():
    M = new_numerical([3, 2])
    assert M.generators == ((2,), (3,))
    assert M.minimal and M.is_numerical and str(M) == "<2, 3>"
    assert new_numerical([5]).minimal


def test_redundant_generator_kept_unless_minimized():
    M = new_numerical([2, 3, 4])
    assert not M.minimal and M.rank == 3
    assert new_numerical([2, 3, 4], minimize=True).generators == ((2,), (3,))
    assert minimal_generators(M).generators == ((2,), (3,))


def test_affine_construction():
    assert new_affine([[1, 0], [0, 1]]).minimal
    assert new_affine([[2], [3]]).generators == new_numerical([2, 3]).generators
    assert new_affine([[1, 1], [1, 0], [0, 1]]).minimal is False
    assert minimal_generators(new_affine([[1, 0], [0, 1], [1, 1]])).generators == ((0, 1), (1, 0))


@pytest.mark.parametrize("rows,exc", [
    ([], EmptyGenerators),
    ([[0, 0], [1, 0]], ZeroGenerator),
    ([[1, 0], [1]], DimensionMismatch),
    ([[-1, 2]], InvalidInput),
])
def test_bad_input(rows, exc):
    with pytest.raises(exc):
        new_affine(rows)


def test_membership():
    M = new_numerical([2, 3])
    assert not member(M, 1)
    assert member(M, 7) and member(M, 0)
    N = new_affine([[2, 0], [1, 1]])
    assert member(N, (3, 1)) and not member(N, (1, 0))


def test_elements_up_to():
    assert [a[0] for a in elements_up_to(new_numerical([2, 3]), 7)] == [0, 2, 3, 4, 5, 6, 7]
    got = elements_up_to(new_affine([[1, 0], [0, 1]]), 2)
    assert len(got) == 6


def test_kernel_examples():
    assert kernel_lattice(new_numerical([2, 3])).basis == ((3, -2),)
    assert kernel_lattice(new_affine([[1, 0], [0, 1]])).basis == ()
    assert kernel_lattice(new_numerical([2, 4])).basis == ((2, -1),)


def test_hermite_and_rank():
    assert integer_rank([(2, 4), (1, 2)]) == 1
    H = hermite_rows([(4, 6), (2, 3)])
    assert len(H) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 25), min_size=2, max_size=4, unique=True))
def test_kernel_is_kernel(gens):
    M = new_numerical(gens)
    L = kernel_lattice(M)
    assert len(L.basis) == M.rank - 1
    for v in L.basis:
        assert sum(c * g[0] for c, g in zip(v, M.generators)) == 0
