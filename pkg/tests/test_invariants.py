from __future__ import annotations

from fractions import Fraction


from factorlab.invariants import (EXACT, Context, catenary_degree, catenary_upper_bound, delta_bounds,
                                  delta_min_witness, delta_set_scan, elasticity, invariant_report, nu,
                                  tame_degree, tame_wrt)
from factorlab.fibers import fiber, length_set
from factorlab.monoid import new_numerical


def test_two_three(m23):
    assert nu(m23) == 3
    assert catenary_degree(m23) == 3 and catenary_upper_bound(m23) == 3
    assert elasticity(m23) == Fraction(3, 2)
    assert delta_bounds(m23) == (1, 1)
    assert delta_set_scan(m23, 20) == [1]
    assert tame_wrt(m23, 0) == tame_wrt(m23, 1) == tame_degree(m23) == 3


def test_two_four(m24):
    assert nu(m24) == 2
    assert catenary_degree(m24) == 2 and catenary_upper_bound(m24) == 2
    assert elasticity(m24) == 2
    assert delta_bounds(m24) == (1, 1)
    assert delta_set_scan(m24, 16) == [1]
    assert tame_degree(m24) == 2


def test_free(free2):
    assert nu(free2) == catenary_degree(free2) == 0
    assert catenary_upper_bound(free2) == 1
    assert elasticity(free2) == 1
    assert delta_bounds(free2) == (None, 0)
    assert delta_set_scan(free2, 10) == []
    assert tame_degree(free2) == 0
    assert delta_min_witness(free2) is None


def test_six_nine_twenty():
    M = new_numerical([6, 9, 20])
    r = invariant_report(M, scan_bound=60)
    assert (r.catenary, r.mu, r.nu) == (7, 7, 7)
    assert r.elasticity == Fraction(10, 3)
    assert r.tame == 10 and r.tame_per_atom == {"6": 7, "9": 7, "20": 10}
    assert r.betti == [18, 60, 72, 126, 180]
    assert r.delta_scan == [1, 4]
    assert r.exactness["delta_scan"] == "lower-bound-up-to-60"
    assert r.exactness["catenary"] == EXACT


def test_delta_witness_reaches_gcd():
    # small elements only show deltas >= 2 here; the witness exhibits delta 1
    M = new_numerical([3, 20, 28])
    w = delta_min_witness(M)
    assert min(delta_set_scan(M, 168)) > 1
    ls = length_set(fiber(M, w.element)).lengths
    assert 1 in {b - a for a, b in zip(ls, ls[1:])}
    assert M.evaluate(w.x) == M.evaluate(w.y) == w.element


def test_context_reuse():
    ctx = Context(new_numerical([5, 7, 9]))
    assert catenary_degree(ctx) == nu(ctx)
    assert invariant_report(ctx.M, ctx=ctx).catenary == catenary_degree(ctx)


def test_report_check_on_family(family):
    for M in family[:15]:
        r = invariant_report(M)
        assert r.catenary <= r.catenary_upper_bound
        assert r.delta_min is None or r.delta_max_bound % r.delta_min == 0
