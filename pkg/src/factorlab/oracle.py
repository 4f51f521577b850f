"""Brute-force invariants straight from the definitions, for cross-checking.

Nothing here touches the relations engine or the fast paths;
instead each oracle walks every element up to a grading bound, enumerates its fiber
and evaluates the definition. Catenary degrees use a threshold search with
graph connectivity instead of the spanning-tree route of the fast path.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import BoundTooSmall
from .fibers import distance_matrix, fiber, r_classes
from .monoid import AffineMonoid, KernelLattice, elements_up_to, hermite_rows


def _connected_at(D: np.ndarray, n: int) -> bool:
    """Breadth-first search on the graph of pairs at distance <= n."""
    adj = D <= n
    reached = adj[0].copy()
    reached[0] = True
    frontier = np.flatnonzero(reached)
    while frontier.size:
        new = adj[frontier].any(axis=0) & ~reached
        reached |= new
        frontier = np.flatnonzero(new)
    return bool(reached.all())


def catenary_by_threshold(D: np.ndarray) -> int:
    """Least N whose N-chains connect the whole fiber."""
    if len(D) <= 1:
        return 0
    levels = np.unique(D)
    lo, hi = 0, len(levels) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _connected_at(D, int(levels[mid])):
            hi = mid
        else:
            lo = mid + 1
    return int(levels[lo])


@dataclass
class ElementRecord:
    element: tuple
    size: int
    catenary: int
    classes: int
    mu: int
    min_length: int
    max_length: int
    deltas: tuple
    tame: dict  # atom index -> t(a, u), only atoms dividing a


def scan(M: AffineMonoid, bound: int):
    """Per-element definitional data for every element of grading <= bound."""
    for a in elements_up_to(M, bound):
        f = fiber(M, a)
        Z = f.array()
        D = distance_matrix(Z)
        lengths = sorted(set(Z.sum(axis=1).tolist()))
        rc = r_classes(f)
        tame = {}
        for u in range(M.rank):
            holders = Z[:, u] > 0
            if holders.any():
                tame[u] = int(D[:, holders].min(axis=1).max())
        yield ElementRecord(
            element=a,
            size=len(f),
            catenary=catenary_by_threshold(D),
            classes=len(rc),
            mu=max(rc.min_lengths),
            min_length=lengths[0],
            max_length=lengths[-1],
            deltas=tuple(b - a_ for a_, b in zip(lengths, lengths[1:])),
            tame=tame,
        )


def _elasticity(rec: ElementRecord) -> Fraction:
    return Fraction(1) if rec.min_length == 0 else Fraction(rec.max_length, rec.min_length)


def oracle_catenary(M, bound) -> int:
    return max((r.catenary for r in scan(M, bound)), default=0)


def oracle_mu(M, bound) -> int:
    return max((r.mu for r in scan(M, bound) if r.classes >= 2), default=0)


def oracle_elasticity(M, bound) -> Fraction:
    return max(_elasticity(r) for r in scan(M, bound))


def oracle_delta(M, bound) -> list[int]:
    return sorted({d for r in scan(M, bound) for d in r.deltas})


def oracle_tame(M, bound, atom: int | None = None) -> int:
    best = 0
    for r in scan(M, bound):
        for u, t in r.tame.items():
            if atom is None or u == atom:
                best = max(best, t)
    return best


def lattice_points_in_box(L: KernelLattice, box: int) -> np.ndarray:
    """Every lattice vector with entries in [-box, box].

    In a Hermite basis the entry of v at the i-th pivot column depends only on
    the first i coefficients, so choosing the pivot entries inside the box
    fixes the coefficients by back substitution (when divisible).
    """
    k = L.ambient
    if not L.basis:
        return np.zeros((0, k), dtype=np.int64)
    H = hermite_rows(L.basis)
    pivots = [next(j for j, x in enumerate(r) if x) for r in H]
    out = []
    for targets in product(range(-box, box + 1), repeat=len(H)):
        v = [0] * k
        for row, p, t in zip(H, pivots, targets):
            need = t - v[p]
            if need % row[p]:
                break
            c = need // row[p]
            v = [a + c * b for a, b in zip(v, row)]
        else:
            if all(abs(x) <= box for x in v):
                out.append(v)
    return np.array(out, dtype=np.int64).reshape(-1, k)


def oracle_graver(L: KernelLattice, box: int) -> set[tuple[int, ...]]:
    """Primitive lattice vectors inside the box, by pairwise comparison."""
    V = lattice_points_in_box(L, box)
    V = V[np.abs(V).sum(axis=1) > 0]
    out = set()
    absV = np.abs(V)
    for i, v in enumerate(V):
        fits = (absV <= np.abs(v)).all(axis=1) & ((V * v) >= 0).all(axis=1)
        fits[i] = False
        if not fits.any():
            out.add(tuple(int(x) for x in v))
    return out


@dataclass
class Verdict:
    status: str  # pass | fail | inconclusive
    oracle: object = None
    fast: object = None
    reason: str = ""


@dataclass
class OracleReport:
    generators: list
    bound: int
    betti_bound: int
    values: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.status != "fail" for v in self.verdicts.values())


def _cmp(oracle, fast) -> Verdict:
    return Verdict("pass" if oracle == fast else "fail", oracle, fast)


def default_bound(M: AffineMonoid, betti) -> int:
    return max((sum(b) for b in betti), default=0) + max(sum(g) for g in M.generators)


def cross_check(M: AffineMonoid, bound: int | None = None) -> OracleReport:
    """Compare every fast-path invariant with its definitional oracle."""
    from . import invariants as inv

    ctx = inv.Context(M)
    betti_bound = max((sum(b) for b in ctx.betti), default=0)
    if bound is None:
        bound = default_bound(M, ctx.betti)
    if bound < betti_bound:
        raise BoundTooSmall(bound, betti_bound)

    records = list(scan(M, bound))
    o_cat = max((r.catenary for r in records), default=0)
    o_mu = max((r.mu for r in records if r.classes >= 2), default=0)
    o_rho = max(_elasticity(r) for r in records)
    o_delta = {d for r in records for d in r.deltas}
    # small bounds can miss min Delta(H); extend the length scan far enough
    # to reach an element known to realise it
    witness = inv.delta_min_witness(ctx)
    delta_bound = max(bound, sum(witness.element)) if witness else bound
    for a in elements_up_to(M, delta_bound):
        if sum(a) > bound:
            ls = sorted(set(fiber(M, a).lengths()))
            o_delta.update(b - a_ for a_, b in zip(ls, ls[1:]))
    o_delta = sorted(o_delta)
    o_tame = {u: max((r.tame.get(u, 0) for r in records), default=0) for u in range(M.rank)}
    prop34 = [r.element for r in records if r.classes >= 2 and r.catenary < r.mu]

    c = inv.catenary_degree(ctx)
    nu = inv.nu(ctx)
    rho = inv.elasticity(ctx)
    dmin, dmax = inv.delta_bounds(ctx)
    tame = {u: inv.tame_wrt(ctx, u) for u in range(M.rank)}

    rep = OracleReport([list(g) for g in M.generators], bound, betti_bound)
    rep.values = {
        "oracle_catenary": o_cat, "oracle_mu": o_mu, "nu": nu, "catenary_degree": c,
        "oracle_elasticity": o_rho, "elasticity": rho,
        "oracle_delta": o_delta, "delta_scan_bound": delta_bound, "delta_min": dmin, "delta_max_bound": dmax,
        "oracle_tame": max(o_tame.values(), default=0), "tame_degree": max(tame.values(), default=0),
    }
    v = rep.verdicts
    v["catenary=mu"] = _cmp(o_cat, o_mu)
    v["catenary=nu"] = _cmp(o_cat, nu)
    v["nu=catenary_degree"] = _cmp(nu, c)
    v["mu_ge_c"] = Verdict("pass" if o_mu >= o_cat else "fail", o_mu, o_cat)
    v["per_element_c_ge_mu"] = Verdict(
        "fail" if prop34 else "pass", len(prop34), 0,
        f"violations at {prop34[:5]}" if prop34 else "")
    # rho(H) is attained at the value of an atom of M_H, all of which are <= betti_bound
    v["elasticity"] = _cmp(o_rho, rho)
    if o_delta:
        ok = min(o_delta) == dmin and max(o_delta) <= dmax and all(d % dmin == 0 for d in o_delta)
        v["delta"] = Verdict("pass" if ok else "fail", o_delta, [dmin, dmax])
    elif dmin is None:
        v["delta"] = Verdict("pass", o_delta, [dmin, dmax])
    else:
        v["delta"] = Verdict("inconclusive", o_delta, [dmin, dmax], "no delta observed within bound")
    v["catenary_upper_bound"] = Verdict(
        "pass" if c <= inv.catenary_upper_bound(ctx) else "fail", c, inv.catenary_upper_bound(ctx))
    for u in range(M.rank):
        v[f"tame[{M.label(u)}]"] = _cmp(o_tame[u], tame[u])
    v["tame"] = _cmp(rep.values["oracle_tame"], rep.values["tame_degree"])
    return rep
