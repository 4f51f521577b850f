"""Global invariants assembled from the atoms of the monoid of relations.

Catenary degree comes from Betti-element fibers (c = mu = nu), elasticity and
delta data from the atom lengths, tame degree from the finitely many elements
that carry an atom of M_H. Only ``delta_scan`` is a bounded computation; the
report's exactness flags say so.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import AssertionFailed
from .fibers import distance_matrix, fiber, length_set, mu_of, r_classes, tame_from_matrix
from .monoid import AffineMonoid, Vector, elements_up_to, grlex_key
from .relations import RelationAtoms, betti_elements, delta_tilde, relation_atoms

EXACT = "exact-by-theorem"


def lower_bound_flag(bound: int) -> str:
    return f"lower-bound-up-to-{bound}"


class Context:
    """Caches the atoms of M_H and fibers of one monoid across invariant calls."""

    def __init__(self, M: AffineMonoid, atoms: RelationAtoms | None = None):
        self.M = M
        self.atoms = relation_atoms(M) if atoms is None else atoms
        self.betti = betti_elements(M, self.atoms)
        self._fibers: dict[Vector, object] = {}

    def fiber(self, a):
        a = self.M.element(a)
        if a not in self._fibers:
            self._fibers[a] = fiber(self.M, a)
        return self._fibers[a]

    def atom_carriers(self) -> list[Vector]:
        """{a : A_a(M_H) nonempty}: generator values plus Betti elements."""
        vals = set(self.betti) | set(self.M.generators)
        return sorted(vals, key=grlex_key)


def _ctx(M_or_ctx) -> Context:
    return M_or_ctx if isinstance(M_or_ctx, Context) else Context(M_or_ctx)


def nu(M) -> int:
    ctx = _ctx(M)
    best = 0
    for b in ctx.betti:
        f = ctx.fiber(b)
        if len(r_classes(f)) >= 2:
            best = max(best, mu_of(f))
    return best


def catenary_upper_bound(M) -> int:
    ctx = _ctx(M)
    return max(max(sum(p.x), sum(p.y)) for p in ctx.atoms.all())


def catenary_degree(M) -> int:
    ctx = _ctx(M)
    c = nu(ctx)
    bound = catenary_upper_bound(ctx)
    if c > bound:
        raise AssertionFailed(f"c(H) = {c} exceeds the atom length bound {bound}")
    return c


def elasticity(M) -> Fraction:
    ctx = _ctx(M)
    return max(Fraction(sum(p.x), sum(p.y)) for p in ctx.atoms.all())


def delta_bounds(M) -> tuple[int | None, int]:
    ctx = _ctx(M)
    nonzero = [d for d in delta_tilde(ctx.atoms) if d]
    if not nonzero:
        return None, 0
    g = 0
    for d in nonzero:
        g = gcd(g, d)
    return g, max(nonzero)


@dataclass(frozen=True)
class DeltaWitness:
    element: Vector
    x: tuple
    y: tuple


def delta_min_witness(M) -> DeltaWitness | None:
    """An element whose length set has two lengths exactly min Delta(H) apart.

    Combines atoms of M_H (either orientation) so that the length differences
    add up to their gcd d; every length difference in M_H is a multiple of d,
    so the two lengths of the combined pair are adjacent. Among such
    combinations the one of least grading is returned (shortest path over
    partial sums, which can always be ordered to stay inside [-R, R + d]).
    """
    ctx = _ctx(M)
    d, _ = delta_bounds(ctx)
    if d is None:
        return None
    steps = []
    for p in ctx.atoms.offdiagonal:
        diff = sum(p.x) - sum(p.y)
        if diff:
            steps.append((diff, sum(ctx.M.evaluate(p.x)), p))
    R = max(abs(s[0]) for s in steps)
    lo, hi = -R, R + d
    dist = {0: 0}
    prev: dict[int, tuple[int, int]] = {}
    heap = [(0, 0)]
    while heap:
        cost, s = heapq.heappop(heap)
        if s == d:
            break
        if cost > dist[s]:
            continue
        for i, (diff, w, _) in enumerate(steps):
            t = s + diff
            if lo <= t <= hi and cost + w < dist.get(t, cost + w + 1):
                dist[t] = cost + w
                prev[t] = (s, i)
                heapq.heappush(heap, (cost + w, t))
    k = ctx.M.rank
    x, y = [0] * k, [0] * k
    s = d
    while s != 0:
        s, i = prev[s]
        p = steps[i][2]
        x = [a + b for a, b in zip(x, p.x)]
        y = [a + b for a, b in zip(y, p.y)]
    return DeltaWitness(ctx.M.evaluate(x), tuple(x), tuple(y))


def delta_set_scan(M, bound: int) -> list[int]:
    """Union of Delta(L(a)) over elements of grading <= bound.

    A lower bound for Delta(H): its minimum may exceed min Delta(H) when the
    bound is small (see ``delta_min_witness``).
    """
    ctx = _ctx(M)
    seen: set[int] = set()
    for a in elements_up_to(ctx.M, bound):
        seen.update(length_set(ctx.fiber(a)).deltas)
    dmin, dmax = delta_bounds(ctx)
    if seen:
        if dmin is None or any(d % dmin for d in seen):
            raise AssertionFailed(f"observed deltas {sorted(seen)} not all multiples of {dmin}")
        if max(seen) > dmax:
            raise AssertionFailed(f"observed delta {max(seen)} exceeds bound {dmax}")
    return sorted(seen)


def tame_wrt(M, u: int) -> int:
    """t(H, u) from the elements carrying an atom of M_H."""
    ctx = _ctx(M)
    g = ctx.M.generators[u]
    best = 0
    for a in ctx.atom_carriers():
        rest = tuple(x - y for x, y in zip(a, g))
        if any(x < 0 for x in rest) or not ctx.M._representable(0, rest):
            continue
        f = ctx.fiber(a)
        Z = f.array()
        best = max(best, tame_from_matrix(Z, distance_matrix(Z), u))
    return best


def tame_degree(M) -> int:
    ctx = _ctx(M)
    return max((tame_wrt(ctx, u) for u in range(ctx.M.rank)), default=0)


@dataclass
class InvariantReport:
    generators: list
    atoms_count: int
    betti: list
    catenary: int
    mu: int
    nu: int
    catenary_upper_bound: int
    elasticity: Fraction
    delta_min: int | None
    delta_max_bound: int
    delta_scan: list | None
    tame_per_atom: dict
    tame: int
    exactness: dict = field(default_factory=dict)

    def check(self):
        if not (self.catenary == self.mu == self.nu):
            raise AssertionFailed(f"c={self.catenary}, mu={self.mu}, nu={self.nu} differ")
        if self.catenary > self.catenary_upper_bound:
            raise AssertionFailed("catenary degree exceeds the atom length bound")


def invariant_report(M: AffineMonoid, scan_bound: int | None = None, ctx: Context | None = None) -> InvariantReport:
    ctx = ctx or Context(M)
    M = ctx.M
    c = catenary_degree(ctx)
    dmin, dmax = delta_bounds(ctx)
    tame_per = {M.label(u): tame_wrt(ctx, u) for u in range(M.rank)}
    exactness = {k: EXACT for k in (
        "catenary", "mu", "nu", "catenary_upper_bound", "elasticity",
        "delta_min", "delta_max_bound", "tame_per_atom", "tame")}
    scan = None
    if scan_bound is not None:
        scan = delta_set_scan(ctx, scan_bound)
        exactness["delta_scan"] = lower_bound_flag(scan_bound)
    report = InvariantReport(
        generators=[list(g) if not M.is_numerical else g[0] for g in M.generators],
        atoms_count=len(ctx.atoms.all()),
        betti=[list(b) if not M.is_numerical else b[0] for b in ctx.betti],
        catenary=c,
        # mu(H) = c(H) = nu(H); mu is reported through the same Betti computation
        mu=c,
        nu=c,
        catenary_upper_bound=catenary_upper_bound(ctx),
        elasticity=elasticity(ctx),
        delta_min=dmin,
        delta_max_bound=dmax,
        delta_scan=scan,
        tame_per_atom=tame_per,
        tame=max(tame_per.values(), default=0),
        exactness=exactness,
    )
    report.check()
    return report
