"""Factorization fibers and the per-element invariants computed on them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import caps
from .errors import EmptyTargetSet, FiberCapExceeded, NotInMonoid
from .monoid import AffineMonoid, Vector

Factorization = tuple[int, ...]


@dataclass(frozen=True)
class Fiber:
    element: Vector
    factorizations: tuple[Factorization, ...]

    def __len__(self):
        return len(self.factorizations)

    def __iter__(self):
        return iter(self.factorizations)

    def array(self) -> np.ndarray:
        return np.array(self.factorizations, dtype=np.int64).reshape(len(self), -1)

    def lengths(self) -> list[int]:
        return [sum(z) for z in self.factorizations]


@dataclass(frozen=True)
class LengthSet:
    lengths: tuple[int, ...]
    deltas: tuple[int, ...]


@dataclass(frozen=True)
class RClassDecomposition:
    classes: tuple[tuple[Factorization, ...], ...]
    min_lengths: tuple[int, ...]

    def __len__(self):
        return len(self.classes)


def _two_generator_solver(g: int, h: int):
    """Returns r -> all (x, y) in N^2 with g*x + h*y = r, x ascending."""
    d = gcd(g, h)
    g1, h1 = g // d, h // d
    inv = pow(g1, -1, h1) if h1 > 1 else 0

    def solve(r: int):
        if r % d:
            return ()
        x0 = (r // d * inv) % h1 if h1 > 1 else 0
        return [(x, (r - g * x) // h) for x in range(x0, r // g + 1, h1)]

    return solve


def _numerical_walk(gens, a: int, out: list, cap: int):
    k = len(gens)
    if k == 1:
        if a % gens[0] == 0:
            out.append((a // gens[0],))
        return
    exps = [0] * (k - 2)
    solve = _two_generator_solver(gens[-2], gens[-1])

    def walk(i: int, r: int):
        if i == k - 2:
            prefix = tuple(exps)
            for x, y in solve(r):
                out.append(prefix + (x, y))
            if len(out) > cap:
                raise FiberCapExceeded(f"fiber of {a} exceeds {cap} factorizations")
            return
        gi = gens[i]
        for c in range(r // gi + 1):
            exps[i] = c
            walk(i + 1, r - c * gi)
        exps[i] = 0

    walk(0, a)


def fiber(M: AffineMonoid, a, cap: int | None = None) -> Fiber:
    """Z(a), enumerated depth-first.

    Numerical monoids solve the last two exponents in closed form; in higher
    dimension dead branches are cut by the monoid's representability memo.
    """
    a = M.element(a)
    cap = caps.cap("fiber") if cap is None else cap
    gens = M.generators
    k = len(gens)
    if not any(a):
        return Fiber(a, ((0,) * k,))
    out: list[Factorization] = []
    if M.is_numerical:
        _numerical_walk([g[0] for g in gens], a[0], out, cap)
        if not out:
            raise NotInMonoid(f"{a[0]} is not an element of {M}")
        out.sort()
        return Fiber(a, tuple(out))

    if not M._representable(0, a):
        raise NotInMonoid(f"{a} is not an element of {M}")
    exps = [0] * k

    def walk(i: int, r: Vector):
        if i == k - 1:
            g = gens[i]
            j = next(t for t, x in enumerate(g) if x)
            exps[i] = r[j] // g[j]
            out.append(tuple(exps))
            if len(out) > cap:
                raise FiberCapExceeded(f"fiber of {a} exceeds {cap} factorizations")
            return
        g = gens[i]
        m = min(rj // gj for rj, gj in zip(r, g) if gj)
        for c in range(m + 1):
            rem = tuple(rj - c * gj for rj, gj in zip(r, g))
            if M._representable(i + 1, rem):
                exps[i] = c
                walk(i + 1, rem)
        exps[i] = 0

    walk(0, a)
    out.sort()
    return Fiber(a, tuple(out))


def length_set(f: Fiber) -> LengthSet:
    ls = sorted(set(f.lengths()))
    return LengthSet(tuple(ls), tuple(sorted({b - a for a, b in zip(ls, ls[1:])})))


def elasticity_of(f: Fiber) -> Fraction:
    ls = f.lengths()
    lo, hi = min(ls), max(ls)
    if lo == 0:
        return Fraction(1)  # 0/0 = 1
    return Fraction(hi, lo)


def distance(z: Sequence[int], w: Sequence[int]) -> int:
    common = sum(min(x, y) for x, y in zip(z, w))
    return max(sum(z), sum(w)) - common


def distance_matrix(f: Fiber | np.ndarray) -> np.ndarray:
    """Pairwise factorization distances of a fiber as an F x F array."""
    Z = f.array() if isinstance(f, Fiber) else f
    n = len(Z)
    common = np.zeros((n, n), dtype=np.int64)
    for col in Z.T:
        common += np.minimum(col[:, None], col[None, :])
    lengths = Z.sum(axis=1)
    return np.maximum(lengths[:, None], lengths[None, :]) - common


def _bottleneck_tree_max(D: np.ndarray) -> int:
    # Prim on the dense graph: every MST is a minimum bottleneck spanning tree
    n = len(D)
    if n <= 1:
        return 0
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = D[0].copy()
    worst = 0
    for _ in range(n - 1):
        masked = np.where(in_tree, np.iinfo(np.int64).max, best)
        j = int(masked.argmin())
        worst = max(worst, int(masked[j]))
        in_tree[j] = True
        np.minimum(best, D[j], out=best)
    return worst


def catenary_of(f: Fiber) -> int:
    return _bottleneck_tree_max(distance_matrix(f))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def r_classes(f: Fiber) -> RClassDecomposition:
    """Partition Z(a) into classes of factorizations chained by shared atoms."""
    zs = f.factorizations
    uf = _UnionFind(len(zs))
    # two factorizations share an atom iff both contain some atom index i,
    # so linking every holder of atom i to the first holder suffices
    first_holder: dict[int, int] = {}
    for n, z in enumerate(zs):
        for i, c in enumerate(z):
            if c:
                if i in first_holder:
                    uf.union(first_holder[i], n)
                else:
                    first_holder[i] = n
    groups: dict[int, list[Factorization]] = {}
    for n, z in enumerate(zs):
        groups.setdefault(uf.find(n), []).append(z)
    classes = sorted((tuple(sorted(g)) for g in groups.values()))
    return RClassDecomposition(tuple(classes), tuple(min(sum(z) for z in c) for c in classes))


def mu_of(f: Fiber) -> int:
    return max(r_classes(f).min_lengths)


def distance_to_set(z: Sequence[int], Y: Iterable[Sequence[int]]) -> int:
    Y = list(Y)
    if not Y:
        raise EmptyTargetSet("distance to an empty set of factorizations is undefined")
    return min(distance(z, y) for y in Y)


def divides(x: Sequence[int], z: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(x, z))


def tame_of(M: AffineMonoid, a, x: Sequence[int]) -> int:
    """t(a, x): worst distance from a factorization of a to one divisible by x."""
    f = fiber(M, a)
    targets = [z for z in f if divides(x, z)]
    if not targets:
        return 0
    return max(distance_to_set(z, targets) for z in f)


def tame_from_matrix(Z: np.ndarray, D: np.ndarray, atom: int) -> int:
    """t(a, u) for a single atom using a precomputed distance matrix."""
    mask = Z[:, atom] > 0
    if not mask.any():
        return 0
    return int(D[:, mask].min(axis=1).max())
