"""Atoms of the monoid of relations M_H.

An off-diagonal atom (x, y) of M_H has disjoint supports, so x - y is a
primitive (conformally minimal) vector of the kernel lattice and conversely
every primitive vector v gives the atom (v+, v-). The primitive vectors are
the Graver basis, computed here by a completion procedure.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from . import caps
from .errors import AssertionFailed, CompletionCapExceeded
from .fibers import Factorization
from .monoid import AffineMonoid, KernelLattice, Vector, grlex_key, integer_rank, kernel_lattice


def conformal_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    """u is sign-compatibly below v: u+ <= v+ and u- <= v-."""
    return all(a * b >= 0 and abs(a) <= abs(b) for a, b in zip(u, v))


def positive_part(v: Sequence[int]) -> Factorization:
    return tuple(max(x, 0) for x in v)


def negative_part(v: Sequence[int]) -> Factorization:
    return tuple(max(-x, 0) for x in v)


def _norm(v) -> int:
    return int(sum(abs(x) for x in v))


def _sign_normal(v: tuple[int, ...]) -> tuple[int, ...]:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def canonical_order(vectors):
    return sorted(vectors, key=lambda v: (_norm(v), tuple(-x for x in v)))


class _Working:
    """Growable set of representatives (one per +-pair) with a fast
    conformal-reducibility query against either sign."""

    def __init__(self, k: int, cap: int):
        self.k = k
        self.cap = cap
        self.rows = np.zeros((64, k), dtype=np.int64)
        self.n = 0

    def add(self, v):
        if self.n >= self.cap:
            raise CompletionCapExceeded(f"completion working set exceeded {self.cap} vectors")
        if self.n == len(self.rows):
            self.rows = np.vstack([self.rows, np.zeros_like(self.rows)])
        self.rows[self.n] = v
        self.n += 1

    def reducer(self, s: np.ndarray, skip: int = -1):
        """Index and sign of some stored +-g conformally below s, or None."""
        G = self.rows[: self.n]
        fits = (np.abs(G) <= np.abs(s)).all(axis=1)
        if skip >= 0:
            fits[skip] = False
        if not fits.any():
            return None
        idx = np.flatnonzero(fits)
        prod = G[idx] * s
        pos = (prod >= 0).all(axis=1)
        if pos.any():
            return int(idx[pos.argmax()]), 1
        neg = (prod <= 0).all(axis=1)
        if neg.any():
            return int(idx[neg.argmax()]), -1
        return None

    def normal_form(self, s: np.ndarray) -> np.ndarray:
        s = s.copy()
        while s.any():
            hit = self.reducer(s)
            if hit is None:
                break
            i, sign = hit
            s -= sign * self.rows[i]
        return s


def graver_basis(L: KernelLattice, cap: int | None = None) -> list[tuple[int, ...]]:
    """All primitive vectors of the lattice, closed under negation.

    Completion: start from the +- basis, form sums f+g and f-g of stored
    representatives, reduce each to normal form by conformal subtraction and
    keep nonzero remainders; once no critical pair yields anything new, drop
    the stored vectors that another stored vector reduces.
    """
    if not L.basis:
        return []
    cap = caps.cap("completion") if cap is None else cap
    k = L.ambient
    W = _Working(k, cap)
    heap: list = []

    def push_pairs(j: int):
        f = W.rows[j]
        for i in range(j):
            g = W.rows[i]
            prod = f * g
            # f+g reduces to 0 through f unless some coordinate cancels; same for f-g
            if (prod < 0).any():
                heapq.heappush(heap, (_norm(f + g), i, j, 1))
            if (prod > 0).any():
                heapq.heappush(heap, (_norm(f - g), i, j, -1))

    for b in L.basis:
        W.add(np.array(b, dtype=np.int64))
        push_pairs(W.n - 1)
    while heap:
        _, i, j, sign = heapq.heappop(heap)
        s = W.rows[j] + sign * W.rows[i]
        r = W.normal_form(s)
        if r.any():
            W.add(r)
            push_pairs(W.n - 1)

    G = W.rows[: W.n]
    keep = [v for t, v in enumerate(G) if W.reducer(v, skip=t) is None]
    reps = {_sign_normal(tuple(int(x) for x in v)) for v in keep}
    out = set(reps) | {tuple(-x for x in v) for v in reps}
    return canonical_order(out)


@dataclass(frozen=True)
class RelationPair:
    x: Factorization
    y: Factorization

    def swap(self) -> "RelationPair":
        return RelationPair(self.y, self.x)

    @property
    def delta(self) -> int:
        return abs(sum(self.x) - sum(self.y))

    def is_diagonal(self) -> bool:
        return self.x == self.y


@dataclass(frozen=True)
class RelationAtoms:
    monoid: AffineMonoid
    diagonal: tuple[RelationPair, ...]
    offdiagonal: tuple[RelationPair, ...]

    def all(self) -> tuple[RelationPair, ...]:
        return self.diagonal + self.offdiagonal


def _pair_key(p: RelationPair):
    return (sum(p.x) + sum(p.y), sum(p.x), tuple(-c for c in p.x), tuple(-c for c in p.y))


def _box(x: Sequence[int]):
    return product(*(range(c + 1) for c in x))


def is_irreducible_pair(M: AffineMonoid, x: Sequence[int], y: Sequence[int]) -> bool:
    """Definitional check: no relation pair (x', y') other than (0,0) and
    (x, y) itself lies componentwise below (x, y)."""
    x, y = tuple(x), tuple(y)
    right: dict[Vector, list[tuple[int, ...]]] = {}
    for w in _box(y):
        right.setdefault(M.evaluate(w), []).append(w)
    for w in _box(x):
        for w2 in right.get(M.evaluate(w), ()):
            if (any(w) or any(w2)) and (w != x or w2 != y):
                return False
    return True


def relation_atoms(M: AffineMonoid, graver: list | None = None, recheck: bool = True) -> RelationAtoms:
    k = M.rank
    diag = tuple(RelationPair(e, e) for e in (tuple(int(i == j) for j in range(k)) for i in range(k)))
    if graver is None:
        graver = graver_basis(kernel_lattice(M))
    off = []
    for v in graver:
        p = RelationPair(positive_part(v), negative_part(v))
        if any(min(a, b) for a, b in zip(p.x, p.y)):
            raise AssertionFailed(f"atom {p} has overlapping supports")
        if M.evaluate(p.x) != M.evaluate(p.y):
            raise AssertionFailed(f"atom {p} is not a relation")
        if recheck and not is_irreducible_pair(M, p.x, p.y):
            raise AssertionFailed(f"atom {p} is reducible in M_H")
        off.append(p)
    return RelationAtoms(M, diag, tuple(sorted(off, key=_pair_key)))


def betti_elements(M: AffineMonoid, atoms: RelationAtoms | None = None) -> list[Vector]:
    """Elements a with an off-diagonal atom in A_a(M_H)."""
    atoms = relation_atoms(M) if atoms is None else atoms
    return sorted({M.evaluate(p.x) for p in atoms.offdiagonal}, key=grlex_key)


@dataclass(frozen=True)
class PrimeSplit:
    primes: tuple[int, ...]
    nonprimes: tuple[int, ...]
    class_group_rank: int


def prime_split(M: AffineMonoid, atoms: RelationAtoms | None = None) -> PrimeSplit:
    atoms = relation_atoms(M) if atoms is None else atoms
    k = M.rank
    primes = tuple(u for u in range(k) if all(p.x[u] == p.y[u] for p in atoms.offdiagonal))
    nonprimes = tuple(u for u in range(k) if u not in primes)
    rank = integer_rank([M.generators[u] for u in nonprimes])
    return PrimeSplit(primes, nonprimes, rank)


def delta_tilde(atoms: RelationAtoms) -> list[int]:
    """Raw set of | |x| - |y| | over off-diagonal atoms (zeros kept)."""
    return sorted({p.delta for p in atoms.offdiagonal})


@dataclass
class DivisorReport:
    checked_pairs: int
    violations: list
    witnesses: dict
    missing_witnesses: list

    @property
    def passed(self) -> bool:
        return not self.violations and not self.missing_witnesses


def _relation_pairs(M: AffineMonoid, bound: int):
    """All (x, y) in M_H with |x| + |y| <= bound."""
    from .fibers import fiber
    from .monoid import elements_up_to

    out = []
    # |x| + |y| <= bound forces grading(a) <= (bound // 2) * max generator grading
    top = max(sum(g) for g in M.generators) * (bound // 2)
    for a in elements_up_to(M, top):
        zs = fiber(M, a).factorizations
        for x in zs:
            for y in zs:
                if sum(x) + sum(y) <= bound:
                    out.append((x, y))
    return out


def verify_divisor_homomorphism(M: AffineMonoid, sample_bound: int, atoms: RelationAtoms | None = None) -> DivisorReport:
    """Check that (qx, qy) -> (q, x, y) reflects divisibility on a sample and
    exhibit, for every non-prime atom u, two relation pairs whose images
    have greatest common divisor (0, e_u, 0)."""
    atoms = relation_atoms(M) if atoms is None else atoms
    split = prime_split(M, atoms)
    P = split.primes

    def image(x, y):
        q = tuple(x[u] for u in P)
        strip = lambda z: tuple(0 if u in P else c for u, c in enumerate(z))
        return q + strip(x) + strip(y)

    pairs = _relation_pairs(M, sample_bound)
    images = np.array([image(x, y) for x, y in pairs], dtype=np.int64)
    violations = []
    for i, (x1, y1) in enumerate(pairs):
        below = np.flatnonzero((images[i] <= images).all(axis=1))
        for j in below:
            x2, y2 = pairs[j]
            dx = tuple(b - a for a, b in zip(x1, x2))
            dy = tuple(b - a for a, b in zip(y1, y2))
            if M.evaluate(dx) != M.evaluate(dy):
                violations.append(((x1, y1), (x2, y2)))
    witnesses = {}
    missing = []
    k = M.rank
    for u in split.nonprimes:
        e = tuple(int(i == u) for i in range(k))
        target = image(e, (0,) * k)
        found = None
        for x, y in sorted(pairs, key=lambda p: (sum(p[0]) + sum(p[1]), p)):
            if x[u] and not y[u]:
                g = tuple(min(a, b) for a, b in zip(image(x, y), image(e, e)))
                if g == target:
                    found = ((x, y), (e, e))
                    break
        if found is None:
            missing.append(u)
        else:
            witnesses[u] = found
    return DivisorReport(len(pairs), violations, witnesses, missing)


def class_group_rank(M: AffineMonoid) -> int:
    return prime_split(M).class_group_rank
