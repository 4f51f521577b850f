"""Finitely generated reduced monoids embedded in N^d.

A monoid is given by a list of nonzero generator vectors with nonnegative
entries. Coordinate sum is a positive grading, so every fiber of the
factorization map is finite and all searches below terminate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptyGenerators, InvalidInput, ZeroGenerator

Vector = tuple[int, ...]


def grlex_key(v: Sequence[int]):
    return (sum(v), tuple(v))


@dataclass(frozen=True)
class AffineMonoid:
    generators: tuple[Vector, ...]
    minimal: bool
    # representability memo keyed by (first generator index, remainder)
    _reach: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    @property
    def dimension(self) -> int:
        return len(self.generators[0])

    @property
    def rank(self) -> int:
        """Number k of generators."""
        return len(self.generators)

    @property
    def is_numerical(self) -> bool:
        return self.dimension == 1

    def label(self, i: int) -> str:
        g = self.generators[i]
        return str(g[0]) if self.is_numerical else "(" + ",".join(map(str, g)) + ")"

    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.rank)]

    def __str__(self):
        return "<" + ", ".join(self.labels()) + ">"

    def evaluate(self, z: Sequence[int]) -> Vector:
        """pi_H: exponent vector -> element."""
        if len(z) != self.rank:
            raise DimensionMismatch(f"factorization has {len(z)} entries, monoid has {self.rank} atoms")
        out = [0] * self.dimension
        for c, g in zip(z, self.generators):
            if c:
                for j, gj in enumerate(g):
                    out[j] += c * gj
        return tuple(out)

    def element(self, a) -> Vector:
        """Coerce an int (numerical case) or a sequence to an element vector."""
        if isinstance(a, int):
            a = (a,)
        a = tuple(int(x) for x in a)
        if len(a) != self.dimension:
            raise DimensionMismatch(f"element has dimension {len(a)}, monoid has {self.dimension}")
        return a

    def _representable(self, i: int, r: Vector) -> bool:
        if not any(r):
            return True
        if i == len(self.generators):
            return False
        key = (i, r)
        hit = self._reach.get(key)
        if hit is not None:
            return hit
        g = self.generators[i]
        m = min(rj // gj for rj, gj in zip(r, g) if gj)
        ok = False
        rem = list(r)
        for c in range(m + 1):
            if self._representable(i + 1, tuple(rem)):
                ok = True
                break
            for j, gj in enumerate(g):
                rem[j] -= gj
        self._reach[key] = ok
        return ok


def _validate(rows: Iterable[Sequence[int]]) -> list[Vector]:
    rows = [tuple(int(x) for x in r) for r in rows]
    if not rows:
        raise EmptyGenerators("at least one generator is required")
    d = len(rows[0])
    if d == 0:
        raise DimensionMismatch("generators must have dimension at least 1")
    for r in rows:
        if len(r) != d:
            raise DimensionMismatch(f"generator {r} has dimension {len(r)}, expected {d}")
        if any(x < 0 for x in r):
            raise InvalidInput(f"generator {r} has a negative entry")
        if not any(r):
            raise ZeroGenerator("the zero vector is not an atom")
    return sorted(set(rows), key=grlex_key)


def _redundant(gens: Sequence[Vector], i: int) -> bool:
    rest = AffineMonoid(tuple(g for j, g in enumerate(gens) if j != i), minimal=False)
    return rest._representable(0, gens[i])


def _build(gens: list[Vector], minimize: bool) -> AffineMonoid:
    if minimize:
        # scanning in increasing degree: a generator can only be a sum of
        # strictly smaller ones, so the smaller ones decide redundancy
        kept: list[Vector] = []
        for g in gens:
            if not kept or not AffineMonoid(tuple(kept), minimal=False)._representable(0, g):
                kept.append(g)
        return AffineMonoid(tuple(kept), minimal=True)
    minimal = len(gens) == 1 or not any(_redundant(gens, i) for i in range(len(gens)))
    return AffineMonoid(tuple(gens), minimal=minimal)


def new_numerical(gens: Iterable[int], minimize: bool = False) -> AffineMonoid:
    gens = list(gens)
    if not gens:
        raise EmptyGenerators("at least one generator is required")
    for g in gens:
        if int(g) == 0:
            raise ZeroGenerator("0 is not an atom")
        if int(g) < 0:
            raise InvalidInput(f"generator {g} is negative")
    return _build(_validate([(g,) for g in gens]), minimize)


def new_affine(rows: Iterable[Sequence[int]], minimize: bool = False) -> AffineMonoid:
    return _build(_validate(rows), minimize)


def member(M: AffineMonoid, a) -> bool:
    a = M.element(a)
    if any(x < 0 for x in a):
        return False
    return M._representable(0, a)


def minimal_generators(M: AffineMonoid) -> AffineMonoid:
    if M.minimal:
        return M
    return _build(list(M.generators), minimize=True)


def grading(a: Sequence[int]) -> int:
    return sum(a)


def elements_up_to(M: AffineMonoid, bound: int) -> list[Vector]:
    """All elements of grading <= bound, in graded-lex order."""
    if M.is_numerical:
        return [(n,) for n in range(bound + 1) if M._representable(0, (n,))]
    seen = {(0,) * M.dimension}
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in M.generators:
                b = tuple(x + y for x, y in zip(a, g))
                if sum(b) <= bound and b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen, key=grlex_key)


@dataclass(frozen=True)
class KernelLattice:
    basis: tuple[Vector, ...]
    ambient: int

    def __len__(self):
        return len(self.basis)


def _row_echelon_with_transform(rows: list[list[int]], ncols: int):
    """Integer row reduction of ``rows`` (only the first ``ncols`` entries are
    pivoted on); extra trailing entries ride along. Returns the reduced rows
    and the pivot count."""
    rows = [r[:] for r in rows]
    pivot_row = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(pivot_row, len(rows)) if rows[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(rows[i][col]))
            rows[pivot_row], rows[p] = rows[p], rows[pivot_row]
            piv = rows[pivot_row]
            done = True
            for i in range(pivot_row + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // piv[col]
                    rows[i] = [x - q * y for x, y in zip(rows[i], piv)]
                    if rows[i][col]:
                        done = False
            if done:
                pivot_row += 1
                break
        if pivot_row == len(rows):
            break
    return rows, pivot_row


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list[Vector]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``
    (zero rows dropped, positive pivots, entries above pivots reduced)."""
    if not vectors:
        return []
    n = len(vectors[0])
    rows, r = _row_echelon_with_transform([list(v) for v in vectors], n)
    rows = [row for row in rows[:r] if any(row)]
    pivots = []
    for row in rows:
        c = next(j for j, x in enumerate(row) if x)
        if row[c] < 0:
            row[:] = [-x for x in row]
        pivots.append(c)
    for i, c in enumerate(pivots):
        for h in range(i):
            q = rows[h][c] // rows[i][c]
            if q:
                rows[h] = [x - q * y for x, y in zip(rows[h], rows[i])]
    return [tuple(row) for row in rows]


def integer_rank(vectors: Sequence[Sequence[int]]) -> int:
    return len(hermite_rows(vectors)) if vectors else 0


def kernel_lattice(M: AffineMonoid) -> KernelLattice:
    """Basis of {v in Z^k : sum v_i g_i = 0}.

    Reduces [G | I_k] (one row per generator); rows whose G-part vanishes
    carry kernel vectors in their identity part.
    """
    k, d = M.rank, M.dimension
    aug = [list(g) + [int(i == j) for j in range(k)] for i, g in enumerate(M.generators)]
    rows, r = _row_echelon_with_transform(aug, d)
    kernel = [row[d:] for row in rows[r:]]
    basis = hermite_rows(kernel)
    for v in basis:
        if any(sum(c * g[j] for c, g in zip(v, M.generators)) for j in range(d)):
            raise AssertionError(f"kernel vector {v} does not evaluate to zero")
    assert len(basis) == k - integer_rank(M.generators)
    return KernelLattice(tuple(basis), k)


def coprime(values: Iterable[int]) -> bool:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g == 1
