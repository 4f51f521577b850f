"""Seeded random families of test monoids."""
from __future__ import annotations

import random

from .monoid import AffineMonoid, coprime, new_numerical


def random_numerical_family(count: int = 50, seed: int = 0, min_gens: int = 2,
                            max_gens: int = 4, max_value: int = 30) -> list[AffineMonoid]:
    """Numerical monoids with ``min_gens``..``max_gens`` minimal generators in
    [2, max_value] and gcd 1. Same arguments, same list."""
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        k = rng.randint(min_gens, max_gens)
        gens = sorted(rng.sample(range(2, max_value + 1), k))
        if tuple(gens) in seen or not coprime(gens):
            continue
        M = new_numerical(gens)
        if not M.minimal:
            continue
        seen.add(tuple(gens))
        out.append(M)
    return out


def random_transfer_specs(count: int = 40, seed: int = 0, attempts: int = 2000):
    """Sample source monoids that lift a small numerical target.

    Source generators are (t_j, w) for target generators t_j and small
    offsets w; projecting to the first coordinate is then a homomorphism, and
    the block of t_j collects its lifts. Yields (spec, condition_one,
    induced_report) for every sample, passing or not.
    """
    from .transfer import AtomPartition, TransferSpec, check_condition_one, check_induced_onto
    from .monoid import new_affine

    rng = random.Random(seed)
    out = []
    for _ in range(attempts):
        if len(out) >= count:
            break
        m = rng.randint(1, 3)
        tgt = sorted(rng.sample(range(1, 8), m))
        T = new_numerical(tgt)
        if not T.minimal:
            continue
        rows, owner = [], []
        for j, t in enumerate(tgt):
            for w in rng.sample(range(0, 4), rng.randint(1, 2)):
                rows.append((t, w))
                owner.append(j)
        S = new_affine(rows)
        if not S.minimal or S.rank != len(rows):
            continue
        blocks = [[] for _ in tgt]
        for r, j in zip(rows, owner):
            blocks[j].append(S.generators.index(r))
        P = AtomPartition(tuple(tuple(sorted(b)) for b in blocks), S.rank)
        spec = TransferSpec(S, P, T, tuple(range(m)))
        cond = check_condition_one(S, P)
        induced = check_induced_onto(spec) if cond else None
        out.append((spec, cond, induced))
    return out
