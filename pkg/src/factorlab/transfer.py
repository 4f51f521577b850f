"""Quotients of a monoid obtained by merging blocks of atoms.

A partition of the atoms into blocks collapses each block to a single atom of
a target monoid. When no atom of M_H lives entirely inside one block, the
target's catenary degree cannot exceed the source's; when in addition the
projected relations of the source generate all relations of the target, the
two monoids share their elasticity and the target's tame degree and catenary
degree are bounded by the source's.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import caps
from .errors import AssertionFailed, InvalidInput, SearchCapExceeded
from .invariants import Context, catenary_degree, elasticity, tame_degree
from .monoid import AffineMonoid, new_affine
from .relations import relation_atoms


@dataclass(frozen=True)
class AtomPartition:
    blocks: tuple[tuple[int, ...], ...]
    size: int

    def __post_init__(self):
        seen = [i for b in self.blocks for i in b]
        if any(not b for b in self.blocks):
            raise InvalidInput("partition blocks must be nonempty")
        if sorted(seen) != list(range(self.size)):
            raise InvalidInput(f"blocks {self.blocks} do not partition the atoms 1..{self.size}")

    def block_of(self) -> list[int]:
        out = [0] * self.size
        for j, b in enumerate(self.blocks):
            for i in b:
                out[i] = j
        return out

    @classmethod
    def identity(cls, k: int) -> "AtomPartition":
        return cls(tuple((i,) for i in range(k)), k)

    @classmethod
    def parse(cls, text: str, k: int) -> "AtomPartition":
        """``"1|2,3"`` -> blocks {0}, {1, 2} (input indices are 1-based)."""
        try:
            blocks = tuple(tuple(int(t) - 1 for t in part.split(",") if t.strip())
                           for part in text.split("|"))
        except ValueError as exc:
            raise InvalidInput(f"cannot parse partition {text!r}") from exc
        return cls(blocks, k)

    def __str__(self):
        return "|".join(",".join(str(i + 1) for i in b) for b in self.blocks)


def check_condition_one(M: AffineMonoid, P: AtomPartition, atoms=None) -> bool:
    """No off-diagonal atom of M_H is supported inside a single block."""
    atoms = relation_atoms(M) if atoms is None else atoms
    blk = P.block_of()
    for p in atoms.offdiagonal:
        support = {blk[i] for i, c in enumerate(p.x) if c} | {blk[i] for i, c in enumerate(p.y) if c}
        if len(support) == 1:
            return False
    return True


def project(P: AtomPartition, z: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(P.blocks)
    for j, b in enumerate(P.blocks):
        out[j] = sum(z[i] for i in b)
    return tuple(out)


@dataclass(frozen=True)
class TransferSpec:
    source: AffineMonoid
    partition: AtomPartition
    target: AffineMonoid
    atom_map: tuple[int, ...]  # block index -> target generator index

    def __post_init__(self):
        if self.partition.size != self.source.rank:
            raise InvalidInput("partition size differs from the number of source atoms")
        m = len(self.partition.blocks)
        if self.target.rank != m or sorted(self.atom_map) != list(range(m)):
            raise InvalidInput("atom map must send the blocks bijectively onto the target generators")

    def push(self, z: Sequence[int]) -> tuple[int, ...]:
        """Project a source factorization into target coordinates."""
        blocks = project(self.partition, z)
        out = [0] * self.target.rank
        for j, c in enumerate(blocks):
            out[self.atom_map[j]] = c
        return tuple(out)


def spec_from_gens(source: AffineMonoid, partition: AtomPartition, target_rows) -> TransferSpec:
    """Build a spec whose i-th block maps to the i-th listed target generator."""
    target_rows = [tuple(int(x) for x in r) for r in target_rows]
    if len(set(target_rows)) != len(target_rows):
        raise InvalidInput("target generators must be distinct")
    target = new_affine(target_rows)
    atom_map = tuple(target.generators.index(r) for r in target_rows)
    return TransferSpec(source, partition, target, atom_map)


@dataclass
class InducedReport:
    into: str
    onto: str
    into_failures: list = field(default_factory=list)
    onto_failures: list = field(default_factory=list)
    reason: str = ""
    # every source atom lands on an atom of the target's relation monoid;
    # the atom-length bound on c(source) is only safe when this holds
    atoms_to_atoms: bool = False

    @property
    def passed(self) -> bool:
        return self.into == "pass" and self.onto == "pass"


def _decompose(target: tuple, parts: list[tuple], budget: list[int]) -> bool:
    """Backtracking: is ``target`` a sum of elements of ``parts`` (repetition
    allowed)? Parts are tried in a fixed order with nondecreasing index."""

    def go(rest: tuple, start: int) -> bool:
        if not any(rest):
            return True
        for i in range(start, len(parts)):
            budget[0] -= 1
            if budget[0] < 0:
                raise SearchCapExceeded("onto search exceeded its node cap")
            p = parts[i]
            if all(a <= b for a, b in zip(p, rest)):
                if go(tuple(b - a for a, b in zip(p, rest)), i):
                    return True
        return False

    return go(target, 0)


def check_induced_onto(T: TransferSpec, bound: int = 64, cap: int | None = None) -> InducedReport:
    """Into: every source atom projects to a target relation.
    Onto: every target atom is a sum of projected source atoms; targets longer
    than ``bound`` are left undecided."""
    src_atoms = relation_atoms(T.source)
    pushed = []
    into_fail = []
    for p in src_atoms.all():
        x, y = T.push(p.x), T.push(p.y)
        if T.target.evaluate(x) != T.target.evaluate(y):
            into_fail.append((p.x, p.y))
        pushed.append(x + y)
    rep = InducedReport("fail" if into_fail else "pass", "inconclusive", into_fail)

    tgt_atoms = relation_atoms(T.target).all()
    rep.atoms_to_atoms = {v for v in pushed} <= {q.x + q.y for q in tgt_atoms}
    parts = sorted(set(pushed), key=lambda v: (-sum(v), v))
    budget = [caps.cap("search") if cap is None else cap]
    undecided = []
    for q in tgt_atoms:
        # each part has length >= 1 on the x side, so |x| parts suffice
        if sum(q.x) > bound:
            undecided.append((q.x, q.y))
            continue
        try:
            if not _decompose(q.x + q.y, parts, budget):
                rep.onto_failures.append((q.x, q.y))
        except SearchCapExceeded:
            rep.onto = "inconclusive"
            rep.reason = "search cap exceeded"
            return rep
    if rep.onto_failures:
        rep.onto = "fail"
    elif undecided:
        rep.reason = f"{len(undecided)} target atoms longer than the search bound {bound}"
    else:
        rep.onto = "pass"
    return rep


@dataclass
class TransferReport:
    condition_one: bool
    induced: InducedReport
    source: dict
    target: dict
    checks: dict


def _summary(ctx: Context) -> dict:
    atoms = ctx.atoms.all()
    return {
        "generators": [list(g) for g in ctx.M.generators],
        "catenary": catenary_degree(ctx),
        "elasticity": elasticity(ctx),
        "tame": tame_degree(ctx),
        "max_atom_length": max(max(sum(p.x), sum(p.y)) for p in atoms),
        "max_atom_ratio": max(Fraction(sum(p.x), sum(p.y)) for p in atoms),
    }


def verify_transfer(T: TransferSpec, bound: int = 64) -> TransferReport:
    """Check the comparison inequalities between source and target.

    Requires condition one and a passing into/onto check; raises
    AssertionFailed on any violated inequality, which the hypotheses rule out.
    """
    src = Context(T.source)
    if not check_condition_one(T.source, T.partition, src.atoms):
        raise InvalidInput(f"partition {T.partition} violates the block condition")
    induced = check_induced_onto(T, bound)
    if not induced.passed:
        raise InvalidInput(f"projection is not a verified homomorphism onto the target "
                           f"(into={induced.into}, onto={induced.onto})")
    s = _summary(src)
    t = _summary(Context(T.target))
    checks = {
        "c(target) <= c(source)": t["catenary"] <= s["catenary"],
        "c(source) <= max |x| over target atoms": s["catenary"] <= t["max_atom_length"],
        "rho(source) = rho(target)": s["elasticity"] == t["elasticity"],
        "rho(target) = max target atom ratio": t["elasticity"] == t["max_atom_ratio"],
        "t(target) <= t(source)": t["tame"] <= s["tame"],
    }
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise AssertionFailed(f"transfer inequalities violated: {bad}; source={s}, target={t}")
    return TransferReport(True, induced, s, t, checks)
