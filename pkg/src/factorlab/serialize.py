"""JSON-ready views of the library's results.

Rationals become ``{"num": n, "den": d}``; one-dimensional elements are
written as bare integers, higher-dimensional ones as lists.
"""
from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction

SCHEMA = 1


def rational(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def element(a):
    a = list(a)
    return a[0] if len(a) == 1 else a


def plain(obj):
    """Recursively convert to JSON-native types."""
    if isinstance(obj, Fraction):
        return rational(obj)
    if is_dataclass(obj) and not isinstance(obj, type):
        return plain(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [plain(v) for v in items]
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


def dumps(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA, **plain(payload)}, indent=2, sort_keys=False)


def fiber_payload(M, f, ls, rho, cat, rc) -> dict:
    return {
        "generators": [element(g) for g in M.generators],
        "element": element(f.element),
        "factorizations": [list(z) for z in f.factorizations],
        "lengths": list(ls.lengths),
        "deltas": list(ls.deltas),
        "elasticity": rational(rho),
        "catenary": cat,
        "r_classes": len(rc),
        "mu": max(rc.min_lengths),
    }


def atoms_payload(M, atoms, split, dtilde) -> dict:
    return {
        "generators": [element(g) for g in M.generators],
        "diagonal": [[list(p.x), list(p.y)] for p in atoms.diagonal],
        "offdiagonal": [
            {"x": list(p.x), "y": list(p.y), "len_x": sum(p.x), "len_y": sum(p.y),
             "delta_tilde": p.delta, "value": element(M.evaluate(p.x))}
            for p in atoms.offdiagonal
        ],
        "primes": [element(M.generators[u]) for u in split.primes],
        "class_group_rank": split.class_group_rank,
        "delta_tilde": dtilde,
    }


INVARIANT_KEYS = ("generators", "atoms_count", "betti", "catenary", "mu", "nu",
                  "catenary_upper_bound", "elasticity", "delta_min", "delta_max_bound",
                  "delta_scan", "tame_per_atom", "tame", "exactness")


def invariants_payload(report) -> dict:
    d = plain(report)
    return {k: d[k] for k in INVARIANT_KEYS}


def oracle_payload(rep) -> dict:
    return {
        "generators": [element(g) for g in rep.generators],
        "bound": rep.bound,
        "betti_bound": rep.betti_bound,
        "passed": rep.passed,
        "values": plain(rep.values),
        "verdicts": {k: plain(v) for k, v in rep.verdicts.items()},
    }
