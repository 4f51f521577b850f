"""factorlab command line.

Exit status: 0 success, 1 a checked identity or inequality failed,
2 usage or input error, 3 a resource cap was hit.
"""
from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import serialize as ser
from .errors import AssertionFailed, FactorlabError, InvalidInput, ResourceCapExceeded
from .families import random_numerical_family
from .fibers import catenary_of, elasticity_of, fiber, length_set, r_classes
from .invariants import Context, invariant_report
from .monoid import AffineMonoid, new_affine, new_numerical
from .oracle import cross_check
from .relations import delta_tilde, prime_split
from .transfer import AtomPartition, check_condition_one, check_induced_onto, spec_from_gens, verify_transfer

EXIT_OK, EXIT_ASSERT, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise InvalidInput(f"expected comma-separated integers, got {text!r}") from exc


def read_rows(path: str) -> list[list[int]]:
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            cells = [c.strip() for c in row if c.strip()]
            if not cells or cells[0].startswith("#"):
                continue
            try:
                rows.append([int(c) for c in cells])
            except ValueError as exc:
                raise InvalidInput(f"{path}: non-integer entry in row {row}") from exc
    return rows


def monoid_from_args(args) -> AffineMonoid:
    if args.gens and args.gens_file:
        raise InvalidInput("give either --gens or --gens-file, not both")
    if args.gens:
        M = new_numerical(parse_int_list(args.gens), minimize=args.minimize)
    elif args.gens_file:
        M = new_affine(read_rows(args.gens_file), minimize=args.minimize)
    else:
        raise InvalidInput("a generator source is required (--gens or --gens-file)")
    return M


def _table(rows: list[tuple[str, object]]) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _fmt(v):
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return f"{v['num']}/{v['den']}" if v["den"] != 1 else str(v["num"])
    return v


def emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(ser.dumps(payload) + "\n")
    elif fmt == "csv":
        flat = {k: _fmt(v) for k, v in ser.plain(payload).items()}
        w = csv.DictWriter(out, fieldnames=list(flat), lineterminator="\n")
        w.writeheader()
        w.writerow({k: v if isinstance(v, (int, str)) or v is None else str(v) for k, v in flat.items()})
    else:
        out.write(_table([(k, _fmt(v)) for k, v in ser.plain(payload).items()]) + "\n")


def cmd_fiber(args, out) -> int:
    M = monoid_from_args(args)
    f = fiber(M, M.element(parse_int_list(args.element)))
    emit(ser.fiber_payload(M, f, length_set(f), elasticity_of(f), catenary_of(f), r_classes(f)), args.format, out)
    return EXIT_OK


def cmd_atoms(args, out) -> int:
    M = monoid_from_args(args)
    ctx = Context(M)
    emit(ser.atoms_payload(M, ctx.atoms, prime_split(M, ctx.atoms), delta_tilde(ctx.atoms)), args.format, out)
    return EXIT_OK


def cmd_betti(args, out) -> int:
    M = monoid_from_args(args)
    ctx = Context(M)
    emit({"generators": [ser.element(g) for g in M.generators],
          "betti": [ser.element(b) for b in ctx.betti]}, args.format, out)
    return EXIT_OK


def cmd_invariants(args, out) -> int:
    M = monoid_from_args(args)
    emit(ser.invariants_payload(invariant_report(M, args.scan_bound)), args.format, out)
    return EXIT_OK


def cmd_transfer(args, out) -> int:
    M = monoid_from_args(args)
    P = AtomPartition.parse(args.partition, M.rank)
    if args.target_gens:
        rows = [(t,) for t in parse_int_list(args.target_gens)]
    elif args.target_gens_file:
        rows = read_rows(args.target_gens_file)
    else:
        raise InvalidInput("a target is required (--target-gens or --target-gens-file)")
    spec = spec_from_gens(M, P, rows)
    payload = {
        "source": [ser.element(g) for g in M.generators],
        "partition": str(P),
        "target": [ser.element(g) for g in spec.target.generators],
        "condition_one": check_condition_one(M, P),
    }
    if not payload["condition_one"]:
        emit(payload, args.format, out)
        return EXIT_ASSERT
    induced = check_induced_onto(spec, args.bound)
    payload["induced"] = {"into": induced.into, "onto": induced.onto,
                          "atoms_to_atoms": induced.atoms_to_atoms, "reason": induced.reason}
    if not induced.passed:
        emit(payload, args.format, out)
        return EXIT_ASSERT
    try:
        rep = verify_transfer(spec, args.bound)
        payload.update(source_invariants=rep.source, target_invariants=rep.target, checks=rep.checks)
        status = EXIT_OK
    except AssertionFailed as exc:
        payload["assertion_failed"] = str(exc)
        status = EXIT_ASSERT
    emit(payload, args.format, out)
    return status


def _verify_one(gens_and_bound):
    gens, bound = gens_and_bound
    M = new_affine(gens)
    return ser.oracle_payload(cross_check(M, bound))


def _pool_map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def cmd_verify(args, out) -> int:
    if args.gens or args.gens_file:
        monoids = [monoid_from_args(args)]
    else:
        monoids = random_numerical_family(args.count, args.seed)
    reports = _pool_map(_verify_one, [([list(g) for g in M.generators], args.bound) for M in monoids], args.jobs)
    passed = all(r["passed"] for r in reports)
    payload = {"seed": None if (args.gens or args.gens_file) else args.seed,
               "passed": passed, "monoids": len(reports), "reports": reports}
    if args.format == "json":
        emit(payload, "json", out)
    else:
        for r in reports:
            bad = [k for k, v in r["verdicts"].items() if v["status"] != "pass"]
            out.write(f"{r['generators']}  bound={r['bound']}  "
                      f"{'PASS' if r['passed'] else 'FAIL'}{'  ' + ','.join(bad) if bad else ''}\n")
    return EXIT_OK if passed else EXIT_ASSERT


BATCH_FIELDS = ["row", "generators", "catenary", "elasticity", "delta_min", "delta_max_bound",
                "tame", "betti_count", "verified", "error"]


def _batch_row(item):
    idx, gens, command = item
    row = {k: "" for k in BATCH_FIELDS}
    row["row"] = idx
    try:
        if isinstance(gens, str):
            row["generators"] = gens
            gens = parse_int_list(gens)
        row["generators"] = " ".join(map(str, gens))
        M = new_numerical(gens)
        rep = invariant_report(M)
        row.update(catenary=rep.catenary, elasticity=str(rep.elasticity),
                   delta_min="" if rep.delta_min is None else rep.delta_min,
                   delta_max_bound=rep.delta_max_bound, tame=rep.tame, betti_count=len(rep.betti))
        if command == "verify":
            row["verified"] = cross_check(M).passed
    except FactorlabError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def cmd_batch(args, out) -> int:
    if args.file and args.random:
        raise InvalidInput("give either a file or --random, not both")
    if args.file:
        lists = []
        for line in Path(args.file).read_text().splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                lists.append(line)  # parsed per row so a bad line only fails its own row
    elif args.random:
        lists = [[g[0] for g in M.generators] for M in random_numerical_family(args.random, args.seed)]
    else:
        raise InvalidInput("batch needs a file or --random N")
    rows = _pool_map(_batch_row, [(i + 1, g, args.command) for i, g in enumerate(lists)], args.jobs)
    w = csv.DictWriter(out, fieldnames=BATCH_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    failed = any(r["verified"] is False for r in rows)
    return EXIT_ASSERT if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="factorlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def monoid_opts(sp, required=True):
        sp.add_argument("--gens", help="comma-separated positive integers (numerical monoid)")
        sp.add_argument("--gens-file", help="CSV file, one generator vector per row")
        sp.add_argument("--minimize", action="store_true", help="drop redundant generators first")
        sp.add_argument("--format", choices=["table", "json", "csv"], default="table")

    sp = sub.add_parser("fiber", help="factorizations of one element")
    monoid_opts(sp)
    sp.add_argument("--element", required=True, help="integer, or comma-separated vector")
    sp.set_defaults(func=cmd_fiber)

    sp = sub.add_parser("atoms", help="atoms of the monoid of relations")
    monoid_opts(sp)
    sp.set_defaults(func=cmd_atoms)

    sp = sub.add_parser("betti", help="elements carrying an off-diagonal relation atom")
    monoid_opts(sp)
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("invariants", help="catenary, elasticity, delta and tame data")
    monoid_opts(sp)
    sp.add_argument("--scan-bound", type=int, help="also scan length sets up to this grading")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("transfer", help="compare a monoid with a block quotient")
    monoid_opts(sp)
    sp.add_argument("--partition", required=True, help='blocks of 1-based atom indices, e.g. "1|2,3"')
    sp.add_argument("--target-gens", help="target generators, one per block, in block order")
    sp.add_argument("--target-gens-file", help="CSV of target generators, one per block")
    sp.add_argument("--bound", type=int, default=64, help="onto-search length bound")
    sp.set_defaults(func=cmd_transfer)

    sp = sub.add_parser("verify", help="cross-check fast paths against brute force")
    monoid_opts(sp)
    sp.add_argument("--bound", type=int, help="grading bound (default: max Betti + max generator)")
    sp.add_argument("--seed", type=int, default=0, help="seed of the random family when no --gens")
    sp.add_argument("--count", type=int, default=50, help="size of the random family")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("batch", help="one CSV row per monoid")
    sp.add_argument("file", nargs="?", help="text file, one comma-separated generator list per line")
    sp.add_argument("--random", type=int, help="use a seeded random family of this size instead")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--command", choices=["invariants", "verify"], default="invariants")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_batch)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("bound", "scan_bound", "count", "random", "jobs"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            print(f"factorlab: --{name.replace('_', '-')} must be nonnegative", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args, out)
    except InvalidInput as exc:
        print(f"factorlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapExceeded as exc:
        print(f"factorlab: resource cap hit: {exc}", file=sys.stderr)
        return EXIT_CAP
    except AssertionFailed as exc:
        print(f"factorlab: assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except OSError as exc:
        print(f"factorlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
