"""Command-line entry point: ``terracini check | verify-main | family``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .arith import is_probable_prime, random_primes
from .dim_est import check_inequalities, jacobian_rank, spread_estimate
from .errors import PointsNotDistinct, TerraciniError
from .families import FAMILY_NAMES, get_family, sample
from .fatpoints import PointConfiguration, cohomology, is_minimally_terracini, is_terracini
from .verify import SECTIONS, Harness, rows_to_csv

EXIT_MALFORMED = 2


def _default_seed() -> int:
    return int(os.environ.get("TERRACINI_SEED", "0"))


def _primes(args) -> list[int]:
    if getattr(args, "prime_list", None):
        primes = [int(q) for q in args.prime_list.split(",")]
        bad = [q for q in primes if not is_probable_prime(q)]
        if bad:
            raise SystemExit(f"error: not prime: {bad}")
        return primes
    return random_primes(args.primes, args.seed)


def _emit(obj, path: str | None):
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_check(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        print(f"error: {args.file}: line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return EXIT_MALFORMED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        if args.prime is not None:
            obj = dict(obj, prime=str(args.prime))
        p = int(obj["prime"])
        if not is_probable_prime(p):
            print(f"error: modulus {p} is not prime", file=sys.stderr)
            return EXIT_MALFORMED
        S = PointConfiguration.from_json(obj)
    except PointsNotDistinct:
        print("error: points not distinct", file=sys.stderr)
        return EXIT_MALFORMED
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: malformed configuration: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    rep = cohomology(S, args.d)
    print(json.dumps(rep.to_dict(), indent=2))
    return 0


def cmd_verify_main(args) -> int:
    sections = [s.strip() for s in args.sections.split(",") if s.strip()]
    unknown = set(sections) - set(SECTIONS)
    if unknown:
        print(f"error: unknown sections {sorted(unknown)}; choose from {','.join(SECTIONS)}", file=sys.stderr)
        return EXIT_MALFORMED
    harness = Harness(_primes(args), args.seed)
    rows = list(harness.run(sections))
    text = rows_to_csv(rows, timing=not args.no_timing)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [r.claim for r in rows if r.verdict != "PASS"]
    print(f"{len(rows) - len(failed)}/{len(rows)} PASS", file=sys.stderr)
    return 1 if failed else 0


def cmd_family(args) -> int:
    try:
        spec = get_family(args.name, n=args.n, d=args.d, x=args.x)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_MALFORMED
    primes = _primes(args)
    if args.action == "sample":
        smp = sample(spec, primes[0], args.seed)
        _emit(smp.to_json(), args.json)
        return 0
    rep = jacobian_rank(spec, args.seed, primes)
    if args.action == "dim":
        out = rep.to_json()
        out["expected_dim"] = spec.expected_dim
        if spec.name == "quadric_p5":
            smp = sample(spec, primes[0], args.seed)
            out["terracini"] = is_terracini(smp.points, spec.d)[0]
            out["minimally_terracini"] = is_minimally_terracini(smp.points, spec.d)
        _emit(out, args.json)
        return 0
    eta = spread_estimate(spec, args.seed, primes, report=rep)
    if args.json:
        checks = check_inequalities(rep, spec.n, spec.d, spec.x) if spec.n >= 2 and spec.d >= 3 else []
        _emit({
            "family": spec.label, "spread": eta, "expected_spread": spec.expected_spread,
            "dim": rep.jacobian_rank,
            "checks": [{"check": name, "pass": ok, "detail": detail} for name, ok, detail in checks],
        }, args.json)
    print(eta)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="terracini", description="Exact computations on Terracini loci over F_p.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="h0/h1 of double points for a configuration file")
    c.add_argument("--file", required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--prime", type=int, help="override the prime stored in the file")
    c.add_argument("--seed", type=int, default=None)
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify-main", help="run the verification table and print CSV")
    v.add_argument("--sections", default=",".join(SECTIONS))
    v.add_argument("--primes", type=int, default=3, help="number of random primes in (2^60, 2^61)")
    v.add_argument("--prime-list", help="comma-separated explicit primes")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--no-timing", action="store_true", help="write 0 in the ms column for byte-stable output")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify_main)

    f = sub.add_parser("family", help="sample a family, estimate its dimension or spread")
    f.add_argument("action", choices=("sample", "dim", "spread"))
    f.add_argument("--name", required=True, choices=FAMILY_NAMES)
    f.add_argument("--n", type=int)
    f.add_argument("--d", type=int)
    f.add_argument("--x", type=int)
    f.add_argument("--seed", type=int, default=None)
    f.add_argument("--primes", type=int, default=3)
    f.add_argument("--prime-list")
    f.add_argument("--json", help="write JSON output to this file")
    f.set_defaults(func=cmd_family)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is None:
        args.seed = _default_seed()
    try:
        return args.func(args)
    except TerraciniError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
