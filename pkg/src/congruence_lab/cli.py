"""Command-line surface: verify sweeps, single values, prime-pair searches.

Exit codes: 0 success, 1 verification failures or errors present, 2 usage or
configuration error.  JSON reports are canonical (sorted keys, fixed field
set) and byte-stable for a given config and version: the per-result
elapsed_ms field is zeroed in serialized output, with real timings going to
the console instead.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time

from ._version import __version__
from .bernoulli import EXACT_CAP, bernoulli_exact, bernoulli_mod_p_kummer, bernoulli_mod_pe
from .errors import CongruenceLabError
from .harmonic import TripleSumSpec, multi_harmonic_sum, z_mod_fast
from .modmath import PrimePowerModulus, ResidueClass, factorize
from .primepairs import chao_sequence, mutual_pairs, search_square_form
from .verifier import CHECK_IDS, CheckResult, Report, SweepConfig, run_suite

JOBS_ENV = "CONGRUENCE_LAB_JOBS"


def _int_arg(text: str) -> int:
    # plain int() already accepts underscored literals like 10_000
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc


def _prime_power_arg(text: str) -> PrimePowerModulus:
    """Accept 'p^e', 'p**e', or a literal prime power like 25."""
    try:
        if "^" in text:
            p, _, e = text.partition("^")
            return PrimePowerModulus(int(p), int(e))
        if "**" in text:
            p, _, e = text.partition("**")
            return PrimePowerModulus(int(p), int(e))
        n = int(text)
        factors = factorize(n).factors
        if len(factors) != 1:
            raise ValueError(f"{n} is not a prime power")
        return PrimePowerModulus(*factors[0])
    except (ValueError, CongruenceLabError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def parse_args(argv: list[str]) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="congruence-lab",
        description="Harmonic-sum congruence computations and verification sweeps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run congruence checks over parameter grids")
    p_verify.add_argument(
        "--checks",
        default=None,
        help=f"comma-separated check ids (default: all). Known: {', '.join(CHECK_IDS)}",
    )
    p_verify.add_argument("--bound", type=_int_arg, default=None, help="sweep bound on n")
    p_verify.add_argument("--jobs", type=_int_arg, default=None, help="worker processes")
    p_verify.add_argument("--json", default=None, metavar="PATH", help="write a JSON report")
    p_verify.add_argument("--verbose", action="store_true", help="show informational logging")

    p_z = sub.add_parser("zvalue", help="print Z(n) modulo M")
    p_z.add_argument("n", type=_int_arg)
    p_z.add_argument("--mod", type=_int_arg, default=None, help="modulus (default n)")
    p_z.add_argument("--naive", action="store_true", help="use the ordered enumeration path")

    p_b = sub.add_parser("bernoulli", help="print a Bernoulli number, exact or reduced")
    p_b.add_argument("k", type=_int_arg)
    p_b.add_argument("--mod", type=_prime_power_arg, default=None, metavar="P^E")

    p_p = sub.add_parser("pairs", help="prime-pair searches")
    mode = p_p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--square-limit", type=_int_arg, default=None, metavar="N")
    mode.add_argument("--mutual", action="store_true")
    p_p.add_argument("--terms", type=_int_arg, default=28, help="sequence terms for --mutual")
    p_p.add_argument("--brute-limit", type=_int_arg, default=10_000, help="scan bound for --mutual")
    p_p.add_argument("--csv", default=None, metavar="PATH")

    p_s = sub.add_parser("sequence", help="print the mutual-pair integer sequence")
    p_s.add_argument("count", type=_int_arg)

    args = parser.parse_args(argv)
    if args.command == "verify" and args.checks is not None:
        ids = tuple(c.strip() for c in args.checks.split(",") if c.strip())
        unknown = [c for c in ids if c not in CHECK_IDS]
        if unknown:
            parser.error(f"unknown check ids: {', '.join(unknown)}")
        args.checks = ids
    return args


def _result_dict(r: CheckResult) -> dict:
    d = {
        "id": r.check_id,
        "params": dict(r.params),
        "lhs": r.lhs.value,
        "rhs": r.rhs.value,
        "modulus": r.lhs.modulus,
        "pass": r.status == "pass",
        "status": r.status,
        "elapsed_ms": 0.0,  # zeroed: report bytes must not depend on wall time
    }
    if r.error is not None:
        d["error"] = r.error
    return d


def report_to_dict(report: Report) -> dict:
    return {
        "suite": report.suite,
        "version": report.version,
        "config": report.config,
        "results": [_result_dict(r) for r in report.results],
        "summary": dict(report.summary),
    }


def report_from_dict(data: dict) -> Report:
    results = [
        CheckResult(
            check_id=d["id"],
            params=dict(d["params"]),
            lhs=ResidueClass(d["lhs"], d["modulus"]),
            rhs=ResidueClass(d["rhs"], d["modulus"]),
            status=d["status"],
            elapsed_ms=d["elapsed_ms"],
            error=d.get("error"),
        )
        for d in data["results"]
    ]
    return Report(data["suite"], data["version"], data["config"], results, dict(data["summary"]))


def emit_report(report: Report, json_path: str | None = None) -> bytes:
    """Serialize the report as canonical JSON; write to a file or stdout."""
    payload = json.dumps(report_to_dict(report), sort_keys=True, indent=2) + "\n"
    data = payload.encode("utf-8")
    if json_path is None:
        sys.stdout.write(payload)
    else:
        with open(json_path, "wb") as fh:
            fh.write(data)
    return data


def _print_summary(report: Report, wall_s: float) -> None:
    by_check: dict[str, dict[str, int]] = {}
    for r in report.results:
        tally = by_check.setdefault(r.check_id, {"pass": 0, "fail": 0, "guarded": 0, "error": 0})
        tally[r.status] += 1
    for check_id in sorted(by_check):
        tally = by_check[check_id]
        extras = "".join(
            f"  {k}={tally[k]}" for k in ("fail", "guarded", "error") if tally[k]
        )
        print(f"{check_id:8s} pass={tally['pass']}{extras}")
    for r in report.results:
        if r.status in ("fail", "error"):
            detail = r.error if r.error else f"lhs={r.lhs.value} rhs={r.rhs.value} mod {r.lhs.modulus}"
            print(f"  {r.status.upper()} {r.check_id} {r.params}: {detail}")
    s = report.summary
    print(
        f"total: {s['pass']} pass, {s['fail']} fail, {s['guarded']} guarded, "
        f"{s['error']} error  [{wall_s:.1f} s]"
    )


def _cmd_verify(args: argparse.Namespace) -> int:
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    try:
        cfg = SweepConfig(
            checks=args.checks if args.checks else CHECK_IDS,
            bound=args.bound,
            jobs=jobs,
        )
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    start = time.perf_counter()
    report = run_suite(cfg)
    wall = time.perf_counter() - start
    _print_summary(report, wall)
    if args.json:
        emit_report(report, args.json)
    return 0 if report.summary["fail"] == 0 and report.summary["error"] == 0 else 1


def _cmd_zvalue(args: argparse.Namespace) -> int:
    n = args.n
    modulus = args.mod if args.mod is not None else n
    start = time.perf_counter()
    if args.naive:
        value = multi_harmonic_sum(TripleSumSpec(n, 3, n, modulus))
    else:
        value = z_mod_fast(n, modulus)
    elapsed = (time.perf_counter() - start) * 1000.0
    print(f"Z({n}) = {value.value} (mod {modulus})  [{elapsed:.1f} ms]")
    return 0


def _cmd_bernoulli(args: argparse.Namespace) -> int:
    k = args.k
    if args.mod is None:
        b = bernoulli_exact(k)
        print(f"B_{k} = {b}")
        return 0
    mm = args.mod
    if k <= EXACT_CAP:
        pv = bernoulli_mod_pe(k, mm)
        if pv.is_zero:
            print(f"B_{k} = 0")
        elif pv.valuation < 0:
            print(f"{mm.p} * B_{k} = {pv.unit.value} (mod {mm.modulus})  [valuation -1]")
        else:
            print(f"B_{k} = {pv.residue().value} (mod {mm.modulus})")
        return 0
    if mm.e == 1:
        r = bernoulli_mod_p_kummer(k, mm.p)
        print(f"B_{k} = {r.value} (mod {mm.p})  [Kummer reduction]")
        return 0
    print(f"B_{k} beyond the exact cap is only available mod p (e = 1)", file=sys.stderr)
    return 2


def _write_pairs_csv(path: str, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", "p", "q", "primality_method"])
        for rec in records:
            writer.writerow([rec.kind, rec.p, rec.q, rec.primality_method])


def _cmd_pairs(args: argparse.Namespace) -> int:
    if args.square_limit is not None:
        records = search_square_form(args.square_limit)
    else:
        records = mutual_pairs(args.terms, args.brute_limit)
    for rec in records:
        print(f"{rec.kind}: p={rec.p} q={rec.q} [{rec.primality_method}]")
    if args.csv:
        _write_pairs_csv(args.csv, records)
    return 0


def _cmd_sequence(args: argparse.Namespace) -> int:
    for value in chao_sequence(args.count).terms:
        print(value)
    return 0


_COMMANDS = {
    "verify": _cmd_verify,
    "zvalue": _cmd_zvalue,
    "bernoulli": _cmd_bernoulli,
    "pairs": _cmd_pairs,
    "sequence": _cmd_sequence,
}


def main(argv: list[str] | None = None) -> int:
    args = parse_args(sys.argv[1:] if argv is None else argv)
    try:
        return _COMMANDS[args.command](args)
    except CongruenceLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
