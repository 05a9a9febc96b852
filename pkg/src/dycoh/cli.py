"""Command line front end.

    dycoh validate --config job.json
    dycoh betti    --config job.json [--equivariant] [--max-degree N]
    dycoh check    --config job.json --suite weak-comp [--seed S] [--samples K]
    dycoh report   --config job.json

Exit status: 0 when every check passes, 1 when one fails, 2 for an invalid
configuration.  ``report.json`` is always written to ``--out`` (the current
directory by default); betti tables also go to CSV files.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from . import __version__
from .backend import MemoryCapError
from .cohomology import betti_numbers, check_gerstenhaber_equivariant, check_graded_commutativity
from .comp import check_complex, check_derivation, check_dga, check_equivariant, check_recovery, check_weak_comp
from .config import ConfigError, JobConfig, load_config
from .hopf import HopfBackend, validate_hopf, validate_yd_coalgebra
from .report import CheckReport
from .vecg import validate_center_coalgebra

SUITES = (
    "complex",
    "cup-derivation",
    "weak-comp",
    "recovery",
    "dga",
    "equivariant",
    "graded-commutativity",
    "gerstenhaber",
)


def _graded(b, cfg: JobConfig, equivariant: bool) -> CheckReport:
    rep = CheckReport("graded-commutativity", meta={"equivariant": equivariant, "pairs": {}})
    for m in range(1, cfg.max_degree):
        for n in range(1, cfg.max_degree + 1 - m):
            part = check_graded_commutativity(b, m, n, restrict_equivariant=equivariant)
            rep.meta["pairs"][f"{m},{n}"] = part.meta["pairs"]
            rep.merge(part)
    return rep


def _equivariant(b, cfg: JobConfig) -> CheckReport:
    rep = check_equivariant(b, cfg.max_degree, cfg.samples, cfg.seed)
    return rep.merge(check_weak_comp(b, cfg.max_degree + 2, cfg.samples, cfg.seed, mode="full"))


def run_suite(name: str, cfg: JobConfig, equivariant: bool = False) -> CheckReport:
    """Run one named suite; degree budgets are derived from ``cfg.max_degree``."""
    b, d, k, s = cfg.backend(), cfg.max_degree, cfg.samples, cfg.seed
    if name == "complex":
        return check_complex(b, d)
    if name == "cup-derivation":
        return check_derivation(b, d, k, s)
    if name == "weak-comp":
        return check_weak_comp(b, d + 2, k, s)
    if name == "recovery":
        return check_recovery(b, d, k, s)
    if name == "dga":
        return check_dga(b, d, k, s)
    if name == "equivariant":
        return _equivariant(b, cfg)
    if name == "graded-commutativity":
        return _graded(b, cfg, equivariant)
    if name == "gerstenhaber":
        return check_gerstenhaber_equivariant(b, d, k, s)
    raise ValueError(f"unknown suite {name!r}")


def validate(cfg: JobConfig) -> CheckReport:
    b = cfg.backend()
    if isinstance(b, HopfBackend):
        rep = CheckReport("validate")
        rep.merge(validate_hopf(b.hopf)).merge(validate_yd_coalgebra(b.hopf, b.coefficient))
        return rep
    rep = validate_center_coalgebra(b.coefficient)
    rep.suite = "validate"
    return rep


def _write_csv(path: str, betti: list[int]):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["degree", "dimension"])
        for n, v in enumerate(betti):
            w.writerow([n, v])


def _dump(path: str, doc: dict):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dycoh", description="Exact Davydov-Yetter cohomology computations and checks.")
    p.add_argument("--version", action="version", version=f"dycoh {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("validate", "check the structure axioms of the input data"),
        ("betti", "compute the cohomology table"),
        ("check", "run one identity suite"),
        ("report", "validate, compute both betti tables and run every suite"),
    ):
        c = sub.add_parser(name, help=help_text)
        c.add_argument("--config", required=True, help="JSON job file")
        c.add_argument("--max-degree", type=int, dest="max_degree")
        c.add_argument("--seed", type=int)
        c.add_argument("--samples", type=int)
        c.add_argument("--field", help="Q, F<p> or GF(<p>); overrides the config")
        c.add_argument("--out", default=".", help="directory for report.json and CSV tables")
        c.add_argument("--equivariant", action="store_true", help="work in the equivariant subcomplex")
        c.add_argument("--timings", action="store_true", help="record wall times (the report is then not reproducible byte for byte)")
        if name == "check":
            c.add_argument("--suite", required=True, choices=SUITES)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    os.makedirs(args.out, exist_ok=True)
    report_path = os.path.join(args.out, "report.json")
    doc: dict = {"tool": "dycoh", "version": __version__, "command": args.command}
    overrides = {"max_degree": args.max_degree, "seed": args.seed, "samples": args.samples, "field": args.field}
    try:
        cfg = load_config(args.config, overrides)
        doc["config_sha256"] = cfg.digest
        doc["config"] = cfg.raw
        doc["backend"] = cfg.backend().describe()
        status = _execute(args, cfg, doc)
    except (ConfigError, MemoryCapError) as exc:
        err = exc if isinstance(exc, ConfigError) else ConfigError(str(exc), "/max_degree")
        doc["error"] = {"message": err.message, "pointer": err.pointer}
        doc["passed"] = False
        _dump(report_path, doc)
        print(f"config error at {err.pointer}: {err.message}", file=sys.stderr)
        return 2
    _dump(report_path, doc)
    return status


def _execute(args, cfg: JobConfig, doc: dict) -> int:
    timings: dict[str, float] = {}
    suites: list[CheckReport] = []

    def timed(label, fn):
        t0 = time.perf_counter()
        out = fn()
        timings[label] = round(time.perf_counter() - t0, 3)
        return out

    if args.command in ("validate", "report"):
        suites.append(timed("validate", lambda: validate(cfg)))
    if args.command == "betti":
        key = "equivariant" if args.equivariant else "full"
        betti = timed("betti", lambda: betti_numbers(cfg.backend(), cfg.max_degree, args.equivariant))
        doc["betti"] = betti
        doc["equivariant"] = args.equivariant
        _write_csv(os.path.join(args.out, "betti.csv"), betti)
        print(f"betti ({key}): {betti}")
    if args.command == "report":
        full = timed("betti", lambda: betti_numbers(cfg.backend(), cfg.max_degree, False))
        eq = timed("betti equivariant", lambda: betti_numbers(cfg.backend(), cfg.max_degree, True))
        doc["betti"], doc["equivariant_betti"] = full, eq
        _write_csv(os.path.join(args.out, "betti.csv"), full)
        _write_csv(os.path.join(args.out, "betti_equivariant.csv"), eq)
        print(f"betti: {full}")
        print(f"betti (equivariant): {eq}")
    names = [args.suite] if args.command == "check" else (SUITES if args.command == "report" else ())
    for name in names:
        suites.append(timed(name, lambda: run_suite(name, cfg, args.equivariant)))

    for rep in suites:
        for line in rep.summary_lines():
            print(line)
    passed = all(r.passed for r in suites)
    doc["suites"] = [r.to_dict() for r in suites]
    doc["passed"] = passed
    if args.timings:
        doc["wall_time_s"] = timings
    print("PASS" if passed else "FAIL")
    return 0 if passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
