"""Command line interface: ``pslab verify | char | dump | cache``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 internal error.
JSON is the canonical report format; csv and table are projections of it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence

from . import __version__, ideals
from .algebra import enumerate_monomials, r_generator
from .cache import DimensionCache, code_version
from .characters import (
    DEFAULT_CONVENTION,
    CONVENTIONS,
    BivariateSeries,
    compare,
    difference_two_table,
    dimension_table,
    fermionic_sum,
    rogers_ramanujan_counts,
)
from .lattice import ModuleConfig, graded_basis, tensor_key_str

MAX_LEVEL = 4
CHECKS = ("presentation", "primed", "remark22", "lifting", "tau", "chain",
          "annihilation", "charge", "characters")
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
CSV_COLUMNS = ("check", "k", "i", "weight", "charge", "passed", "dim_monomials",
               "dim_ideal", "dim_kernel", "detail", "witness")


class UsageError(Exception):
    pass


def _parse_checks(text: str) -> List[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names:
        raise UsageError("no checks selected")
    if "all" in names:
        return list(CHECKS)
    bad = [n for n in names if n not in CHECKS]
    if bad:
        raise UsageError("unknown check(s) %s; choose from %s or all" % (", ".join(bad), ", ".join(CHECKS)))
    return [c for c in CHECKS if c in names]


def _indices(k: int, i_arg: str) -> List[int]:
    if i_arg == "all":
        return list(range(k + 1))
    try:
        i = int(i_arg)
    except ValueError:
        raise UsageError("--i must be an integer or 'all'")
    if not 0 <= i <= k:
        raise UsageError("--i must satisfy 0 <= i <= k")
    return [i]


def _validate_level(k: int):
    if not 1 <= k <= MAX_LEVEL:
        raise UsageError("--k must satisfy 1 <= k <= %d" % MAX_LEVEL)


# ---------------------------------------------------------------- verify

def _rows(objs) -> List[dict]:
    return [o.to_dict() for o in objs]


def _character_rows(k: int, i: int, order: int) -> List[dict]:
    dims = dimension_table(k, i, order)
    diff2 = difference_two_table(k, i, order)
    ferm = fermionic_sum(k, i, order, DEFAULT_CONVENTION)
    rr = rogers_ramanujan_counts(order) if (k, i) == (1, 0) else None
    summed = dims.charge_summed().ints()
    rows = []
    for n in range(order + 1):
        bad = [r for r in range(n + 1)
               if not dims.coefficient(r, n) == diff2.coefficient(r, n) == ferm.coefficient(r, n)]
        ok = not bad and (rr is None or rr[n] == summed[n])
        detail = "dim=%d" % summed[n]
        if rr is not None:
            detail += " rogers_ramanujan=%d" % rr[n]
        if bad:
            detail += " mismatched charges %s" % bad
        rows.append(ideals.CheckRow("characters", k, i, n, -1, ok, detail).to_dict())
    return rows


def run_task(task: tuple) -> List[dict]:
    """One independent unit of a verification sweep."""
    check, k, i, n, opts = task
    mc = opts.get("max_charge")
    w = [n]
    if check == "presentation":
        return _rows(ideals.verify_presentation(k, i, n, max_charge=mc, weights=w))
    if check == "primed":
        return _rows(ideals.verify_primed_presentation(k, n, max_charge=mc, weights=w))
    if check == "remark22":
        return _rows(ideals.verify_ideal_relations(k, n, max_charge=mc, weights=w))
    if check == "lifting":
        rows = _rows(ideals.verify_lifting_lemma(k, i, n, max_charge=mc, weights=w))
        if i == 0 and n == 0:
            rows = _rows(ideals.multinomial_rows(k)) + rows
        return rows
    if check == "tau":
        return _rows(ideals.verify_tau_lemma(k, n, max_charge=mc, weights=w))
    if check == "chain":
        return _rows(ideals.verify_kernel_chain(k, n, max_charge=mc, weights=w))
    if check == "charge":
        return _rows(ideals.verify_charge_bound(k, n, weights=w))
    if check == "annihilation":
        return _rows(ideals.verify_annihilation(k, opts["t_max"]))
    if check == "characters":
        return _character_rows(k, i, opts["max_weight"])
    raise ValueError("unknown check %r" % check)


def plan_tasks(k: int, indices: Sequence[int], checks: Sequence[str], max_weight: int, opts: dict) -> List[tuple]:
    tasks = []
    weights = range(max_weight + 1)
    for check in checks:
        if check in ("presentation", "lifting"):
            tasks += [(check, k, i, n, opts) for i in indices for n in weights]
        elif check == "primed":
            if k in indices:
                tasks += [(check, k, k, n, opts) for n in weights]
        elif check in ("remark22", "tau", "chain", "charge"):
            tasks += [(check, k, None, n, opts) for n in weights]
        elif check == "annihilation":
            tasks.append((check, k, None, None, opts))
        elif check == "characters":
            tasks += [(check, k, i, None, opts) for i in indices]
    return tasks


def run_tasks(tasks: List[tuple], jobs: int = 1) -> List[dict]:
    if jobs <= 1 or len(tasks) <= 1:
        chunks = [run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run_task, tasks))
    return [row for chunk in chunks for row in chunk]


def build_report(config: dict, checks: Sequence[str], rows: List[dict], timing: Optional[float] = None) -> dict:
    summary: Dict[str, dict] = {}
    for c in checks:
        summary[c] = {"pass": True, "rows": 0, "failed": 0}
    counterexample = None
    for r in rows:
        name = r["check"]
        name = {"presentation_primed": "primed", "ideal_chain": "remark22", "ideal_sum": "remark22",
                "rho_image": "remark22", "direct_sum": "remark22", "multinomial": "lifting",
                "kernel_chain": "chain", "charge_bound": "charge"}.get(name, name)
        s = summary.setdefault(name, {"pass": True, "rows": 0, "failed": 0})
        s["rows"] += 1
        if not r["passed"]:
            s["failed"] += 1
            s["pass"] = False
            if counterexample is None:
                counterexample = {key: r.get(key) for key in ("check", "k", "i", "weight", "charge", "witness", "detail")}
    report = {
        "tool": "pslab",
        "version": __version__,
        "code_version": code_version(),
        "config": config,
        "pass": all(s["pass"] for s in summary.values()),
        "checks": summary,
        "rows": rows,
        "counterexample": counterexample,
    }
    if timing is not None:
        report["timing"] = {"seconds": round(timing, 3)}
    return report


def render_verify(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for r in report["rows"]:
            writer.writerow(r)
        return buf.getvalue()
    cfg = report["config"]
    lines = ["pslab %s  k=%s i=%s max_weight=%s" % (report["version"], cfg["k"], cfg["i"], cfg["max_weight"])]
    width = max(len(c) for c in report["checks"]) if report["checks"] else 5
    for name, s in report["checks"].items():
        lines.append("  %-*s  %s  (%d rows, %d failed)" % (width, name, "PASS" if s["pass"] else "FAIL",
                                                        s["rows"], s["failed"]))
    ce = report["counterexample"]
    if ce:
        lines.append("first failure: %s k=%s i=%s at (weight %s, charge %s): %s"
                     % (ce["check"], ce["k"], ce["i"], ce["weight"], ce["charge"], ce["witness"] or ce["detail"]))
    lines.append("overall: %s" % ("PASS" if report["pass"] else "FAIL"))
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    _validate_level(args.k)
    if args.max_weight < 1:
        raise UsageError("--max-weight must be >= 1")
    if args.max_charge is not None and args.max_charge < 0:
        raise UsageError("--max-charge must be >= 0")
    checks = _parse_checks(args.checks)
    indices = _indices(args.k, args.i)
    t_max = args.t_max if args.t_max is not None else max(args.max_weight, args.k + 1)
    opts = {"max_charge": args.max_charge, "max_weight": args.max_weight, "t_max": t_max}
    config = {"k": args.k, "i": args.i, "max_weight": args.max_weight, "max_charge": args.max_charge,
              "checks": checks, "t_max": t_max}
    start = time.perf_counter()
    rows = run_tasks(plan_tasks(args.k, indices, checks, args.max_weight, opts), args.jobs)
    elapsed = time.perf_counter() - start if args.timing else None
    report = build_report(config, checks, rows, elapsed)
    _write(render_verify(report, args.format), args.output)
    return EXIT_OK if report["pass"] else EXIT_FAIL


# ---------------------------------------------------------------- char

def char_report(k: int, i: int, order: int, convention: str, cache: Optional[DimensionCache]) -> dict:
    hit = cache.get(k, i, order) if cache is not None else None
    if hit is not None:
        dims = BivariateSeries.from_json(hit, order)
    else:
        dims = dimension_table(k, i, order)
        if cache is not None:
            cache.put(k, i, order, dims.to_json())
    ferm = fermionic_sum(k, i, order, convention)
    diff2 = difference_two_table(k, i, order)
    rr = rogers_ramanujan_counts(order) if (k, i) == (1, 0) else None
    d_sum, f_sum, t_sum = (s.charge_summed().ints() for s in (dims, ferm, diff2))
    table = []
    for n in range(order + 1):
        row = {"weight": n, "dimension": d_sum[n], "fermionic": f_sum[n], "difference_two": t_sum[n]}
        if rr is not None:
            row["rogers_ramanujan"] = rr[n]
        table.append(row)
    match = {"fermionic": compare(dims, ferm).equal, "difference_two": compare(dims, diff2).equal}
    if rr is not None:
        match["rogers_ramanujan"] = rr == d_sum
    cfg = ModuleConfig(k, i)
    return {
        "k": k, "i": i, "order": order, "convention": convention,
        "conformal_offset": str(cfg.conformal_offset), "charge_offset": str(cfg.charge_offset),
        "series": {"dimension": dims.to_json(), "fermionic": ferm.to_json(), "difference_two": diff2.to_json()},
        "match": match,
        "table": table,
    }


def render_char(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        cols = ["k", "i", "weight", "dimension", "difference_two", "fermionic", "rogers_ramanujan"]
        writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for res in doc["results"]:
            for row in res["table"]:
                writer.writerow(dict(row, k=res["k"], i=res["i"]))
        return buf.getvalue()
    lines = []
    for res in doc["results"]:
        has_rr = "rogers_ramanujan" in res["match"]
        lines.append("k=%d i=%d  order q^%d  convention=%s  (absolute weight offset %s)"
                     % (res["k"], res["i"], res["order"], res["convention"], res["conformal_offset"]))
        head = "%6s %10s %10s %10s" % ("weight", "dimension", "diff-two", "fermionic")
        if has_rr:
            head += " %10s" % "RR-count"
        lines.append(head)
        for row in res["table"]:
            line = "%6d %10d %10d %10d" % (row["weight"], row["dimension"], row["difference_two"], row["fermionic"])
            if has_rr:
                line += " %10d" % row["rogers_ramanujan"]
            lines.append(line)
        lines.append("match: " + ", ".join("%s=%s" % kv for kv in res["match"].items()))
        lines.append("")
    return "\n".join(lines)


def cmd_char(args) -> int:
    _validate_level(args.k)
    if args.max_weight < 1:
        raise UsageError("--max-weight must be >= 1")
    indices = _indices(args.k, args.i)
    cache = None if args.no_cache else DimensionCache(args.cache)
    results = [char_report(args.k, i, args.max_weight, args.convention, cache) for i in indices]
    if cache is not None:
        cache.save()
    doc = {"tool": "pslab", "version": __version__, "code_version": code_version(), "results": results}
    _write(render_char(doc, args.format), args.output)
    ok = all(all(r["match"].values()) for r in results)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- dump

def dump_lines(args) -> List[str]:
    _validate_level(args.k)
    primed = args.primed
    if args.what == "generators":
        if args.t is None:
            raise UsageError("dump generators needs --t")
        p = r_generator(args.k, args.t, 1 if primed else 0) if args.t >= 0 else None
        return [str(p)] if p else []
    if args.weight is None or args.charge is None:
        raise UsageError("dump %s needs --weight and --charge" % args.what)
    n, c = args.weight, args.charge
    if n < 0 or c < 0:
        return []
    i = int(args.i) if args.i not in (None, "all") else 0
    if not 0 <= i <= args.k:
        raise UsageError("--i must satisfy 0 <= i <= k")
    if primed and i != args.k:
        raise UsageError("--primed needs i = k")
    mp = 2 if primed else 1
    if args.what == "basis":
        if args.target:
            return [tensor_key_str(key) for key in graded_basis(ModuleConfig(args.k, i), n, c)]
        from .algebra import monomial_str
        return [monomial_str(m) for m in enumerate_monomials(n, c, mp)]
    if args.what == "kernel":
        s = ideals.kernel_piece(ModuleConfig(args.k, i), n, c, primed)
    else:
        s = ideals.ideal_piece(args.k, args.k if primed else i, n, c, primed)
    return [str(p) for p in ideals.basis_polys(s, n, c, mp)]


def cmd_dump(args) -> int:
    lines = dump_lines(args)
    _write("".join(line + "\n" for line in lines), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- cache

def cmd_cache(args) -> int:
    cache = DimensionCache(args.cache)
    if args.action == "clear":
        n = len(cache.entries)
        cache.clear()
        _write("cleared %d entries from %s\n" % (n, cache.path), None)
    else:
        lines = ["path: %s" % cache.path, "code version: %s" % code_version(),
                 "entries: %d (stale dropped: %d)" % (len(cache.entries), max(cache.stale, 0))]
        lines += ["  " + key for key in sorted(cache.entries)]
        _write("\n".join(lines) + "\n", None)
    return EXIT_OK


def _write(text: str, path: Optional[str]):
    if path:
        with open(path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pslab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version="pslab " + __version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="verify the presentation and supporting lemmas")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--i", default="all")
    v.add_argument("--max-weight", type=int, required=True)
    v.add_argument("--max-charge", type=int, default=None)
    v.add_argument("--checks", default="all", help="comma list of %s, or all" % ", ".join(CHECKS))
    v.add_argument("--t-max", type=int, default=None, help="largest t for the annihilation check")
    v.add_argument("--format", choices=("json", "csv", "table"), default="table")
    v.add_argument("--output", "-o")
    v.add_argument("--jobs", "-j", type=int, default=1)
    v.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("char", help="dimension tables against fermionic and difference-two counts")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--i", default="0")
    c.add_argument("--max-weight", type=int, required=True)
    c.add_argument("--convention", choices=CONVENTIONS, default=DEFAULT_CONVENTION)
    c.add_argument("--format", choices=("json", "csv", "table"), default="table")
    c.add_argument("--output", "-o")
    c.add_argument("--cache", default=None)
    c.add_argument("--no-cache", action="store_true")
    c.set_defaults(func=cmd_char)

    d = sub.add_parser("dump", help="print bases, generators, kernels or ideals at one bigrade")
    d.add_argument("what", choices=("basis", "generators", "kernel", "ideal"))
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--i", default="0")
    d.add_argument("--t", type=int)
    d.add_argument("--weight", type=int)
    d.add_argument("--charge", type=int)
    d.add_argument("--primed", action="store_true", help="work in U(n_{<=-2}) with I' and f'")
    d.add_argument("--target", action="store_true", help="basis: list the lattice-module basis instead")
    d.add_argument("--output", "-o")
    d.set_defaults(func=cmd_dump)

    k = sub.add_parser("cache", help="inspect or clear the dimension cache")
    k.add_argument("action", choices=("inspect", "clear"))
    k.add_argument("--cache", default=None)
    k.set_defaults(func=cmd_cache)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        return args.func(args)
    except UsageError as e:
        sys.stderr.write("pslab: usage error: %s\n" % e)
        return EXIT_USAGE
    except SystemExit as e:
        # --help / --version
        return int(e.code or 0)
    except Exception as e:  # noqa: BLE001
        sys.stderr.write("pslab: internal error: %s: %s\n" % (type(e).__name__, e))
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
