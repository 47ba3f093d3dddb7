"""``shlie verify`` and friends.

Exit codes: 0 every selected suite passed (or was skipped), 1 some check
failed, 3 nothing failed but some check was undecided at the caps, 4 the
input could not be read. Argument errors exit with 2 (argparse).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .kernels import BACKEND
from .structure_io import StructureError, fixture_dir, load
from .suites import SUITES, RunConfig, run_suite

SCHEMA_VERSION = 1
EXIT = {"pass": 0, "fail": 1, "undecided": 3}
EXIT_INPUT = 4


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shlie", description="Exact verifier for gauge algebras and their L-infinity brackets.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites on a structure file")
    v.add_argument("structure", help="TOML structure file, or the name of a bundled fixture")
    v.add_argument("--suite", action="append", choices=SUITES + ("all",),
                   help="suite to run; repeatable (default: all)")
    v.add_argument("--arity-cap", type=_positive, default=4, help="largest word length checked (default 4)")
    v.add_argument("--jet-order", type=_positive, default=2,
                   help="derivatives of the field equations used in shell membership (default 2)")
    v.add_argument("--ideal-degree", type=_positive, default=4,
                   help="largest multiplier degree in shell membership (default 4)")
    v.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    v.add_argument("--jobs", type=_positive, default=1, help="run suites in parallel processes")

    sub.add_parser("fixtures", help="list the bundled structure files")

    b = sub.add_parser("brackets", help="print the higher brackets of a structure")
    b.add_argument("structure")
    return p


def resolve(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    cand = fixture_dir() / (name if name.endswith(".toml") else name + ".toml")
    if cand.exists():
        return cand
    return path  # load() reports the missing file


def _run_one(args):
    name, path, cfg = args
    return run_suite(name, load(path), cfg)


def verify(path: Path, suites, cfg: RunConfig) -> dict:
    t0 = time.perf_counter()
    st = load(path)
    if cfg.jobs > 1 and len(suites) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(suites))) as pool:
            results = list(pool.map(_run_one, [(s, path, cfg) for s in suites]))
    else:
        results = [run_suite(s, st, cfg) for s in suites]
    states = [r["status"] for r in results]
    overall = "fail" if "fail" in states else "undecided" if "undecided" in states else "pass"
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "shlie", "version": __version__, "backend": BACKEND},
        "structure": {"path": str(path), "kind": st.kind, "name": st.name or path.stem},
        "config": {"suites": list(suites), "arity_cap": cfg.arity_cap, "jet_order": cfg.jet_order,
                   "ideal_degree": cfg.ideal_degree, "jobs": cfg.jobs},
        "status": overall,
        "suites": results,
        "seconds": round(time.perf_counter() - t0, 3),
    }


def render_text(report: dict) -> str:
    s = report["structure"]
    lines = [f"{s['name']} ({s['kind']}) from {s['path']}"]
    for r in report["suites"]:
        lines.append(f"  {r['name']:<13} {r['status'].upper():<9} {r['seconds']:.2f}s")
        for c in r["checks"]:
            tag = " (informational)" if c.get("informational") else ""
            lines.append(f"    {c['status']:<9} {c['name']}{tag}")
    lines.append(f"overall: {report['status'].upper()} in {report['seconds']:.2f}s")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "fixtures":
        for f in sorted(fixture_dir().glob("*.toml")):
            print(f.stem)
        return 0
    if args.command == "brackets":
        from .linfty import build_D, extract_brackets

        try:
            st = load(resolve(args.structure))
        except StructureError as exc:
            print(f"shlie: error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        fam = extract_brackets(build_D(st.gauge))
        print(json.dumps(fam.serialize(), indent=2, sort_keys=True))
        return 0
    suites = list(SUITES) if not args.suite or "all" in args.suite else list(dict.fromkeys(args.suite))
    cfg = RunConfig(args.arity_cap, args.jet_order, args.ideal_degree, args.jobs)
    try:
        report = verify(resolve(args.structure), suites, cfg)
    except StructureError as exc:
        print(f"shlie: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(report, indent=2) if args.json else render_text(report))
    return EXIT[report["status"]]


if __name__ == "__main__":
    sys.exit(main())
