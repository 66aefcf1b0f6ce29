"""Command-line entry point.

Every subcommand except ``run``, ``list`` and ``p1`` runs the plan steps
of that kind from ``--scenario`` (or one default step when the plan has
none).  Exit status: 0 if every check passes, 1 if any fails, 2 on
usage or scenario errors.
"""

from __future__ import annotations

import argparse
import re
import sys

from .cech_p1 import min_truncation
from .linalg import Field
from .report import emit
from .runner import run_p1, run_scenario
from .scenario import CHECK_KINDS, ScenarioError, load_scenario, shipped_scenarios

__all__ = ["main", "parse_window"]


def parse_window(text):
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"window must look like lo..hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty window {text!r}")
    return lo, hi


def _common(p, scenario=True):
    if scenario:
        p.add_argument("--scenario", required=True,
                       help="scenario file, or the name of a shipped scenario")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled pairs and data")
    p.add_argument("--window", type=parse_window, default=None, help="degree window lo..hi")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timings", action="store_true", help="include elapsed times (breaks byte-identity)")
    p.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")


def build_parser():
    ap = argparse.ArgumentParser(prog="milnor-descent",
                                 description="Exact checks of Milnor descent for cohesive modules.")
    sub = ap.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("run", help="run the whole plan of a scenario"))
    helps = {
        "validate": "curved dga, map, square, module and datum validators",
        "cohom": "hom complex cohomology of module pairs",
        "restrict": "restriction to the fiber product",
        "patch": "Milnor patching and gluing round trips",
        "atilde": "the adjunction Hom(R s, x) = Hom(s, A~ x) and its unit",
        "verify-descent": "full faithfulness of restriction and gluing",
        "mayer-vietoris": "short and long exact sequences of hom complexes",
    }
    for kind in CHECK_KINDS:
        if kind == "p1":
            continue
        _common(sub.add_parser(kind, help=helps[kind]))
    p = sub.add_parser("p1", help="twisted two-chart complex on the projective line")
    _common(p, scenario=False)
    p.add_argument("--scenario", default=None, help="run the p1 steps of this scenario instead")
    p.add_argument("--j1", type=int, default=2)
    p.add_argument("--j2", type=int, default=0)
    p.add_argument("--N", type=int, action="append", default=None,
                   help="truncation degree (repeatable; default 4 and 6, raised to the stable minimum)")
    p.add_argument("--field", default="Q", help="field tag, Q or Fp")
    sub.add_parser("list", help="list the shipped scenarios")
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "list":
        print("\n".join(shipped_scenarios()))
        return 0
    try:
        if args.command == "p1" and args.scenario is None:
            need = min_truncation(args.j1, args.j2)
            base = max(4, need)
            Ns = args.N or [base, base + 2]
            if min(Ns) < need:
                raise ValueError(f"truncation {min(Ns)} too small for twists "
                                 f"({args.j1}, {args.j2}): need N >= {need}")
            rep = run_p1(args.j1, args.j2, Ns, Field.from_tag(args.field), args.window)
        else:
            sc = load_scenario(args.scenario)
            only = None if args.command == "run" else args.command
            rep = run_scenario(sc, args.seed, args.window, only)
            rep.seed = args.seed
    except (ScenarioError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = emit(rep, args.format, args.timings)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
