"""Command line front end.

`zeta eval` computes the closed-form zeta value or a modified Euler factor
for one weight; `zeta verify` runs the identity suites over a grid.
Results print as text or JSON; exact values always carry their canonical
term list plus a high-precision decimal.
"""

import argparse
import json
import sys

from .constants import euler_factor, zeta_closed_form
from .constructions import WeightData
from .verify import DEFAULT_SEED, SUITES, run_suite


def _parse_t(raw):
    try:
        return tuple(int(x) for x in raw.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected a comma-separated integer list, got %r" % raw)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zeta",
        description="Exact archimedean zeta values and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a closed form for one weight")
    ev.add_argument("what", choices=["zeta", "euler+", "euler-"])
    ev.add_argument("--n", type=int, required=True)
    ev.add_argument("--k", type=int)
    ev.add_argument("--t", type=_parse_t, required=True,
                    help="comma-separated weight entries, e.g. 4,3")
    ev.add_argument("--s", type=int, help="integer argument of the factor")
    ev.add_argument("--json", action="store_true")
    ev.add_argument("--precision", type=int, default=30)
    ev.add_argument("--out", help="write the report to a file as well")

    vf = sub.add_parser("verify", help="run an identity suite over a grid")
    vf.add_argument("suite", choices=list(SUITES) + ["all"])
    vf.add_argument("--n", type=int, help="restrict to a single weight")
    vf.add_argument("--k", type=int)
    vf.add_argument("--t", type=_parse_t)
    vf.add_argument("--seed", default=str(DEFAULT_SEED))
    vf.add_argument("--grid-n", type=int)
    vf.add_argument("--grid-k", type=int)
    vf.add_argument("--grid-deg", "--tmax", type=int, dest="grid_deg")
    vf.add_argument("--json", action="store_true")
    vf.add_argument("--precision", type=int, default=30)
    vf.add_argument("--out", help="write the report to a file as well")
    return parser


def _emit(text, out):
    print(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _weight(args, parser, k_default=None):
    k = args.k if args.k is not None else k_default
    if k is None:
        parser.error("--k is required")
    try:
        return WeightData(args.n, k, args.t)
    except ValueError as exc:
        parser.error(str(exc))


def cmd_eval(args, parser):
    if args.what == "zeta":
        w = _weight(args, parser)
        value = zeta_closed_form(w).value
    else:
        if args.s is None:
            parser.error("--s is required for euler factors")
        w = _weight(args, parser, k_default=args.t[-1] if args.t else None)
        try:
            value = euler_factor(w, args.s, args.what[-1])
        except ValueError as exc:
            parser.error(str(exc))
    doc = {
        "what": args.what, "n": w.n, "k": w.k, "t": list(w.t),
        "s": args.s,
        "terms": [{"re": str(c.re), "im": str(c.im), "e2": e2, "epi": epi}
                  for (e2, epi), c in value.sorted_terms()],
        "render": value.render(),
        "decimal": value.to_decimal(args.precision),
    }
    if args.json:
        _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
    else:
        _emit("%s = %s = %s" % (args.what, doc["render"], doc["decimal"]),
              args.out)
    return 0


def cmd_verify(args, parser):
    weights = None
    if args.n is not None or args.k is not None or args.t is not None:
        if args.n is None or args.k is None or args.t is None:
            parser.error("give --n, --k and --t together")
        weights = [_weight(args, parser)]
    reports = run_suite(args.suite, weights=weights, seed=args.seed,
                        grid_n=args.grid_n, grid_k=args.grid_k,
                        grid_deg=args.grid_deg)
    failed = sum(r.status == "fail" for r in reports)
    if args.json:
        text = json.dumps([r.to_dict(args.precision) for r in reports],
                          indent=2, sort_keys=True)
    else:
        lines = [r.line() for r in reports]
        lines.append("%d case(s): %d pass, %d fail, %d skipped" % (
            len(reports),
            sum(r.status == "pass" for r in reports), failed,
            sum(r.status == "skipped-budget" for r in reports)))
        text = "\n".join(lines)
    _emit(text, args.out)
    return 1 if failed else 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "eval":
        return cmd_eval(args, parser)
    return cmd_verify(args, parser)


if __name__ == "__main__":
    sys.exit(main())
