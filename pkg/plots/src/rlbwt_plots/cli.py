"""Command-line figure generation from harness CSVs.

Usage: plots <raincloud|trace|boxgrid> --in CSV [CSV ...] --out IMAGE
             [--baseline C] [--seed N]

Exit codes: 0 success, 1 usage error, 2 runtime error (bad schema, I/O).
"""

from __future__ import annotations

import argparse
import sys

from .figures import KINDS, PlotRequest, render
from .io import SchemaError

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plots", description=__doc__)
    parser.add_argument("kind", choices=sorted(KINDS))
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        help="input CSV file(s) in the harness schemas")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--baseline", type=float, default=None,
                        help="horizontal reference line (e.g. the ASCII ordering's C)")
    parser.add_argument("--seed", type=int, default=0, help="jitter seed")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    request = PlotRequest(
        kind=args.kind,
        inputs=tuple(args.inputs),
        out=args.out,
        baseline=args.baseline,
        seed=args.seed,
    )
    try:
        out = render(request)
    except (SchemaError, OSError) as exc:
        print(f"plots: error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
