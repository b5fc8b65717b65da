"""`plot_fractions`: render a xenoclass fraction CSV as a figure."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .render import PlotSpec, render
from .schema import CLASS_COLUMNS, SchemaError


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="plot_fractions",
        description="Grouped boxplot/mean figure from a fraction-table "
                    "CSV written by `xenoclass stats`.")
    ap.add_argument("--table", required=True, choices=sorted(CLASS_COLUMNS))
    ap.add_argument("--in", dest="csv_in", required=True,
                    metavar="CSV", help="summary CSV (stats --csv)")
    ap.add_argument("--scenarios", metavar="CSV",
                    help="per-scenario CSV (stats --scenario-csv) for "
                         "real boxplots; bars of the means otherwise")
    ap.add_argument("--out", required=True, metavar="IMAGE")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(args.csv_in, args.table, args.out,
                    scenario_csv=args.scenarios)
    try:
        render(spec)
    except SchemaError as e:
        print(f"plot_fractions: schema error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"plot_fractions: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
