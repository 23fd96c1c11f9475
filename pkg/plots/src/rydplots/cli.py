"""Command line: render a figure spec, optionally dumping the plotted data."""
from __future__ import annotations

import argparse
import sys

from .csvdata import CsvFormatError, MissingColumnError
from .figspec import FigureSpecError, load_figure_spec
from .render import dump_plotted_data, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="rydladder-plot",
        description="Render publication-style figures from rydladder CSV output.")
    parser.add_argument("--spec", required=True, help="figure spec file")
    parser.add_argument("--out", help="output image path (overrides the figure spec)")
    parser.add_argument("--dump-plotted-data", metavar="DIR",
                        help="also write the exact plotted columns as CSVs into DIR")
    args = parser.parse_args(argv)

    try:
        spec = load_figure_spec(args.spec)
        path = render(spec, output=args.out)
        print(f"wrote {path}")
        if args.dump_plotted_data:
            for dump in dump_plotted_data(spec, args.dump_plotted_data):
                print(f"wrote {dump}")
    except (FigureSpecError, CsvFormatError, MissingColumnError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
