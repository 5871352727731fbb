"""Plot command: turn a harness summary CSV into the two accuracy charts."""

from __future__ import annotations

import argparse
import sys

from .render import NoDataError, SchemaError, render_figures


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="edgedp-plot", description=__doc__
    )
    parser.add_argument("--in", dest="summary", required=True,
                        help="summary CSV from the experiment harness")
    parser.add_argument("--outdir", required=True, help="directory for the images")
    args = parser.parse_args(argv)
    try:
        error_path, variance_path = render_figures(args.summary, args.outdir)
    except (SchemaError, NoDataError, OSError) as exc:
        sys.stderr.write(f"edgedp-plot: error: {exc}\n")
        return 2
    print(error_path)
    print(variance_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
