"""Script entry point: render one figure job from a JSON file."""

from __future__ import annotations

import argparse
import sys

from .jobs import JobError, SchemaError, load_job
from .render import render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sphlrd-figures",
        description="Render a figure from experiment CSV artifacts",
    )
    parser.add_argument("job", help="path to a figure job JSON file")
    args = parser.parse_args(argv)
    try:
        out = render(load_job(args.job))
    except (JobError, SchemaError) as exc:
        print(f"figure error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
