"""Command-line front end.

    hidacur <kind> --config <path> [--out <dir>] [--seed <u64>]

Kinds map one-to-one onto the experiment runners.  The run writes
``<kind>.json`` (and for some kinds a tidy ``<kind>.csv``) into ``--out``;
records are idempotent given the config apart from the wall-time field.

Exit codes:
    0   success
    2   bad configuration (unreadable/invalid config, bad kind, bad values)
    3   numeric failure (budget exhausted, unstable derivative, or a
        requested check that did not meet its tolerance)
    4   evaluation at a nonexistent object (x = 0 with d > 1) requested as
        if it existed; the ``diverge`` kind reports that regime as a
        successful negative result instead
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (IntegrandFailureError, NonexistenceError,
                     QuadratureBudgetError, UnstableDerivativeError)
from .experiments import EXPERIMENT_KINDS, run_experiment

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_NONEXISTENT = 4


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hidacur",
        description="Numerics for stochastic currents of Brownian motion.")
    parser.add_argument("kind", choices=sorted(EXPERIMENT_KINDS),
                        help="experiment kind to run")
    parser.add_argument("--config", required=True,
                        help="path to a JSON config for the chosen kind")
    parser.add_argument("--out", default=".",
                        help="directory for the result record (default: cwd)")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the config seed (unsigned 64-bit)")
    return parser


def _write_outputs(out_dir, kind, record):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{kind}.json")
    with open(path, "w") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")
    rows = record.get("rows")
    if rows:
        csv_path = os.path.join(out_dir, f"{kind}.csv")
        keys = sorted({k for row in rows for k in row})
        with open(csv_path, "w") as fh:
            fh.write(",".join(keys) + "\n")
            for row in rows:
                fh.write(",".join(json.dumps(row.get(k, "")).replace(",", ";")
                                  for k in keys) + "\n")
    return path


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)

    try:
        with open(args.config) as fh:
            knobs = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"hidacur: cannot read config {args.config}: {exc}",
              file=sys.stderr)
        return EXIT_CONFIG
    if not isinstance(knobs, dict):
        print("hidacur: config must be a JSON object", file=sys.stderr)
        return EXIT_CONFIG
    if "kind" in knobs and knobs["kind"] != args.kind:
        print(f"hidacur: config is for kind {knobs['kind']!r}, "
              f"not {args.kind!r}", file=sys.stderr)
        return EXIT_CONFIG
    if args.seed is not None:
        if not 0 <= args.seed < 2 ** 64:
            print("hidacur: --seed must fit in an unsigned 64-bit integer",
                  file=sys.stderr)
            return EXIT_CONFIG
        knobs = dict(knobs)
        knobs["seed"] = args.seed
        # the mc kind nests per-case seeds; an explicit override reseeds all
        if "cases" in knobs:
            knobs["cases"] = [dict(c, seed=args.seed + k)
                              for k, c in enumerate(knobs["cases"])]

    try:
        record = run_experiment(args.kind, knobs)
    except NonexistenceError as exc:
        print(f"hidacur: nonexistent object: {exc}", file=sys.stderr)
        return EXIT_NONEXISTENT
    except (QuadratureBudgetError, UnstableDerivativeError,
            IntegrandFailureError) as exc:
        print(f"hidacur: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (KeyError, TypeError, ValueError) as exc:
        print(f"hidacur: invalid config for kind {args.kind!r}: {exc}",
              file=sys.stderr)
        return EXIT_CONFIG

    path = _write_outputs(args.out, args.kind, record)
    status = "pass" if record.get("passed", True) else "FAIL"
    print(f"{args.kind}: {status} ({record['wall_time_s']:.2f}s) -> {path}")
    if not record.get("passed", True):
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
