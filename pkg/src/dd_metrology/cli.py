"""Command-line front end: ``dd-metrology {figure,sweep,check}``.

Exit codes: 0 success, 1 usage or input error, 2 numeric failure.
"""
import argparse
import os
import sys

from . import checks, experiments
from .errors import InvalidArgument, NumericFailure

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for numeric failure here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def parse_pairs(items, source="--set"):
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"{source}: expected key=value, got {item!r}")
        out[key.strip()] = val.strip()
    return out


def read_config(path):
    """Flat ``key = value`` file; blank lines and ``#`` comments ignored."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc.strerror or exc}") from None
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return parse_pairs(lines, source=path)


def plot_script(csv_name, dataset, title):
    cols = list(dataset.columns)
    x = cols[0]
    lines = [
        f"# gnuplot script for {csv_name}",
        "set datafile separator ','",
        "set datafile commentschars '#'",
        "set key autotitle columnhead outside",
        f"set title '{title}'",
        f"set xlabel '{'N' if x == 'N' else 'omega_c t'}'",
        "set grid",
    ]
    series = [f"'{csv_name}' using 1:{k} with lines" + (" dashtype 2" if "PDD" in c else "")
              for k, c in enumerate(cols[1:], start=2)]
    lines.append("plot " + ", \\\n     ".join(series))
    lines.append("pause mouse close")
    return "\n".join(lines) + "\n"


def write_outputs(dataset, out_dir, stem, title):
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    dataset.to_csv(csv_path)
    with open(os.path.join(out_dir, f"{stem}.plot"), "w", newline="\n") as fh:
        fh.write(plot_script(f"{stem}.csv", dataset, title))
    return csv_path


def _cmd_figure(args):
    overrides = parse_pairs(args.set)
    ds = experiments.run_figure(args.figure_id, overrides)
    path = write_outputs(ds, args.out, args.figure_id, f"figure {args.figure_id}")
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_sweep(args):
    values = read_config(args.config) if args.config else {}
    values.update(parse_pairs(args.set))
    cfg = experiments.SweepConfig.from_flat(values)
    ds = experiments.run_sweep(cfg)
    stem = os.path.splitext(os.path.basename(args.config))[0] if args.config else "sweep"
    path = write_outputs(ds, args.out, stem, f"sweep {stem}")
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_check(args):
    results = checks.run_checks()
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_NUMERIC


def build_parser():
    p = _Parser(prog="dd-metrology",
                description="Squeezing, purity and QFI of a dephased collective spin under DD pulses.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("figure", help="run a figure preset and write <id>.csv and <id>.plot")
    f.add_argument("figure_id", choices=sorted(experiments.FIGURES))
    f.add_argument("--out", default=".", help="output directory (default: .)")
    f.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override a config key in every variant (repeatable)")
    f.set_defaults(func=_cmd_figure)

    s = sub.add_parser("sweep", help="run a sweep from a key = value config file")
    s.add_argument("--config", help="config file path")
    s.add_argument("--out", default=".", help="output directory (default: .)")
    s.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override a config key (repeatable)")
    s.set_defaults(func=_cmd_sweep)

    c = sub.add_parser("check", help="run the built-in self-tests")
    c.set_defaults(func=_cmd_check)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except InvalidArgument as exc:
        print(f"dd-metrology: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericFailure as exc:
        print(f"dd-metrology: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
