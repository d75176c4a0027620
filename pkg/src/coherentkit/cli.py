"""Command-line entry point: ``coherentkit --suite NAME [options]``."""

from __future__ import annotations

import argparse
import sys

from .errors import CoherentKitError
from .report import ALL, SUITES, SuiteConfig, emit_report, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

# config-file key -> (SuiteConfig field, parser)
_FILE_KEYS = {
    "suite": ("suite", str),
    "dim_eps": ("truncation_eps", float),
    "truncation_eps": ("truncation_eps", float),
    "radial": ("radial", int),
    "angular": ("angular", int),
    "delta": ("delta", float),
    "seed": ("seed", int),
    "out": ("output_path", str),
    "output_path": ("output_path", str),
    "format": ("format", str),
}


class _UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coherentkit", description="Run numerical verification suites.")
    p.add_argument("--suite", choices=SUITES + (ALL,))
    p.add_argument("--dim-eps", type=float, dest="truncation_eps", help="Fock truncation tail tolerance")
    p.add_argument("--radial", type=int, help="radial quadrature nodes")
    p.add_argument("--angular", type=int, help="angular quadrature nodes")
    p.add_argument("--delta", type=float, help="disk cutoff for su(1,1) grids")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", dest="output_path", help="report path (stdout when omitted)")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--config", help="key=value file; explicit flags take precedence")
    p.add_argument("--tol", action="append", default=[], metavar="CHECK=TOL", help="override one check tolerance")
    return p


def _parse_tol(item: str):
    name, sep, value = item.partition("=")
    if not sep:
        raise _UsageError(f"bad tolerance override {item!r}")
    try:
        return name.strip(), float(value)
    except ValueError as exc:
        raise _UsageError(f"bad tolerance override {item!r}") from exc


def load_config_file(path: str) -> tuple[dict, dict]:
    """Parse a key=value file into SuiteConfig fields and tolerance overrides.

    Blank lines and lines starting with ``#`` are ignored. Keys of the form
    ``tol.<check-name>`` set per-check tolerances.
    """
    values, tols = {}, {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip().replace("-", "_"), value.strip()
            if not sep:
                raise _UsageError(f"{path}:{lineno}: expected key=value")
            if key.startswith("tol."):
                tols.update([_parse_tol(key[4:] + "=" + value)])
                continue
            if key not in _FILE_KEYS:
                raise _UsageError(f"{path}:{lineno}: unknown key {key!r}")
            name, conv = _FILE_KEYS[key]
            try:
                values[name] = conv(value)
            except ValueError as exc:
                raise _UsageError(f"{path}:{lineno}: bad value for {key!r}") from exc
    return values, tols


def build_config(args: argparse.Namespace) -> SuiteConfig:
    values, tols = {}, {}
    if args.config:
        values, tols = load_config_file(args.config)
    for name in ("suite", "truncation_eps", "radial", "angular", "delta", "seed", "output_path", "format"):
        v = getattr(args, name)
        if v is not None:
            values[name] = v
    tols.update(_parse_tol(t) for t in args.tol)
    values["tolerances"] = tols
    values.setdefault("suite", ALL)
    return SuiteConfig(**values)


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_USAGE
    try:
        config = build_config(args)
    except OSError as exc:
        print(f"coherentkit: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except (_UsageError, CoherentKitError) as exc:
        print(f"coherentkit: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = run_suite(config)
    try:
        text = emit_report(report, config.format, config.output_path)
    except OSError as exc:
        print(f"coherentkit: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO
    if config.output_path is None:
        sys.stdout.write(text)
    failed = [c.name for c in report.checks if not c.passed]
    for name in failed:
        print(f"FAILED {name}", file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
