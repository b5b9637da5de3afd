"""Command-line front end emitting deterministic CSV/JSON tables.

Examples::

    tssmaps zeta --channel enm --T 1 --convention rate-distance
    tssmaps witness --channel oun --G 0.6 --g 2 --t0 0 --t1 1 --t2 2
    tssmaps holevo --channel oun --G 1 --g 1e9 --grid 0:5:3
    tssmaps figure3 --format json --output fig3.json

Exit codes: 0 success, 2 configuration error, 3 computational error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import channels, maps, measures
from .errors import DomainError, FamilyMismatchError, GeneratorSingularityError, SingularityError, UnsupportedRepresentationError

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE = 0, 2, 3
DEFAULT_PRECISION = 9
PARAM_FLAGS = ("G", "g", "gamma0", "a", "r", "k")

FIGURE1_CHANNELS = (
    ("oun-qds", channels.OUN(1.0, math.inf)),
    ("oun", channels.OUN(1.0, 0.3)),
    ("modoun", channels.ModOUN(1.0, 0.3, 1.5)),
)


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


# ---------------------------------------------------------------------------
# figure tables


def figure3_family(name, x):
    """Member of the figure3 sweep at abscissa ``x``; ``x = 0`` is the Markov limit."""
    inv = math.inf if x == 0 else 1.0 / x
    if name == "oun":
        return channels.OUN(0.6, inv)
    if name == "pln":
        return channels.PLN(0.6, x)
    if name == "nmad":
        return channels.ADQDS(0.3) if x == 0 else channels.NMAD(0.3, inv)
    if name == "rtn":
        return channels.RTN(0.6, inv)
    if name == "modoun":
        return channels.OUN(0.6, math.inf) if x == 0 else channels.ModOUN(0.6, inv, 1.5)
    raise ValueError(name)


FIGURE3_FAMILIES = ("oun", "pln", "nmad", "rtn", "modoun")


def figure1_rows(grid):
    rows = []
    for label, fam in FIGURE1_CHANNELS:
        for pt in measures.holevo_curve(fam, grid):
            rows.append({"family": label, "t": pt.t, "value": pt.B})
    return rows


def figure3_rows(grid, T=1.0, convention="d-factor"):
    rows = []
    for name in FIGURE3_FAMILIES:
        for x in grid:
            res = measures.zeta_upper_bound(figure3_family(name, float(x)), T, convention)
            rows.append({"family": name, "x": float(x), "zeta_bound": res.value, "convention": convention})
    return rows


# ---------------------------------------------------------------------------
# argument handling


def _float(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_grid(text):
    """``start:stop:points`` -> array of ``points`` evenly spaced times."""
    try:
        start, stop, points = text.split(":")
        start, stop, points = float(start), float(stop), int(points)
    except ValueError:
        raise ConfigError(f"grid must look like start:stop:points, got {text!r}") from None
    if points < 2 or not (stop > start >= 0) or not math.isfinite(stop):
        raise ConfigError("grid needs points >= 2 and stop > start >= 0")
    return np.linspace(start, stop, points)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--channel", help="family name: " + ", ".join(sorted(channels.FAMILIES)))
    for name in PARAM_FLAGS:
        common.add_argument(f"--{name}", type=_float, default=None)
    common.add_argument("--config", type=Path, help="JSON file with a flat channel spec")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", type=Path, help="write here instead of standard output")
    common.add_argument("--grid", help="time grid start:stop:points")
    common.add_argument("--t", type=_float, help="time for single-map commands")
    common.add_argument("--t0", type=_float, default=0.0)
    common.add_argument("--t1", type=_float)
    common.add_argument("--t2", type=_float)
    common.add_argument("--T", type=_float, default=1.0, help="horizon of the measure")
    common.add_argument("--convention", choices=measures.MEASURE_CONVENTIONS, default="d-factor")

    parser = _Parser(prog="tssmaps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("rates", parents=[common], help="time-dependent rate on a grid")
    sub.add_parser("p", parents=[common], help="dephasing mixing function on a grid")
    sub.add_parser("choi", parents=[common], help="Choi matrix of the full map at --t")
    inter = sub.add_parser("intermediate", parents=[common], help="intermediate map on [t1, t2]")
    inter.add_argument("--representation", choices=("choi", "a"), default="choi")
    sub.add_parser("witness", parents=[common], help="CP-divisibility witness")
    tss = sub.add_parser("tss", parents=[common], help="temporal self-similarity witness")
    tss.add_argument("--t0-grid", dest="t0_grid", help="comma-separated initial times")
    zeta = sub.add_parser("zeta", parents=[common], help="distance-from-semigroup measure")
    zeta.add_argument("--upper-bound", action="store_true", help="fix the rate at the Markov limit")
    sub.add_parser("holevo", parents=[common], help="Holevo bound of |+>, |-> on a grid")
    sub.add_parser("figure1", parents=[common], help="Holevo curves of the three reference channels")
    sub.add_parser("figure3", parents=[common], help="zeta upper-bound curves against x = 1/r")
    return parser


def channel_from_args(args):
    spec = {}
    if args.config is not None:
        try:
            spec = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(spec, dict):
            raise ConfigError("config must hold a JSON object")
    if args.channel is not None:
        spec["family"] = args.channel
    for name in PARAM_FLAGS:
        value = getattr(args, name)
        if value is not None:
            spec[name] = value
    if "family" not in spec and "channel" not in spec:
        raise ConfigError("no channel given (use --channel or --config)")
    try:
        return channels.from_spec(spec)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ConfigError("missing option(s): " + ", ".join("--" + n for n in missing))


def _matrix_rows(m):
    return [
        {"row": i, "col": j, "re": float(m[i, j].real), "im": float(m[i, j].imag)}
        for i in range(m.shape[0])
        for j in range(m.shape[1])
    ]


def compute(args):
    """Run one command; returns ``(columns, rows)``."""
    cmd = args.command
    if cmd == "figure1":
        grid = parse_grid(args.grid or "0:10:200")
        return ["family", "t", "value"], figure1_rows(grid)
    if cmd == "figure3":
        grid = parse_grid(args.grid or "0:5:50")
        if args.T <= 0:
            raise ConfigError("T must be > 0")
        return ["family", "x", "zeta_bound", "convention"], figure3_rows(grid, args.T, args.convention)

    fam = channel_from_args(args)
    if cmd in ("rates", "p", "holevo"):
        _require(args, "grid")
        grid = parse_grid(args.grid)
        if cmd == "rates":
            rows = []
            for t in grid:
                rates = channels.decay_rate(fam, t)
                value = rates.gamma if isinstance(rates, channels.ADRate) else rates.gamma3
                rows.append({"t": float(t), "value": value})
        elif cmd == "p":
            rows = [{"t": float(t), "value": channels.mixing_p(fam, t)} for t in grid]
        else:
            rows = [{"t": p.t, "value": p.B} for p in measures.holevo_curve(fam, grid)]
        return ["t", "value"], rows
    if cmd == "choi":
        _require(args, "t")
        return ["row", "col", "re", "im"], _matrix_rows(maps.choi(fam, args.t, args.t0).matrix)
    if cmd == "intermediate":
        _require(args, "t1", "t2")
        a = maps.intermediate_a(fam, args.t2, args.t1, args.t0)
        m = a.matrix if args.representation == "a" else maps.involution(a).matrix
        return ["row", "col", "re", "im"], _matrix_rows(m)
    if cmd == "witness":
        if args.grid is not None:
            grid = parse_grid(args.grid)
            pairs = list(zip(grid[:-1], grid[1:]))
        else:
            _require(args, "t1", "t2")
            pairs = [(args.t1, args.t2)]
        rows = []
        for t1, t2 in pairs:
            rep = maps.cp_witness(fam, t1, t2, args.t0)
            rows.append({"t0": rep.t0, "t1": rep.interval[0], "t2": rep.interval[1],
                         "min_eig": rep.min_eigenvalue, "verdict": rep.verdict})
        return ["t0", "t1", "t2", "min_eig", "verdict"], rows
    if cmd == "tss":
        _require(args, "t1", "t2")
        t0_grid = None
        if args.t0_grid:
            try:
                t0_grid = [float(v) for v in args.t0_grid.split(",")]
            except ValueError:
                raise ConfigError(f"bad --t0-grid {args.t0_grid!r}") from None
        value = maps.tss_witness(fam, args.t1, args.t2, t0_grid)
        return ["t1", "t2", "value"], [{"t1": args.t1, "t2": args.t2, "value": value}]
    if cmd == "zeta":
        if args.upper_bound:
            res = measures.zeta_upper_bound(fam, args.T, args.convention)
        else:
            res = measures.zeta(fam, args.T, args.convention)
        cols = ["value", "optimizer_rate", "convention", "quadrature_error_estimate", "T"]
        return cols, [{c: getattr(res, c) for c in cols}]
    raise ConfigError(f"unknown command {cmd!r}")


# ---------------------------------------------------------------------------
# output


def _precision():
    raw = os.environ.get("OUTPUT_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        prec = int(raw)
    except ValueError:
        raise ConfigError(f"OUTPUT_PRECISION must be an integer, got {raw!r}") from None
    if not 1 <= prec <= 17:
        raise ConfigError("OUTPUT_PRECISION must be between 1 and 17")
    return prec


def _fmt(value, prec):
    if isinstance(value, float) or isinstance(value, np.floating):
        text = format(float(value), f".{prec}g")
        return "0" if text == "-0" else text
    return str(value)


def render(columns, rows, fmt="csv", prec=DEFAULT_PRECISION):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c], prec) for c in columns])
        return buf.getvalue()
    records = []
    for row in rows:
        rec = {}
        for c in columns:
            v = row[c]
            if isinstance(v, (float, np.floating)):
                v = float(_fmt(v, prec))
                if not math.isfinite(v):
                    v = str(v)
            rec[c] = v
        records.append(rec)
    return json.dumps(records, indent=2) + "\n"


def _fail(code, payload):
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        prec = _precision()
        columns, rows = compute(args)
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, {"error": "config", "message": str(exc)})
    except (FamilyMismatchError, UnsupportedRepresentationError, DomainError) as exc:
        return _fail(EXIT_CONFIG, {"error": "config", "message": str(exc)})
    except GeneratorSingularityError as exc:
        return _fail(EXIT_COMPUTE, {"error": "computational", "operation": args.command,
                                    "message": str(exc), "t": exc.t})
    except (SingularityError, ArithmeticError) as exc:
        return _fail(EXIT_COMPUTE, {"error": "computational", "operation": args.command,
                                    "message": str(exc)})

    text = render(columns, rows, args.format, prec)
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8", newline="\n")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
