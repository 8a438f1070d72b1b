"""Command-line driver: single bands, simulations, summaries, transform checks."""

from __future__ import annotations

import argparse
import csv
import io
import sys

import numpy as np

from . import harness, metrics, transform
from .testfns import CASES, TestFunction

REP_HEADER = [
    "rep", "case", "n", "draws", "alpha_hat", "max_width", "ave_width",
    "nc", "re", "sup_cover", "ball_cover", "radius",
]
SUMMARY_HEADER = [
    "case", "n", "mean_max_width", "mean_ave_width", "nc_p95", "re_p95",
    "sup_cover_rate", "ball_cover_rate", "mean_alpha_hat",
]
BAND_HEADER = ["t", "lower", "upper", "center", "truth", "data"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
CHECK_TOL = 1e-8


class _Parser(argparse.ArgumentParser):
    # bad or unknown flags exit with status 1, leaving 2 for I/O failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x):
    """Locale-independent 17-significant-digit decimal."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _positive_int(minimum):
    def parse(text):
        value = int(text)
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be an integer >= {minimum}")
        return value
    return parse


def _nonneg_float(text):
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError("must be a nonnegative number")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be a positive number")
    return value


def _level(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("must lie strictly between 0 and 1")
    return value


def _add_model_flags(p):
    p.add_argument("--case", type=int, choices=CASES, required=True)
    p.add_argument("--n", type=_positive_int(2), required=True)
    p.add_argument("--draws", type=_positive_int(2), default=2000)
    p.add_argument("--sigma", type=_nonneg_float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", type=_level, default=0.95)
    p.add_argument("--basis", choices=transform.BASES, default=transform.DEFAULT_BASIS)
    p.add_argument("--noise-inflation", type=_positive_float, default=harness.NOISE_INFLATION)


def build_parser():
    parser = _Parser(prog="ebband", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("band", help="one realization and its band (CSV, optional SVG)")
    _add_model_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--svg")

    p = sub.add_parser("simulate", help="Monte Carlo replications")
    _add_model_flags(p)
    p.add_argument("--reps", type=_positive_int(1), default=500)
    p.add_argument("--out", required=True)
    p.add_argument("--summary")
    p.add_argument("--workers", type=_positive_int(1))

    p = sub.add_parser("summary", help="aggregate a per-replication CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")

    p = sub.add_parser("transform-check", help="transform self-check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basis", choices=transform.BASES, default=transform.DEFAULT_BASIS)
    return parser


def _write_text(path, text):
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"ebband: cannot write {path}: {exc}", file=sys.stderr)
        return False
    return True


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def band_svg(t, band, truth, width=800, height=400, pad=30):
    """Minimal SVG: band polygon, truth polyline, dashed center polyline."""
    ys = np.concatenate([band.lower, band.upper, truth])
    lo, hi = float(ys.min()), float(ys.max())
    span = hi - lo or 1.0

    def xy(tv, yv):
        px = pad + (width - 2 * pad) * tv
        py = height - pad - (height - 2 * pad) * (yv - lo) / span
        return " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))

    polygon = xy(np.concatenate([t, t[::-1]]), np.concatenate([band.upper, band.lower[::-1]]))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f'<polygon points="{polygon}" fill="orange" fill-opacity="0.5" stroke="none"/>\n'
        f'<polyline points="{xy(t, truth)}" fill="none" stroke="black" stroke-width="1.5"/>\n'
        f'<polyline points="{xy(t, band.center)}" fill="none" stroke="black" '
        f'stroke-dasharray="6,4" stroke-width="1"/>\n'
        "</svg>\n"
    )


def cmd_band(args):
    rng = harness.replication_rng(args.seed, 0)
    data = transform.generate_data(TestFunction(args.case), args.n, args.sigma, rng)
    _, band = harness.fit_band(
        data, args.draws, args.level, rng, None, args.basis, args.noise_inflation
    )
    t = transform.grid(args.n)
    rows = (
        [fmt(v) for v in row]
        for row in zip(t, band.lower, band.upper, band.center, data.truth, data.y)
    )
    if not _write_text(args.out, _csv_text(BAND_HEADER, rows)):
        return EXIT_IO
    if args.svg and not _write_text(args.svg, band_svg(t, band, data.truth)):
        return EXIT_IO
    return EXIT_OK


def _config(args):
    return harness.SimConfig(
        case_id=args.case, n=args.n, sigma=args.sigma, reps=args.reps,
        draws=args.draws, level=args.level, base_seed=args.seed,
        basis=args.basis, noise_inflation=args.noise_inflation,
    )


def rep_rows(config, reps):
    for i, r in enumerate(reps):
        yield [
            fmt(i), fmt(config.case_id), fmt(config.n), fmt(config.draws),
            fmt(r.alpha_hat), fmt(r.max_width), fmt(r.ave_width), fmt(r.nc),
            fmt(r.re), fmt(r.sup_covered), fmt(r.ball_covered), fmt(r.radius),
        ]


def summary_row(s):
    return [
        fmt(s.case_id), fmt(s.n), fmt(s.mean_max_width), fmt(s.mean_ave_width),
        fmt(s.nc_p95), fmt(s.re_p95), fmt(s.sup_cover_rate),
        fmt(s.ball_cover_rate), fmt(s.mean_alpha_hat),
    ]


def cmd_simulate(args):
    config = _config(args)
    try:
        workers = harness.resolve_workers(args.workers)
    except ValueError as exc:
        print(f"ebband: {exc}", file=sys.stderr)
        return EXIT_USAGE
    reps = harness.run_replications(config, workers)
    if not _write_text(args.out, _csv_text(REP_HEADER, rep_rows(config, reps))):
        return EXIT_IO
    if args.summary:
        summary = harness.summarize(config, reps)
        if not _write_text(args.summary, _csv_text(SUMMARY_HEADER, [summary_row(summary)])):
            return EXIT_IO
    return EXIT_OK


def read_replications(path):
    """Parse a per-replication CSV into (case, n) groups of metrics."""
    groups = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != REP_HEADER:
            raise ValueError(f"unexpected header in {path}: {reader.fieldnames}")
        for row in reader:
            key = (int(row["case"]), int(row["n"]))
            groups.setdefault(key, []).append(
                metrics.ReplicationMetrics(
                    max_width=float(row["max_width"]),
                    ave_width=float(row["ave_width"]),
                    nc=float(row["nc"]),
                    re=float(row["re"]),
                    sup_covered=row["sup_cover"] == "1",
                    ball_covered=row["ball_cover"] == "1",
                    alpha_hat=float(row["alpha_hat"]),
                    radius=float(row["radius"]),
                )
            )
    return groups


def cmd_summary(args):
    try:
        groups = read_replications(args.infile)
    except OSError as exc:
        print(f"ebband: cannot read {args.infile}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError) as exc:
        print(f"ebband: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows = []
    for (case_id, n), reps in sorted(groups.items()):
        stub = harness.SimConfig(case_id=case_id, n=n, reps=len(reps))
        rows.append(summary_row(harness.summarize(stub, reps)))
    text = _csv_text(SUMMARY_HEADER, rows)
    if args.out:
        return EXIT_OK if _write_text(args.out, text) else EXIT_IO
    sys.stdout.write(text)
    return EXIT_OK


def cmd_transform_check(args):
    if args.n < 2:
        print("ebband: --n must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    report = transform.transform_check(args.n, args.basis)
    for key in ("roundtrip", "gram", "parseval"):
        print(f"{key}: {report[key]:.3e}")
    ok = all(v < CHECK_TOL for v in report.values())
    print("ok" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_USAGE


COMMANDS = {
    "band": cmd_band,
    "simulate": cmd_simulate,
    "summary": cmd_summary,
    "transform-check": cmd_transform_check,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
