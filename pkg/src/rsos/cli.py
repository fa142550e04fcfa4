"""Command-line interface.

Exit codes: 0 success, 1 validation error (bad flags, bad data, stale
snapshot), 2 I/O error (missing or unreadable files).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ParseError
from .higen import extract_higens, render_higen
from .mining import MinerConfig
from .recommender import (
    MissingMeasurementsError,
    RecommendationRequest,
    recommend,
    recommendation_line,
)
from .service import serve
from .vision.detect import ScanParams, detect
from .vision.haar import load_cascade
from .vision.image import read_pgm_file
from .vision.measure import (
    BodyMeasurements,
    MeasureConfig,
    estimate_measurements,
    merge_measurements,
)
from .workspace import (
    WorkspaceError,
    ingest,
    load_snapshot,
    load_workspace,
    resolve_workspace,
    snapshot_mine,
)


class CliError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are validation errors (exit 1)
        raise CliError(message)


def _add_workspace_arg(p):
    p.add_argument(
        "--workspace",
        help="workspace directory (default: $RSOS_WORKSPACE or the current directory)",
    )


def _attrs(value: str) -> tuple[str, ...]:
    attrs = tuple(a.strip() for a in value.split(",") if a.strip())
    if not attrs:
        raise CliError("--attrs needs a comma-separated attribute list")
    return attrs


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rsos", description="Outfit recommendation engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate a workspace and write its manifest")
    p.add_argument("directory", help="workspace directory")
    p.add_argument("--granularity", choices=("month", "year", "day"), default="month")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("mine", help="mine frequent itemsets and HIGENs into a snapshot")
    p.add_argument("--min-sup", type=int, required=True)
    p.add_argument("--attrs", type=_attrs, help="attributes to mine (default: all)")
    p.add_argument("--lazy", action="store_true", help="support-driven lazy mode")
    p.add_argument("--max-size", type=int, help="largest itemset size")
    p.add_argument("--granularity", choices=("month", "year", "day"), default="month")
    _add_workspace_arg(p)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("higen", help="print HIGEN report lines")
    p.add_argument("--min-sup", type=int, help="recompute at this threshold")
    p.add_argument("--attrs", type=_attrs)
    p.add_argument("--ascii", action="store_true", help="use /> and \\> arrows")
    p.add_argument("--granularity", choices=("month", "year", "day"), default="month")
    _add_workspace_arg(p)
    p.set_defaults(func=cmd_higen)

    p = sub.add_parser("detect", help="run a cascade over a PGM image")
    p.add_argument("image", help="grayscale PGM file")
    p.add_argument("--cascade", required=True, help="cascade definition file")
    p.add_argument("--scale-factor", type=float, default=1.25)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--min-window", type=int, nargs=2, metavar=("W", "H"))
    p.add_argument("--max-window", type=int, nargs=2, metavar=("W", "H"))
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("measure", help="estimate body measurements from a PGM image")
    p.add_argument("image", help="grayscale PGM file")
    p.add_argument("--ppcm", type=float, required=True, help="pixels per centimeter")
    p.add_argument("--threshold", type=int, default=128)
    p.add_argument("--foreground", choices=("dark", "light"), default="dark")
    p.add_argument("--girth-multiplier", type=float)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("recommend", help="rank catalog outfits for a shopper")
    p.add_argument("--gender", required=True)
    p.add_argument("--budget", type=float, required=True)
    p.add_argument("--profession", required=True)
    p.add_argument("--category")
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--measurements", help="JSON file of measurements")
    p.add_argument("--measure-from", help="PGM image to estimate measurements from")
    p.add_argument("--ppcm", type=float, help="calibration for --measure-from")
    _add_workspace_arg(p)
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("serve", help="serve the HTTP JSON API")
    p.add_argument("--bind", default="127.0.0.1:8000", metavar="HOST:PORT")
    p.add_argument("--allow-stale", action="store_true")
    _add_workspace_arg(p)
    p.set_defaults(func=cmd_serve)

    return parser


def cmd_ingest(args) -> int:
    report = ingest(Path(args.directory), args.granularity)
    for line in report.lines():
        print(line)
    return 0


def cmd_mine(args) -> int:
    root = resolve_workspace(args.workspace)
    data = load_workspace(root, args.granularity)
    attrs = args.attrs or data.schema
    cfg = MinerConfig(
        min_sup=args.min_sup,
        attributes=attrs,
        max_itemset_size=args.max_size,
        mode="lazy" if args.lazy else "eager",
    )
    snapshot = snapshot_mine(root, cfg, args.granularity)
    for line in snapshot.pattern_lines():
        print(line)
    print(
        f"snapshot: {len(snapshot.frequent)} frequent itemsets, "
        f"{len(snapshot.higens)} HIGENs",
        file=sys.stderr,
    )
    return 0


def cmd_higen(args) -> int:
    root = resolve_workspace(args.workspace)
    if args.min_sup is None and args.attrs is None:
        snapshot = load_snapshot(root)
        if snapshot is None:
            raise CliError(f"no snapshot in {root}: run 'rsos mine' or pass --min-sup")
        if not snapshot.is_fresh(root):
            raise CliError(f"snapshot in {root} is stale: re-run ingest and mine")
        lines = snapshot.higen_lines(ascii_arrows=args.ascii)
    else:
        if args.min_sup is None:
            raise CliError("--min-sup is required when --attrs is given")
        data = load_workspace(root, args.granularity)
        cfg = MinerConfig(min_sup=args.min_sup, attributes=args.attrs or data.schema)
        higens = extract_higens(data.periods, data.tax, cfg)
        lines = [render_higen(h, ascii_arrows=args.ascii) for h in higens]
    for line in lines:
        print(line)
    return 0


def cmd_detect(args) -> int:
    img = read_pgm_file(args.image)
    cascade = load_cascade(Path(args.cascade).read_text(encoding="utf-8"))
    scan = ScanParams(
        scale_factor=args.scale_factor,
        step=args.step,
        min_window=tuple(args.min_window) if args.min_window else None,
        max_window=tuple(args.max_window) if args.max_window else None,
    )
    for box in detect(img, cascade, scan):
        print(box.line())
    return 0


def _measure_config(args) -> MeasureConfig:
    kwargs = {"threshold": args.threshold, "foreground": args.foreground}
    if args.girth_multiplier is not None:
        kwargs["girth_multiplier"] = args.girth_multiplier
    return MeasureConfig(**kwargs)


def cmd_measure(args) -> int:
    img = read_pgm_file(args.image)
    m = estimate_measurements(img, args.ppcm, _measure_config(args))
    print(json.dumps(m.to_dict(), indent=2, sort_keys=True))
    return 0


def _gather_measurements(args) -> BodyMeasurements:
    detected = manual = None
    if args.measure_from:
        if not args.ppcm:
            raise CliError("--measure-from needs --ppcm")
        img = read_pgm_file(args.measure_from)
        detected = estimate_measurements(img, args.ppcm, MeasureConfig())
    if args.measurements:
        raw = json.loads(Path(args.measurements).read_text(encoding="utf-8"))
        try:
            manual = BodyMeasurements.from_dict(raw)
        except ValueError as exc:
            raise CliError(f"{args.measurements}: {exc}") from exc
    if detected and manual:
        return merge_measurements(detected, manual)
    result = detected or manual
    if result is None:
        raise CliError("provide --measurements FILE and/or --measure-from IMAGE")
    return result


def cmd_recommend(args) -> int:
    root = resolve_workspace(args.workspace)
    snapshot = load_snapshot(root)
    if snapshot is None:
        raise CliError(f"no snapshot in {root}: run 'rsos ingest' and 'rsos mine' first")
    if not snapshot.is_fresh(root):
        raise CliError(f"snapshot in {root} is stale: re-run ingest and mine")
    data = load_workspace(root, snapshot.granularity)  # type: ignore[arg-type]
    req = RecommendationRequest(
        measurements=_gather_measurements(args),
        gender=args.gender,
        profession=args.profession,
        budget=args.budget,
        category=args.category,
        top_k=args.top_k,
    )
    ranked = recommend(
        req, data.catalog, data.sizing, data.periods, data.tax, snapshot.cfg
    )
    if not ranked:
        print("no outfits match the request")
        return 0
    for rank, rec in enumerate(ranked, start=1):
        print(recommendation_line(rank, rec))
    return 0


def cmd_serve(args) -> int:
    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise CliError(f"--bind must look like HOST:PORT, got {args.bind!r}")
    serve(
        resolve_workspace(args.workspace),
        host=host,
        port=int(port_text),
        allow_stale=args.allow_stale,
    )
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (CliError, WorkspaceError, ParseError, MissingMeasurementsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
