"""
Command-line entry point.

    python -m iqa_boost score    --manifest live.csv --out live_scores.csv
    python -m iqa_boost validate --manifest live.csv [--expected counts.json]
    python -m iqa_boost part1    --config study.json --out results/
    python -m iqa_boost part2    --config study.json --out results/ [--report results/part1_report.json]
    python -m iqa_boost fuse     --config study.json --out results/
    python -m iqa_boost report   --input results/fuse_report.json --out results/ [--xlsx tables.xlsx]

Exit status: 0 success, 1 validation mismatch, 2 usage error, 3 runtime error.
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .exceptions import IQABoostError
from .experiments import (
    ordering_for,
    run_full_fusion_study,
    run_fusion_scatter,
    run_incremental_fusion_study,
    run_single_method_study,
)
from .metrics import NATIVE_METRICS, assemble_score_table, compute_native_scores
from .models import CRITERIA, Criterion, Database, EvaluationReport, ExperimentConfig, ScoreTable
from .processors import ingest_external_scores, load_manifest, merge_fragments, write_scores
from .reports import (
    VIEWS,
    ReportGenerator,
    available_views,
    compare_with_published,
    load_published,
    render_comparison,
    write_fusion_curve,
    write_scatter,
    write_tables,
    write_workbook,
)
from .reports.performance_table import emit_performance_table
from .utils import expected_counts, load_registry, read_counts_file
from .utils.json_io import read_json, write_json
from .utils.metric_registry import select
from .validators import validate_database

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def load_config(path: str, threads: Optional[int]) -> ExperimentConfig:
    cfg = ExperimentConfig.from_json(Path(path))
    if threads is not None:
        cfg = replace(cfg, threads=threads)
    select(cfg.registry, load_registry())
    return cfg


def load_study_inputs(cfg: ExperimentConfig) -> Tuple[List[Database], List[ScoreTable]]:
    """Manifests and complete score tables for every configured database."""
    registry = load_registry()
    fragment = merge_fragments(*(ingest_external_scores(Path(p), registry) for p in cfg.score_files))
    database_ids = list(cfg.databases) or sorted(cfg.manifests)
    if not database_ids:
        raise ValueError("Config names no databases and no manifests")

    dbs, tables = [], []
    for database_id in database_ids:
        if database_id not in cfg.manifests:
            raise ValueError(f"No manifest configured for database '{database_id}'")
        db = load_manifest(Path(cfg.manifests[database_id]))
        if db.database_id != database_id:
            raise ValueError(f"Manifest for '{database_id}' describes database '{db.database_id}'")
        dbs.append(db)
        tables.append(assemble_score_table(fragment, db.stimulus_ids, cfg.registry))
    return dbs, tables


def _write_report(report: EvaluationReport, out_dir: Path, stem: str, views: Sequence[str]) -> Path:
    path = out_dir / f"{stem}_report.json"
    write_json(report.to_dict(), path)
    tables = [emit_performance_table(report, c, v) for v in views for c in CRITERIA]
    write_tables(tables, out_dir, stem)
    generator = ReportGenerator(report)
    print(generator.generate_summary())
    print(generator.render_tables(views))
    if not report.is_valid:
        logger.warning("Report %s has invalid rows: %s", path, ", ".join(report.invalid))
    return path


def cmd_score(args: argparse.Namespace) -> int:
    db = load_manifest(Path(args.manifest))
    metric_ids = args.metrics.split(",") if args.metrics else list(NATIVE_METRICS)
    fragment = compute_native_scores(db, metric_ids, threads=args.threads, base_dir=Path(args.manifest).parent)
    write_scores(fragment, Path(args.out))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    db = load_manifest(Path(args.manifest))
    expected = read_counts_file(Path(args.expected)) if args.expected else expected_counts(db.database_id)
    result = validate_database(db, expected)
    print(result.to_text(), end="")
    if args.json:
        write_json(result.to_dict(), Path(args.json))
    return EXIT_OK if result.is_valid else EXIT_MISMATCH


def cmd_part1(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, args.threads)
    dbs, tables = load_study_inputs(cfg)
    report = EvaluationReport()
    for db, table in zip(dbs, tables):
        part = run_single_method_study(db, table, cfg)
        report.provenance = part.provenance
        report.extend(part)
    _write_report(report, Path(args.out), "part1", available_views(report))
    return EXIT_OK


def cmd_part2(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, args.threads)
    dbs, tables = load_study_inputs(cfg)
    baseline = EvaluationReport.from_dict(read_json(Path(args.report))) if args.report else None
    criteria = [Criterion(args.criterion)] if args.criterion else list(CRITERIA)
    out_dir = Path(args.out)

    curves = []
    for db, table in zip(dbs, tables):
        part1 = baseline
        if part1 is None or db.database_id not in part1.databases():
            part1 = run_single_method_study(db, table, cfg)
        for criterion in criteria:
            ordering = ordering_for(cfg, part1, db.database_id, criterion)
            curve = run_incremental_fusion_study(db, table, cfg, ordering, criterion)
            stem = f"part2_{db.database_id}_{criterion.value.lower()}"
            write_fusion_curve(curve, out_dir, stem)
            write_scatter(run_fusion_scatter(db, table, cfg, ordering), out_dir, stem)
            curves.append(curve)
    print(ReportGenerator(EvaluationReport(), curves).generate_summary())
    return EXIT_OK


def cmd_fuse(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, args.threads)
    dbs, tables = load_study_inputs(cfg)
    report = run_full_fusion_study(dbs, tables, cfg)
    _write_report(report, Path(args.out), "fuse", ["comparison"])
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    report = EvaluationReport.from_dict(read_json(Path(args.input)))
    views = args.views.split(",") if args.views else available_views(report)
    unknown = [v for v in views if v not in VIEWS]
    if unknown:
        raise ValueError(f"Unknown views: {', '.join(unknown)}")
    out_dir = Path(args.out)
    stem = Path(args.input).stem.replace("_report", "")
    generator = ReportGenerator(report)
    write_tables([emit_performance_table(report, c, v) for v in views for c in CRITERIA], out_dir, stem)
    generator.save_bundle(out_dir / f"{stem}_bundle.json", views)
    generator.save_detailed_report(out_dir / f"{stem}_report.txt", views)
    if args.xlsx:
        write_workbook(report, Path(args.xlsx), views)
    print(generator.render_tables(views))
    if args.compare_published:
        published = load_published()
        for view in views:
            print(render_comparison(compare_with_published(report, published, view)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iqa_boost", description="Boosting full-reference IQA estimators.")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug detail")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="Compute native metrics over a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True, help="Score file to write")
    p.add_argument("--metrics", help="Comma-separated subset of PSNR,SSIM,MS-SSIM")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("validate", help="Check category counts against the expected table")
    p.add_argument("--manifest", required=True)
    p.add_argument("--expected", help="JSON {category: count}; defaults to the shipped table")
    p.add_argument("--json", help="Also write the result as JSON")
    p.set_defaults(func=cmd_validate)

    for name, func, text in (
        ("part1", cmd_part1, "Existing and single-method regressed performance"),
        ("part2", cmd_part2, "Worst-first incremental fusion curves"),
        ("fuse", cmd_fuse, "Existing vs regressed vs boosted comparison"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True)
        p.add_argument("--out", required=True, help="Output directory")
        p.add_argument("--threads", type=int)
        if name == "part2":
            p.add_argument("--report", help="part1 report JSON to derive orderings from")
            p.add_argument("--criterion", choices=[c.value for c in CRITERIA])
        p.set_defaults(func=func)

    p = sub.add_parser("report", help="Re-render a saved report")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True, help="Output directory")
    p.add_argument("--views", help=f"Comma-separated subset of {','.join(VIEWS)}")
    p.add_argument("--xlsx", help="Also write an Excel workbook")
    p.add_argument("--compare-published", action="store_true", help="Compare with published values")
    p.set_defaults(func=cmd_report)
    return parser


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        return args.func(args)
    except IQABoostError as e:
        logger.error("%s", e)
        return EXIT_RUNTIME
    except (ValueError, KeyError) as e:
        logger.error("%s", e)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error("%s", e)
        return EXIT_RUNTIME


def main() -> None:
    sys.exit(cli_dispatch())
