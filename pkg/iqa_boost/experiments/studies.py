"""
Single-method, incremental-fusion and full-fusion studies.

Method labels:
    existing/<metric>   logistic-mapped raw scores of one estimator
    <learner>/<metric>  learner trained on one estimator's scores
    <learner>/boost     learner trained on every registry estimator
    best/<kind>         extremal row of a kind, with the winning label in `source`
"""

import hashlib
import json
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..evaluation import significance_threshold
from ..exceptions import CompletenessError, IQABoostError, RegistryError
from ..metrics import build_feature_matrix
from ..models import (
    BEST,
    BOOST,
    CRITERIA,
    EXISTING,
    Criterion,
    CurvePoint,
    Database,
    EvaluationReport,
    ExperimentConfig,
    FusionCurve,
    ReportRow,
    ScatterPoint,
    ScoreTable,
    method_label,
    split_label,
)
from ..optim import LMOptions
from ..regressors.svr import KKT_TOLERANCE, MAX_PASSES
from ..utils import StringMatcher, load_registry
from .runner import (
    MethodSpec,
    RunOutcome,
    evaluate_methods,
    exclusion_rate,
    out_of_fold_predictions,
    summarize,
)
from .seeding import fold_plans

logger = logging.getLogger(__name__)


def decision_ledger(cfg: ExperimentConfig) -> Dict[str, Any]:
    """Every protocol choice the numbers depend on, echoed into report provenance."""
    polarity = {d.metric_id: d.polarity.value for d in load_registry()}
    return {
        "logistic_form": "b1*(1/2 - 1/(1+exp(b2*(V0-b3)))) + b4*V0 + b5",
        "logistic_fit": "training folds only; multi-start, lowest cost wins",
        "logistic_applied_to": "every method's final output (existing, regressed, boosted)",
        "srcc_input": "unmapped predictions, average ranks for ties",
        "criteria_granularity": "per-fold mean" if cfg.per_fold_criteria else "pooled test folds per run",
        "fold_seed": "hash64(hash64(master_seed, database_id), run_index)",
        "learner_seed": "hash64(master_seed, database_id, run_index, learner, fold)",
        "fusion_columns": "registry order",
        "metric_polarity": {m: polarity.get(m, "unregistered") for m in cfg.registry},
        "polarity_handling": "absorbed by the logistic mapping and the learners; scores are never flipped",
        "nn": {"hidden_dim": cfg.hidden_dim, "activation": "tanh", "init": "uniform +-1/sqrt(fan_in), Philox",
               "lm": LMOptions().to_dict(), "damping": "lambda*I"},
        "svr": {"kernel": "linear", "C": cfg.svr_C, "epsilon": cfg.svr_epsilon,
                "kkt_tolerance": KKT_TOLERANCE, "max_pair_updates": f"{MAX_PASSES}*n*n"},
        "standardization": "z-score from training folds",
        "existing_run_count": "runs x learners x registry size",
        "exclusion_threshold": cfg.exclusion_threshold,
        "rank_ties": "registry order",
        "significance": {"alpha": cfg.alpha, "test": "Fisher z, two-tailed", "n": cfg.significance_n,
                         "baseline": "best single-method regressed mean at fusion size 1"},
    }


def provenance(cfg: ExperimentConfig, study: str) -> Dict[str, Any]:
    ledger = decision_ledger(cfg)
    digest = hashlib.sha256(json.dumps(ledger, sort_keys=True).encode("utf-8")).hexdigest()
    return {"study": study, "config": cfg.to_dict(), "decisions": ledger, "decisions_sha256": digest}


def _registry_index(cfg: ExperimentConfig) -> Dict[str, int]:
    return {metric_id: j for j, metric_id in enumerate(cfg.registry)}


def _rows_for(
    report: EvaluationReport,
    outcomes: Sequence[RunOutcome],
    database_id: str,
    label: str,
    cfg: ExperimentConfig,
    run_multiplier: int = 1,
) -> None:
    rate = exclusion_rate(outcomes, label)
    if rate > cfg.exclusion_threshold:
        report.invalid.append(f"{database_id}:{label}")
        logger.warning(
            "'%s' on '%s': %.1f%% of runs excluded, row marked invalid", label, database_id, 100 * rate
        )
    for criterion in CRITERIA:
        summary = summarize(outcomes, label, criterion)
        report.add(
            ReportRow(
                database_id=database_id,
                method=label,
                criterion=criterion,
                mean=summary.mean,
                std=summary.std,
                run_count=len(summary.values) * run_multiplier,
                excluded=summary.excluded,
                values=summary.values,
            )
        )


def _single_method_specs(cfg: ExperimentConfig) -> List[MethodSpec]:
    specs = [MethodSpec(method_label(EXISTING, m), (j,)) for j, m in enumerate(cfg.registry)]
    for learner in cfg.learners:
        specs.extend(MethodSpec(method_label(learner, m), (j,), learner) for j, m in enumerate(cfg.registry))
    return specs


def _boost_specs(cfg: ExperimentConfig) -> List[MethodSpec]:
    columns = tuple(range(len(cfg.registry)))
    return [MethodSpec(method_label(learner, BOOST), columns, learner) for learner in cfg.learners]


def _study_database(
    db: Database, table: ScoreTable, cfg: ExperimentConfig, include_boost: bool
) -> EvaluationReport:
    X, y = build_feature_matrix(db, table, cfg.registry)
    specs = _single_method_specs(cfg) + (_boost_specs(cfg) if include_boost else [])
    logger.info(
        "Study on '%s': %d stimuli, %d methods, %d runs x %d folds",
        db.database_id, len(db), len(specs), cfg.runs, cfg.k,
    )
    outcomes = evaluate_methods(X, y, specs, fold_plans(len(db), cfg, db.database_id), cfg, db.database_id)

    report = EvaluationReport()
    existing_multiplier = len(cfg.learners) * len(cfg.registry)
    for spec in specs:
        multiplier = existing_multiplier if spec.learner is None else 1
        _rows_for(report, outcomes, db.database_id, spec.label, cfg, multiplier)
    return report


def run_single_method_study(db: Database, table: ScoreTable, cfg: ExperimentConfig) -> EvaluationReport:
    """
    Existing and single-method regressed rows for one database.

    Raises:
        CompletenessError: the table lacks a (stimulus, registry metric) pair
    """
    report = _study_database(db, table, cfg, include_boost=False)
    report.provenance = provenance(cfg, "single-method")
    logger.info("Single-method study on '%s' finished (%d rows)", db.database_id, len(report.rows))
    return report


def _extreme(rows: Sequence[ReportRow], criterion: Criterion) -> ReportRow:
    """Best row by mean; ties and NaN means fall back to input (registry) order."""
    usable = [r for r in rows if r.mean == r.mean]
    if not usable:
        return rows[0]
    if criterion.lower_is_better:
        return min(usable, key=lambda r: r.mean)
    return max(usable, key=lambda r: r.mean)


def best_rows(report: EvaluationReport, database_id: str, kind: str) -> List[ReportRow]:
    """One best/<kind> row per criterion over the single-method rows of a kind."""
    labels = [m for m in report.methods(database_id, kind) if split_label(m)[1] != BOOST]
    if not labels:
        raise CompletenessError(f"Report has no '{kind}' rows for '{database_id}'", missing=(database_id, kind))
    rows = []
    for criterion in CRITERIA:
        winner = _extreme([report.get(database_id, label, criterion) for label in labels], criterion)
        rows.append(
            ReportRow(
                database_id=database_id,
                method=method_label(BEST, kind),
                criterion=criterion,
                mean=winner.mean,
                std=winner.std,
                run_count=winner.run_count,
                excluded=winner.excluded,
                values=winner.values,
                source=winner.method,
            )
        )
    return rows


def run_full_fusion_study(
    dbs: Sequence[Database], tables: Sequence[ScoreTable], cfg: ExperimentConfig
) -> EvaluationReport:
    """
    Existing, regressed, boosted and best-of rows for every database.

    Each database gets existing/*, <learner>/* and <learner>/boost rows from
    one shared set of runs, followed by best/existing and best/<learner>.
    """
    if len(dbs) != len(tables):
        raise ValueError("run_full_fusion_study needs one score table per database")
    report = EvaluationReport(provenance=provenance(cfg, "full-fusion"))
    for db, table in zip(dbs, tables):
        part = _study_database(db, table, cfg, include_boost=True)
        for kind in (EXISTING,) + tuple(cfg.learners):
            part.rows.extend(best_rows(part, db.database_id, kind))
        report.extend(part)
        logger.info("Full fusion study on '%s' finished", db.database_id)
    return report


def rank_estimators(
    report: EvaluationReport,
    database_id: str,
    criterion: Criterion,
    registry: Optional[Sequence[str]] = None,
    kind: str = EXISTING,
) -> List[str]:
    """
    Worst-first ordering of the single-method rows of one kind.

    Descending RMSE, ascending PLCC/SRCC; ties keep registry order.

    Raises:
        CompletenessError: a registry method has no row
    """
    if registry is None:
        registry = [split_label(m)[1] for m in report.methods(database_id, kind)]
        registry = [m for m in registry if m != BOOST]
    if not registry:
        raise CompletenessError(f"Report has no '{kind}' rows for '{database_id}'", missing=(database_id, kind))
    means = [(report.get(database_id, method_label(kind, m), criterion).mean, position, m)
             for position, m in enumerate(registry)]
    if criterion.lower_is_better:
        means.sort(key=lambda item: (-item[0], item[1]))
    else:
        means.sort(key=lambda item: (item[0], item[1]))
    return [m for _, _, m in means]


def significance_sample_size(n_stimuli: int, cfg: ExperimentConfig) -> int:
    """Sample size behind the significance line: smallest test fold, or the whole database."""
    return n_stimuli // cfg.k if cfg.significance_n == "test_fold" else n_stimuli


def fusion_label(learner: str, size: int) -> str:
    return method_label(learner, f"fusion-{size}")


def _significance_line(
    curve_points: Sequence[CurvePoint], criterion: Criterion, n: int, alpha: float
) -> Optional[float]:
    if not criterion.is_correlation:
        return None
    baseline = [p.mean for p in curve_points if p.size == 1 and p.criterion is criterion and p.mean == p.mean]
    if not baseline:
        return None
    try:
        return significance_threshold(max(baseline), n, alpha)
    except IQABoostError as e:
        logger.warning("No significance line for %s: %s", criterion.value, e)
        return None


def _checked_index(cfg: ExperimentConfig, ordering: Sequence[str]) -> Dict[str, int]:
    index = _registry_index(cfg)
    for metric_id in ordering:
        if metric_id not in index:
            raise RegistryError(
                f"Ordering names '{metric_id}', which is not in the registry",
                suggestion=StringMatcher.closest(metric_id, index),
            )
    if len(set(ordering)) != len(ordering) or not ordering:
        raise ValueError("ordering must be a non-empty list of distinct metric ids")
    return index


def run_incremental_fusion_study(
    db: Database,
    table: ScoreTable,
    cfg: ExperimentConfig,
    ordering: Sequence[str],
    ordered_by: Criterion = Criterion.SRCC,
) -> FusionCurve:
    """
    Train every learner on the first s estimators of a worst-first ordering.

    The fused columns enter the learner in registry order, so size 1 matches the
    single-method regressed row and size |registry| matches the boosted row.

    Raises:
        RegistryError: ordering names a metric outside the registry
        CompletenessError: incomplete score table
    """
    index = _checked_index(cfg, ordering)
    X, y = build_feature_matrix(db, table, cfg.registry)
    specs = []
    for size in range(1, len(ordering) + 1):
        columns = tuple(sorted(index[m] for m in ordering[:size]))
        specs.extend(MethodSpec(fusion_label(learner, size), columns, learner) for learner in cfg.learners)

    logger.info(
        "Incremental fusion on '%s' ordered by %s: %s", db.database_id, ordered_by.value, ", ".join(ordering)
    )
    outcomes = evaluate_methods(
        X, y, specs, fold_plans(len(db), cfg, db.database_id), cfg, db.database_id
    )

    points: List[CurvePoint] = []
    for size in range(1, len(ordering) + 1):
        for learner in cfg.learners:
            for criterion in CRITERIA:
                summary = summarize(outcomes, fusion_label(learner, size), criterion)
                points.append(
                    CurvePoint(size, learner, criterion, summary.mean, summary.std,
                               len(summary.values), summary.excluded)
                )

    n = significance_sample_size(len(db), cfg)
    lines = {c: _significance_line(points, c, n, cfg.alpha) for c in CRITERIA}
    flagged = tuple(
        CurvePoint(p.size, p.learner, p.criterion, p.mean, p.std, p.run_count, p.excluded,
                   None if lines[p.criterion] is None else bool(p.mean > lines[p.criterion]))
        for p in points
    )
    return FusionCurve(db.database_id, ordered_by, tuple(ordering), flagged, lines)


def run_fusion_scatter(
    db: Database,
    table: ScoreTable,
    cfg: ExperimentConfig,
    ordering: Sequence[str],
    run_index: int = 0,
) -> Tuple[ScatterPoint, ...]:
    """
    Per-stimulus predictions of every learner fusing the whole ordering.

    Uses the folds and seeds of one run of the incremental study, so the
    points are the predictions behind that run's largest fusion size. A
    learner that fails on a fold is left out with a warning.
    """
    index = _checked_index(cfg, ordering)
    plans = fold_plans(len(db), cfg, db.database_id)
    if not 0 <= run_index < len(plans):
        raise ValueError(f"run_index must be in [0, {len(plans)}), got {run_index}")
    X, y = build_feature_matrix(db, table, cfg.registry)
    columns = tuple(sorted(index[m] for m in ordering))

    points: List[ScatterPoint] = []
    for learner in cfg.learners:
        spec = MethodSpec(fusion_label(learner, len(ordering)), columns, learner)
        try:
            mapped, raw = out_of_fold_predictions(X, y, spec, plans[run_index], cfg, db.database_id)
        except IQABoostError as e:
            logger.warning("No scatter for %s on '%s': %s", spec.label, db.database_id, e)
            continue
        points.extend(
            ScatterPoint(r.stimulus_id, r.category, learner, float(y[i]), float(raw[i]), float(mapped[i]))
            for i, r in enumerate(db.records)
        )
    return tuple(points)


def ordering_for(
    cfg: ExperimentConfig, report: EvaluationReport, database_id: str, criterion: Criterion
) -> Tuple[str, ...]:
    """Explicit ordering from the config when given, else the worst-first ranking."""
    key = f"{database_id}/{criterion.value}"
    if key in cfg.orderings:
        return tuple(cfg.orderings[key])
    return tuple(rank_estimators(report, database_id, criterion, cfg.registry))


def count_boost_wins(report: EvaluationReport) -> Dict[str, Any]:
    """
    Per (database, criterion): does the best boosted row beat the best existing one?

    Returns:
        {"comparisons": [...], "wins": int, "total": int}
    """
    comparisons = []
    for database_id in report.databases():
        boosted = [m for m in report.methods(database_id) if split_label(m)[1] == BOOST]
        if not boosted:
            continue
        for criterion in CRITERIA:
            existing = report.get(database_id, method_label(BEST, EXISTING), criterion)
            best_boost = _extreme([report.get(database_id, m, criterion) for m in boosted], criterion)
            if criterion.lower_is_better:
                wins = best_boost.mean < existing.mean
            else:
                wins = best_boost.mean > existing.mean
            comparisons.append(
                {
                    "database_id": database_id,
                    "criterion": criterion.value,
                    "boost_method": best_boost.method,
                    "boost_mean": best_boost.mean,
                    "existing_method": existing.source,
                    "existing_mean": existing.mean,
                    "boost_wins": bool(wins),
                }
            )
    wins = sum(1 for c in comparisons if c["boost_wins"])
    return {"comparisons": comparisons, "wins": wins, "total": len(comparisons)}
