"""Model-vs-simulation comparison harness.

Builds the observed/predicted comparison rows behind the CLI: single-config
comparisons across models, reproduction of the five reference comparison
tables, and parameter sweeps.  Rows carry full reproducibility metadata
(config, trial count, seed, generator name) and serialize to aligned text,
CSV, or JSON.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidArgumentError, MttdlError
from .formatting import format_quantity
from .models import MODEL_NAMES, SystemConfig, predict
from .sim import RNG_NAME, SimulationResult, SimulationSpec, run_simulation

__all__ = [
    "COMPARISON_COLUMNS",
    "REFERENCE_TABLES",
    "ComparisonRow",
    "ReferenceTable",
    "SweepResult",
    "SweepSpec",
    "TableResult",
    "compare_models",
    "render_comparison_rows",
    "render_table_result",
    "reproduce_reference_tables",
    "rows_to_csv",
    "rows_to_json",
    "run_sweep",
]

COMPARISON_COLUMNS = (
    "n",
    "k",
    "mttf",
    "mttr",
    "model",
    "predicted",
    "observed",
    "op_ratio",
    "iterations",
    "seed",
    "rng_name",
)


@dataclass(frozen=True)
class ComparisonRow:
    """One (config, model) cell: the prediction and, optionally, the observed mean."""

    cfg: SystemConfig
    model: str
    predicted: float
    observed: float | None = None
    op_ratio: float | None = None
    iterations: int | None = None
    seed: int | None = None
    rng_name: str | None = None


def _ordered_models(models: Iterable[str]) -> list[str]:
    requested = set(models)
    unknown = requested.difference(MODEL_NAMES)
    if unknown:
        raise InvalidArgumentError(f"unknown model identifier(s): {sorted(unknown)}")
    return [m for m in MODEL_NAMES if m in requested]


def compare_models(
    cfg: SystemConfig,
    models: Iterable[str],
    iterations: int | None = None,
    seed: int = 0,
    parallelism: int = 1,
) -> list[ComparisonRow]:
    """One row per requested model; all rows share a single simulation run.

    With ``iterations=None`` no simulation is run and the observed/op_ratio
    fields are left empty.
    """
    observed: float | None = None
    sim: SimulationResult | None = None
    if iterations is not None:
        sim = run_simulation(SimulationSpec(cfg, iterations, seed, parallelism))
        observed = sim.mean
    rows = []
    for model in _ordered_models(models):
        predicted = predict(cfg, model).mttdl
        rows.append(
            ComparisonRow(
                cfg=cfg,
                model=model,
                predicted=predicted,
                observed=observed,
                op_ratio=None if observed is None else observed / predicted,
                iterations=None if sim is None else sim.iterations,
                seed=None if sim is None else sim.seed,
                rng_name=None if sim is None else sim.rng_name,
            )
        )
    return rows


@dataclass(frozen=True)
class ReferenceTable:
    """One of the five built-in comparison tables.

    ``layout`` selects the printed key columns ("n-k-mttf" for the high-ratio
    set where mttr is fixed at 1, "mttf-mttr" for the low-ratio set where the
    config is fixed at 10-of-6); ``number_format`` matches the style the
    reference values use.
    """

    key: str
    title: str
    model: str
    configs: tuple[SystemConfig, ...]
    iterations: int
    layout: str
    number_format: str


# Shared row sets.  The final high-ratio row is evaluated at mttf=150: the
# source table prints mttf=200 for it, but none of that row's derived cells
# (its three model predictions or its simulated mean) regenerate at 200, while
# every one of them matches 150 to all printed digits.  The printed 200 is a
# transcription slip; 150 is what the row's numbers were computed from.
_HIGH_RATIO_CONFIGS = (
    SystemConfig(10, 10, 2000, 1),
    SystemConfig(10, 9, 2000, 1),
    SystemConfig(10, 8, 1500, 1),
    SystemConfig(10, 7, 500, 1),
    SystemConfig(10, 6, 150, 1),
)

_LOW_RATIO_CONFIGS = (
    SystemConfig(10, 6, 20, 1),
    SystemConfig(10, 6, 10, 1),
    SystemConfig(10, 6, 1, 1),
    SystemConfig(10, 6, 1, 10),
    SystemConfig(10, 6, 1, 20),
)

REFERENCE_TABLES = (
    ReferenceTable(
        key="chen-high-ratio",
        title="Chen model vs simulation (mttr = 1)",
        model="chen",
        configs=_HIGH_RATIO_CONFIGS,
        iterations=2000,
        layout="n-k-mttf",
        number_format="sci",
    ),
    ReferenceTable(
        key="angus-high-ratio",
        title="Angus model vs simulation (mttr = 1)",
        model="angus",
        configs=_HIGH_RATIO_CONFIGS,
        iterations=2000,
        layout="n-k-mttf",
        number_format="sci",
    ),
    ReferenceTable(
        key="angus-simplified-high-ratio",
        title="Simplified Angus model vs simulation (mttr = 1)",
        model="angus-simplified",
        configs=_HIGH_RATIO_CONFIGS,
        iterations=2000,
        layout="n-k-mttf",
        number_format="sci",
    ),
    ReferenceTable(
        key="angus-low-ratio",
        title="Angus model vs simulation at low mttf/mttr (10-of-6)",
        model="angus",
        configs=_LOW_RATIO_CONFIGS,
        iterations=100000,
        layout="mttf-mttr",
        number_format="fixed",
    ),
    ReferenceTable(
        key="markov-low-ratio",
        title="Markov first-failure model vs simulation at low mttf/mttr (10-of-6)",
        model="markov",
        configs=_LOW_RATIO_CONFIGS,
        iterations=100000,
        layout="mttf-mttr",
        number_format="fixed",
    ),
)


@dataclass(frozen=True)
class TableResult:
    table: ReferenceTable
    rows: tuple[ComparisonRow, ...]


def reproduce_reference_tables(
    *,
    high_ratio_iterations: int | None = None,
    low_ratio_iterations: int | None = None,
    seed: int = 0,
    parallelism: int = 1,
    simulate: bool = True,
) -> list[TableResult]:
    """Recompute all five reference tables.

    The three high-ratio tables share one simulation per config, as do the two
    low-ratio tables, so each distinct config is simulated exactly once.  With
    no overrides each table runs its canonical trial count (2000 high-ratio,
    100000 low-ratio); overrides exist because the high-ratio rows cost
    minutes of CPU at full fidelity.
    """
    sims: dict[tuple[SystemConfig, int], SimulationResult] = {}
    results = []
    for table in REFERENCE_TABLES:
        override = (
            high_ratio_iterations if table.layout == "n-k-mttf" else low_ratio_iterations
        )
        iterations = table.iterations if override is None else override
        rows = []
        for cfg in table.configs:
            sim: SimulationResult | None = None
            if simulate:
                sim_key = (cfg, iterations)
                if sim_key not in sims:
                    sims[sim_key] = run_simulation(
                        SimulationSpec(cfg, iterations, seed, parallelism)
                    )
                sim = sims[sim_key]
            predicted = predict(cfg, table.model).mttdl
            rows.append(
                ComparisonRow(
                    cfg=cfg,
                    model=table.model,
                    predicted=predicted,
                    observed=None if sim is None else sim.mean,
                    op_ratio=None if sim is None else sim.mean / predicted,
                    iterations=None if sim is None else sim.iterations,
                    seed=None if sim is None else sim.seed,
                    rng_name=None if sim is None else sim.rng_name,
                )
            )
        results.append(TableResult(table=table, rows=tuple(rows)))
    return results


@dataclass(frozen=True)
class SweepSpec:
    """Cartesian sweep over configuration ranges.

    Combinations that violate the config invariants (k > n) are skipped and
    reported rather than raised, as are per-combination model failures such as
    overflow; the rest of the sweep always completes.
    """

    ns: tuple[int, ...]
    ks: tuple[int, ...]
    mttfs: tuple[float, ...]
    mttrs: tuple[float, ...]
    models: tuple[str, ...] = MODEL_NAMES[:4]
    simulate: bool = False
    iterations: int = 2000
    seed: int = 0
    parallelism: int = 1


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[ComparisonRow, ...]
    skipped: tuple[tuple[tuple[int, int, float, float], str], ...]


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the sweep in lexicographic (n, k, mttf, mttr, model) order."""
    models = _ordered_models(spec.models)
    rows: list[ComparisonRow] = []
    skipped: list[tuple[tuple[int, int, float, float], str]] = []
    for n, k, mttf, mttr in itertools.product(
        sorted(set(spec.ns)),
        sorted(set(spec.ks)),
        sorted(set(spec.mttfs)),
        sorted(set(spec.mttrs)),
    ):
        combo = (n, k, float(mttf), float(mttr))
        try:
            cfg = SystemConfig(n, k, mttf, mttr)
            rows.extend(
                compare_models(
                    cfg,
                    models,
                    iterations=spec.iterations if spec.simulate else None,
                    seed=spec.seed,
                    parallelism=spec.parallelism,
                )
            )
        except MttdlError as exc:
            skipped.append((combo, str(exc)))
    return SweepResult(rows=tuple(rows), skipped=tuple(skipped))


def _row_record(row: ComparisonRow) -> dict[str, object]:
    return {
        "n": row.cfg.n,
        "k": row.cfg.k,
        "mttf": row.cfg.mttf,
        "mttr": row.cfg.mttr,
        "model": row.model,
        "predicted": row.predicted,
        "observed": row.observed,
        "op_ratio": row.op_ratio,
        "iterations": row.iterations,
        "seed": row.seed,
        "rng_name": row.rng_name,
    }


def rows_to_csv(rows: Sequence[ComparisonRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(COMPARISON_COLUMNS)
    for row in rows:
        record = _row_record(row)
        writer.writerow(
            ["" if record[col] is None else record[col] for col in COMPARISON_COLUMNS]
        )
    return buffer.getvalue()


def rows_to_json(rows: Sequence[ComparisonRow]) -> str:
    return json.dumps([_row_record(row) for row in rows], indent=2)


def _format_scale(value: float) -> str:
    # Key columns (n, k, mttf, mttr) are printed compactly: 2000, 1, 0.5.
    return f"{value:g}"


def _render_aligned(header: list[str], body: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for line in body:
        for i, cell in enumerate(line):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for line in body:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(line, widths)).rstrip())
    return "\n".join(lines)


def render_comparison_rows(rows: Sequence[ComparisonRow], number_format: str = "auto") -> str:
    """Aligned text table with one line per (config, model) row."""
    header = ["N", "K", "MTTF", "MTTR", "Model", "Predicted", "Observed", "O/P"]
    body = []
    for row in rows:
        body.append(
            [
                str(row.cfg.n),
                str(row.cfg.k),
                _format_scale(row.cfg.mttf),
                _format_scale(row.cfg.mttr),
                row.model,
                format_quantity(row.predicted, number_format),
                "" if row.observed is None else format_quantity(row.observed, number_format),
                "" if row.op_ratio is None else f"{row.op_ratio:.3f}",
            ]
        )
    return _render_aligned(header, body)


def render_table_result(result: TableResult) -> str:
    """Render one reference table in its native layout and number style."""
    table = result.table
    simulated = any(row.observed is not None for row in result.rows)
    if table.layout == "n-k-mttf":
        header = ["N", "K", "MTTF", "Predicted"]
        keys = [
            [str(r.cfg.n), str(r.cfg.k), _format_scale(r.cfg.mttf)] for r in result.rows
        ]
        op_digits = 3
    else:
        header = ["MTTF", "MTTR", "Predicted"]
        keys = [
            [_format_scale(r.cfg.mttf), _format_scale(r.cfg.mttr)] for r in result.rows
        ]
        op_digits = 2
    if simulated:
        header += ["Observed", "O/P"]
    body = []
    for key_cells, row in zip(keys, result.rows):
        cells = key_cells + [format_quantity(row.predicted, table.number_format)]
        if simulated:
            cells.append(format_quantity(row.observed, table.number_format))
            cells.append(f"{row.op_ratio:.{op_digits}f}")
        body.append(cells)
    return f"{table.title}\n{_render_aligned(header, body)}"
