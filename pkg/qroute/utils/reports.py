import logging
import math
from pathlib import Path
from typing import List, Optional, Sequence, Type, TypeVar, Union

import numpy as np
import yaml
from pydantic import BaseModel, ValidationError

from qroute.schemas.schemas import CompareReport, CompareRow, RouteReport

logger = logging.getLogger(__name__)

ReportModel = TypeVar("ReportModel", bound=BaseModel)

SUPPORTED_SCHEMA_VERSION = 1


def dump_report(report: BaseModel) -> str:
    """Report as YAML, keys in field order."""
    return yaml.safe_dump(report.model_dump(mode="json"), sort_keys=False)


def _load(text: str, model: Type[ReportModel]) -> ReportModel:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        logger.error(f"Report is not valid YAML: {e}")
        raise ValueError(f"report is not valid YAML: {e}") from e
    if not isinstance(data, dict):
        raise ValueError("report must be a mapping")
    version = data.get("schema_version", SUPPORTED_SCHEMA_VERSION)
    if version != SUPPORTED_SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema_version {version}")
    try:
        return model.model_validate(data)
    except ValidationError as e:
        logger.error(f"Report does not match {model.__name__}: {e}")
        raise ValueError(f"report does not match {model.__name__}: {e.errors()[0]['msg']}") from e


def load_route_report(text: str) -> RouteReport:
    return _load(text, RouteReport)


def load_compare_report(text: str) -> CompareReport:
    return _load(text, CompareReport)


def write_text(path: Union[str, Path], text: str) -> None:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    logger.debug(f"Wrote {path}")


def depth_ratio(baseline_depth: int, comet_depth: int) -> float:
    """T_S / T_C. Two empty schedules compare as equal."""
    if comet_depth == 0:
        return 1.0 if baseline_depth == 0 else math.inf
    return baseline_depth / comet_depth


def summarize(
    rows: Sequence[CompareRow], seed: Optional[int] = None, rt_rounds: int = 3, rt_restarts: int = 12
) -> CompareReport:
    """Aggregate rows; failed rows are counted but excluded from the means."""
    ratios: List[float] = [row.ratio for row in rows if row.ok]
    arithmetic = geometric = None
    if ratios:
        values = np.asarray(ratios, dtype=float)
        arithmetic = float(values.mean())
        geometric = float(np.exp(np.log(values).mean()))
    return CompareReport(
        seed=seed,
        rt_rounds=rt_rounds,
        rt_restarts=rt_restarts,
        rows=list(rows),
        arithmetic_mean=arithmetic,
        geometric_mean=geometric,
        comet_not_worse=sum(1 for row in rows if row.ok and row.comet_depth <= row.baseline_depth),
        failures=sum(1 for row in rows if not row.ok),
    )


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def markdown_table(report: CompareReport) -> str:
    header = "| benchmark | arch | N_L | T_o | T_C | T_S | T_S/T_C | swaps C | swaps S |"
    lines = [header, "|" + "---|" * 9]
    for row in report.rows:
        if row.error is not None:
            lines.append(f"| {row.benchmark} | {row.architecture} | {_cell(row.num_logical)} | error: {row.error} |||||||")
            continue
        cells = [
            row.benchmark,
            row.architecture,
            row.num_logical,
            row.original_depth,
            row.comet_depth,
            row.baseline_depth,
            row.ratio,
            row.comet_swaps,
            row.baseline_swaps,
        ]
        lines.append("| " + " | ".join(_cell(c) for c in cells) + " |")
    lines.append("")
    lines.append(f"Arithmetic mean T_S/T_C: {_cell(report.arithmetic_mean)}")
    lines.append(f"Geometric mean T_S/T_C: {_cell(report.geometric_mean)}")
    ok = len(report.rows) - report.failures
    lines.append(f"T_C <= T_S on {report.comet_not_worse} of {ok} row(s); {report.failures} failure(s)")
    return "\n".join(lines) + "\n"
