"""Producer side of `compare`: one task per (benchmark x architecture), rows collected in job order."""
import logging
from pathlib import Path
from typing import List, Sequence, Union

from qroute import config
from qroute.schemas.schemas import CompareJob, CompareReport, CompareRow
from qroute.utils.reports import summarize
from qroute.workers.consumer import _handle_task_exception, route_benchmark_task

logger = logging.getLogger(__name__)


def list_benchmarks(directory: Union[str, Path]) -> List[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"benchmark directory not found: {directory}")
    return sorted(directory.glob("*.qasm"), key=lambda path: path.name)


def build_jobs(
    benchmarks: Sequence[Path],
    architectures: Sequence[str],
    template: CompareJob,
    architecture_files: Sequence[Union[str, Path]] = (),
) -> List[CompareJob]:
    """Jobs per benchmark: named architectures first, then architecture files labelled by stem."""
    targets = [{"architecture": arch, "architecture_file": None} for arch in architectures]
    targets += [{"architecture": Path(path).stem, "architecture_file": str(path)} for path in architecture_files]
    return [template.model_copy(update={"benchmark": str(path), **target}) for path in benchmarks for target in targets]


def run_compare(jobs: Sequence[CompareJob]) -> List[CompareRow]:
    """Dispatch every job, then collect results in submission order."""
    payloads = [job.model_dump(mode="json") for job in jobs]
    pending = [route_benchmark_task.delay(payload) for payload in payloads]
    logger.info(f"Dispatched {len(pending)} compare job(s)")

    timeout = config.compare_timeout()
    rows: List[CompareRow] = []
    for payload, result in zip(payloads, pending):
        try:
            data = result.get(timeout=timeout)
        except Exception as e:
            data = _handle_task_exception(payload, e)
        rows.append(CompareRow.model_validate(data))
    return rows


def compare(
    benchmarks_dir: Union[str, Path],
    architectures: Sequence[str],
    template: CompareJob,
    architecture_files: Sequence[Union[str, Path]] = (),
) -> CompareReport:
    benchmarks = list_benchmarks(benchmarks_dir)
    for path in architecture_files:
        if not Path(path).is_file():
            raise FileNotFoundError(f"architecture file not found: {path}")
    if not benchmarks:
        logger.warning(f"No .qasm files in {benchmarks_dir}")
    rows = run_compare(build_jobs(benchmarks, architectures, template, architecture_files))
    return summarize(rows, seed=template.seed, rt_rounds=template.rt_rounds, rt_restarts=template.rt_restarts)
