import logging
from pathlib import Path
from typing import Any, Dict

from qroute.arch import Architecture, builtin, load_architecture_file, resolve_durations
from qroute.celery import celery_app
from qroute.qasm import parse_file
from qroute.routing.initial import reverse_traversal
from qroute.schemas.schemas import CompareJob, CompareRow
from qroute.utils.reports import depth_ratio
from qroute.workers.processors.baseline import BaselineProcessor
from qroute.workers.processors.comet import CometProcessor

logger = logging.getLogger(__name__)


def _handle_task_exception(job: Dict[str, Any], exception: Exception) -> Dict[str, Any]:
    """Turn a failed job into an error row so the rest of the comparison keeps going."""
    benchmark = Path(str(job.get("benchmark", "?"))).stem
    architecture = str(job.get("architecture", "?"))
    logger.error(f"Job {benchmark} on {architecture} failed: {exception}", exc_info=True)
    error_message = f"{exception.__class__.__name__}: {str(exception)[:200]}"
    return CompareRow(benchmark=benchmark, architecture=architecture, error=error_message).model_dump(mode="json")


def resolve_job_architecture(job: CompareJob) -> Architecture:
    arch = load_architecture_file(job.architecture_file) if job.architecture_file else builtin(job.architecture)
    if job.durations is not None:
        arch = arch.with_durations(resolve_durations(job.durations))
    return arch


def run_benchmark_job(job: CompareJob) -> CompareRow:
    """Route one benchmark with both routers from one shared reverse-traversal mapping."""
    arch = resolve_job_architecture(job)
    circuit = parse_file(job.benchmark)
    initial = reverse_traversal(
        circuit, arch, rounds=job.rt_rounds, restarts=job.rt_restarts, seed=job.seed, options=job.router
    )
    comet = CometProcessor(arch, job.router).process(circuit, initial, seed=job.seed, timed=False)
    baseline = BaselineProcessor(arch, job.baseline).process(circuit, initial, seed=job.seed, timed=False)
    return CompareRow(
        benchmark=circuit.name,
        architecture=job.architecture,
        num_logical=circuit.num_logical,
        original_depth=comet.report.original_depth,
        comet_depth=comet.report.weighted_depth,
        baseline_depth=baseline.report.weighted_depth,
        comet_swaps=comet.report.swap_count,
        baseline_swaps=baseline.report.swap_count,
        ratio=depth_ratio(baseline.report.weighted_depth, comet.report.weighted_depth),
    )


@celery_app.task(name="route_benchmark_task")
def route_benchmark_task(job: Dict[str, Any]) -> Dict[str, Any]:
    try:
        logger.info(f"[Task route_benchmark_task] Starting {job.get('benchmark')} on {job.get('architecture')}")
        row = run_benchmark_job(CompareJob.model_validate(job))
        logger.info(f"[Task route_benchmark_task] Finished {row.benchmark} on {row.architecture}: ratio {row.ratio}")
        return row.model_dump(mode="json")
    except Exception as task_exc:
        return _handle_task_exception(job, task_exc)
