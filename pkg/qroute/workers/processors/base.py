# qroute/workers/processors/base.py
from abc import ABC, abstractmethod
from dataclasses import dataclass
import logging
import time
from typing import Optional

from qroute.arch import Architecture
from qroute.models import Circuit, MappedSchedule, Mapping
from qroute.routing.router import check_capacity
from qroute.schemas.schemas import RouteReport, RouterKind
from qroute.sched import decompose_schedule, original_weighted_depth

logger = logging.getLogger(__name__)


@dataclass
class RouteOutcome:
    schedule: MappedSchedule
    report: RouteReport


class RouteProcessor(ABC):
    router_kind: RouterKind

    def __init__(self, arch: Architecture):
        self.arch = arch

    @abstractmethod
    def _route(self, circuit: Circuit, initial: Mapping) -> MappedSchedule:
        """Route `circuit` from `initial`. Implemented by CometProcessor and BaselineProcessor."""
        pass

    def process(
        self,
        circuit: Circuit,
        initial: Mapping,
        decompose: bool = False,
        seed: Optional[int] = None,
        benchmark: Optional[str] = None,
        timed: bool = True,
    ) -> RouteOutcome:
        """
        Route one circuit and build its report.
        Capacity is checked first; with `decompose`, swaps are expanded into CX triples
        before counting gates. `timed=False` leaves wall_clock_ms unset.
        """
        check_capacity(circuit, self.arch)
        logger.info(f"[{self.router_kind.value}] Routing '{circuit.name}' on '{self.arch.name}'")

        started = time.perf_counter()
        schedule = self._route(circuit, initial)
        elapsed_ms = (time.perf_counter() - started) * 1000.0

        if decompose:
            schedule = decompose_schedule(schedule, self.arch)
            logger.debug(f"[{self.router_kind.value}] Decomposed {schedule.swap_count} swap(s) into CX triples")

        mapped = schedule.mapped_circuit
        report = RouteReport(
            benchmark=benchmark or circuit.name,
            architecture=self.arch.name,
            router=self.router_kind,
            seed=seed,
            original_depth=original_weighted_depth(circuit, self.arch.durations),
            weighted_depth=schedule.weighted_depth,
            swap_count=schedule.swap_count,
            total_gates=len(mapped.gates),
            cx_count=mapped.cx_count,
            wall_clock_ms=round(elapsed_ms, 3) if timed else None,
            initial_mapping=mapped.initial_mapping.as_list(),
            final_mapping=mapped.final_mapping.as_list(),
            stats=dict(schedule.stats),
        )
        logger.info(
            f"[{self.router_kind.value}] '{circuit.name}': T_o={report.original_depth}, "
            f"depth={report.weighted_depth}, swaps={report.swap_count}"
        )
        return RouteOutcome(schedule, report)
