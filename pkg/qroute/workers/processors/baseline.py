# qroute/workers/processors/baseline.py
from typing import Optional

from qroute.arch import Architecture
from qroute.models import Circuit, MappedSchedule, Mapping
from qroute.routing.baseline import baseline_route
from qroute.schemas.schemas import BaselineOptions, RouterKind
from qroute.workers.processors.base import RouteProcessor


class BaselineProcessor(RouteProcessor):
    router_kind = RouterKind.baseline

    def __init__(self, arch: Architecture, options: Optional[BaselineOptions] = None):
        super().__init__(arch)
        self.options = options or BaselineOptions()

    def _route(self, circuit: Circuit, initial: Mapping) -> MappedSchedule:
        return baseline_route(circuit, self.arch, initial, self.options)
