# qroute/workers/processors/comet.py
from typing import Optional

from qroute.arch import Architecture
from qroute.models import Circuit, MappedSchedule, Mapping
from qroute.routing.router import route
from qroute.schemas.schemas import RouterKind, RouterOptions
from qroute.workers.processors.base import RouteProcessor


class CometProcessor(RouteProcessor):
    router_kind = RouterKind.comet

    def __init__(self, arch: Architecture, options: Optional[RouterOptions] = None):
        super().__init__(arch)
        self.options = options or RouterOptions()

    def _route(self, circuit: Circuit, initial: Mapping) -> MappedSchedule:
        return route(circuit, self.arch, initial, self.options)
