import logging

import pytest

from qroute.arch import builtin
from qroute.qasm import parse_file
from qroute.routing.baseline import baseline_route
from qroute.routing.initial import reverse_traversal
from qroute.routing.router import route
from qroute.sched import original_weighted_depth, validate_schedule
from qroute.verify import compliance_errors, permutation_check

logger = logging.getLogger(__name__)


def test_swap_free_benchmark_embeds_without_swaps(benchmarks_dir):
    logger.info("swap-free embedding: TEST FUNCTION STARTING")
    circuit = parse_file(benchmarks_dir / "volume_n5_swapfree.qasm")
    arch = builtin("grid-6x6")
    original = original_weighted_depth(circuit, arch.durations)
    assert original == 15

    initial = reverse_traversal(circuit, arch, rounds=3, restarts=12, seed=42)
    comet = route(circuit, arch, initial)
    assert comet.swap_count == 0
    assert comet.weighted_depth == original

    baseline = baseline_route(circuit, arch, initial)
    assert baseline.swap_count == 0
    assert baseline.weighted_depth == original


@pytest.mark.parametrize("name", ["qft4", "ghz_fanout_n8", "adder_n4"])
@pytest.mark.parametrize("arch_name", ["q16-melbourne", "line-8"])
def test_benchmarks_route_validly(benchmarks_dir, name, arch_name):
    circuit = parse_file(benchmarks_dir / f"{name}.qasm")
    arch = builtin(arch_name)
    initial = reverse_traversal(circuit, arch, rounds=1, restarts=2, seed=1)

    comet = route(circuit, arch, initial)
    assert compliance_errors(comet.mapped_circuit, arch) == []
    assert validate_schedule(comet, arch) == []
    assert permutation_check(circuit, comet).ok

    baseline = baseline_route(circuit, arch, initial)
    assert compliance_errors(baseline.mapped_circuit, arch) == []
    assert permutation_check(circuit, baseline).ok
