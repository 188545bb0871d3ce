import logging
import re

import pytest

from qroute.main import EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED, main
from qroute.qasm import parse_mapped
from qroute.utils.reports import load_compare_report, load_route_report
from tests.test_cli.conftest import FAST_ROUTING

logger = logging.getLogger(__name__)


def test_route_writes_outputs(qft4, tmp_path, capsys):
    logger.info("qroute route: TEST FUNCTION STARTING")
    out, report, schedule = tmp_path / "m.qasm", tmp_path / "r.yaml", tmp_path / "s.txt"
    code = main(
        ["route", "--arch", "grid-6x6", "--in", qft4, "--out", str(out), "--report", str(report),
         "--schedule", str(schedule)] + FAST_ROUTING
    )
    assert code == EXIT_OK
    assert "qft4 on grid-6x6 [comet]: T_o=" in capsys.readouterr().out

    routed = parse_mapped(out.read_text(encoding="utf-8"))
    loaded = load_route_report(report.read_text(encoding="utf-8"))
    assert loaded.benchmark == "qft4"
    assert loaded.seed == 42
    assert loaded.swap_count == routed.swap_count
    assert loaded.total_gates == len(routed.gates)
    assert loaded.initial_mapping == routed.initial_mapping.as_list()
    lines = schedule.read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(routed.gates)
    assert all(re.match(r"^t=\d+ \S+ q\[\d+\]", line) for line in lines)


def test_route_baseline_with_decomposed_swaps(qft4, tmp_path, capsys):
    out = tmp_path / "m.qasm"
    code = main(
        ["route", "--arch", "line-4", "--in", qft4, "--router", "baseline", "--initial", "identity",
         "--decompose-swaps", "--out", str(out)]
    )
    assert code == EXIT_OK
    assert "[baseline]" in capsys.readouterr().out
    text = out.read_text(encoding="utf-8")
    assert "swap q[" not in text
    assert "// inserted decomposed" in text


def test_route_with_duration_preset(qft4, tmp_path):
    default_report, slow_report = tmp_path / "default.yaml", tmp_path / "slow.yaml"
    args = ["route", "--arch", "grid-2x3", "--in", qft4, "--initial", "identity"]
    assert main(args + ["--report", str(default_report)]) == EXIT_OK
    assert main(args + ["--durations", "preset:ion-trap", "--report", str(slow_report)]) == EXIT_OK
    default = load_route_report(default_report.read_text(encoding="utf-8"))
    slow = load_route_report(slow_report.read_text(encoding="utf-8"))
    assert slow.original_depth > default.original_depth


def test_unknown_architecture(qft4, capsys):
    assert main(["route", "--arch", "no-such-device", "--in", qft4]) == 3
    assert "unknown architecture" in capsys.readouterr().err


def test_capacity(benchmarks_dir):
    code = main(["route", "--arch", "grid-2x2", "--in", str(benchmarks_dir / "ghz_tree_n16.qasm"), "--initial", "identity"])
    assert code == 4


def test_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.qasm"
    bad.write_text("OPENQASM 2.0;\nqreg q[2];\ncx q[0] q[1];\n", encoding="utf-8")
    assert main(["route", "--arch", "grid-2x2", "--in", str(bad)]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_missing_architecture_option(qft4):
    assert main(["route", "--in", qft4]) == EXIT_USAGE


def test_invalid_routing_option(qft4):
    assert main(["route", "--arch", "grid-2x2", "--in", qft4, "--rt-rounds", "0"]) == EXIT_USAGE


def test_arch_list(capsys):
    assert main(["arch", "list"]) == EXIT_OK
    names = capsys.readouterr().out.split()
    assert names == ["grid-6x6", "q16-melbourne", "q20-tokyo", "sycamore-54", "line-N", "grid-RxC"]


def test_arch_show(capsys):
    assert main(["arch", "show", "grid-6x6"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "grid-6x6: 36 qubits, 60 edges"
    assert lines[1] == "grid: 6 x 6"
    assert lines[2] == "diameter: 10"
    assert lines[4].startswith("durations: ")
    assert "cx=2" in lines[4] and "swap=6" in lines[4]
    assert lines[5].startswith("edges: 0-1 ")


def test_arch_show_line(capsys):
    assert main(["arch", "show", "line-5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "mean distance: 2.000" in out
    assert "diameter: 4" in out


def test_verify_routed_file(qft4, tmp_path, capsys):
    out = tmp_path / "m.qasm"
    assert main(["route", "--arch", "grid-2x3", "--in", qft4, "--out", str(out)] + FAST_ROUTING) == EXIT_OK
    capsys.readouterr()
    assert main(["verify", "--in", qft4, "--routed", str(out), "--arch", "grid-2x3"]) == EXIT_OK
    printed = capsys.readouterr().out
    assert "permutation check passed" in printed
    assert "compliance check passed" in printed
    assert "statevector check passed" in printed


def test_verify_detects_corruption(qft4, tmp_path, capsys):
    out = tmp_path / "m.qasm"
    assert main(["route", "--arch", "grid-2x3", "--in", qft4, "--out", str(out)] + FAST_ROUTING) == EXIT_OK
    text = out.read_text(encoding="utf-8")
    corrupted = re.sub(r"^cx q\[(\d+)\],q\[(\d+)\];", r"cx q[\2],q[\1];", text, count=1, flags=re.MULTILINE)
    assert corrupted != text
    out.write_text(corrupted, encoding="utf-8")
    capsys.readouterr()
    assert main(["verify", "--in", qft4, "--routed", str(out)]) == EXIT_VERIFY_FAILED
    assert "permutation check failed" in capsys.readouterr().out


def test_verify_routes_first(qft4, capsys):
    assert main(["verify", "--in", qft4, "--arch", "line-5"] + FAST_ROUTING) == EXIT_OK
    printed = capsys.readouterr().out
    assert "schedule check passed" in printed
    assert "statevector check passed" in printed


def test_verify_skips_large_statevector(benchmarks_dir, capsys):
    circuit = str(benchmarks_dir / "ghz_tree_n16.qasm")
    assert main(["verify", "--in", circuit, "--arch", "grid-6x6"] + FAST_ROUTING) == EXIT_OK
    assert "statevector check skipped: more than 12 qubits" in capsys.readouterr().out


def test_verify_needs_an_architecture_to_route(qft4):
    assert main(["verify", "--in", qft4]) == EXIT_USAGE


def test_compare_empty_directory(tmp_path, capsys):
    assert main(["compare", "--benchmarks", str(tmp_path), "--arch", "grid-6x6"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("| benchmark | arch |")
    assert "0 failure(s)" in out


def test_compare_missing_directory(tmp_path):
    assert main(["compare", "--benchmarks", str(tmp_path / "absent"), "--arch", "grid-6x6"]) == EXIT_USAGE


def test_compare_is_deterministic(small_corpus, tmp_path):
    reports = []
    for run in range(2):
        report, table = tmp_path / f"cmp{run}.yaml", tmp_path / f"cmp{run}.md"
        code = main(
            ["compare", "--benchmarks", str(small_corpus), "--arch", "line-5", "--arch", "grid-2x3",
             "--rt-rounds", "1", "--rt-restarts", "2", "--report", str(report), "--table", str(table)]
        )
        assert code == EXIT_OK
        reports.append((report.read_bytes(), table.read_bytes()))
    assert reports[0] == reports[1]
    loaded = load_compare_report(reports[0][0].decode("utf-8"))
    assert [(row.benchmark, row.architecture) for row in loaded.rows] == [
        ("adder_n4", "line-5"),
        ("adder_n4", "grid-2x3"),
        ("toffoli_n3", "line-5"),
        ("toffoli_n3", "grid-2x3"),
    ]
    assert loaded.failures == 0
    assert loaded.seed == 42


def test_exit_code_constants():
    assert (EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_INTERNAL) == (0, 1, 2, 5)


@pytest.mark.benchmark
def test_duration_aware_router_beats_baseline(benchmarks_dir, tmp_path):
    logger.info("corpus comparison: TEST FUNCTION STARTING")
    report_path = tmp_path / "cmp.yaml"
    code = main(
        ["compare", "--benchmarks", str(benchmarks_dir), "--arch", "grid-6x6", "--arch", "q20-tokyo",
         "--report", str(report_path), "--table", str(tmp_path / "cmp.md")]
    )
    assert code == EXIT_OK
    report = load_compare_report(report_path.read_text(encoding="utf-8"))
    assert report.failures == 0
    assert report.geometric_mean >= 1.05
    assert report.comet_not_worse >= 0.6 * len(report.rows)


@pytest.mark.benchmark
def test_corpus_compare_is_byte_identical(benchmarks_dir, tmp_path):
    outputs = []
    for run in range(2):
        report_path = tmp_path / f"cmp{run}.yaml"
        code = main(
            ["compare", "--benchmarks", str(benchmarks_dir), "--arch", "grid-6x6", "--arch", "q20-tokyo",
             "--report", str(report_path), "--table", str(tmp_path / f"cmp{run}.md")]
        )
        assert code == EXIT_OK
        outputs.append(report_path.read_bytes())
    assert outputs[0] == outputs[1]


def test_compare_with_architecture_file(small_corpus, ring5_file, tmp_path):
    report = tmp_path / "cmp.yaml"
    code = main(
        ["compare", "--benchmarks", str(small_corpus), "--arch-file", str(ring5_file), "--arch", "line-5",
         "--rt-rounds", "1", "--rt-restarts", "2", "--report", str(report), "--table", str(tmp_path / "cmp.md")]
    )
    assert code == EXIT_OK
    loaded = load_compare_report(report.read_text(encoding="utf-8"))
    assert [(row.benchmark, row.architecture) for row in loaded.rows] == [
        ("adder_n4", "line-5"),
        ("adder_n4", "ring5"),
        ("toffoli_n3", "line-5"),
        ("toffoli_n3", "ring5"),
    ]
    assert loaded.failures == 0


def test_compare_needs_an_architecture(small_corpus):
    assert main(["compare", "--benchmarks", str(small_corpus)]) == EXIT_USAGE


def test_compare_missing_architecture_file(small_corpus, tmp_path):
    code = main(["compare", "--benchmarks", str(small_corpus), "--arch-file", str(tmp_path / "absent.yaml")])
    assert code == EXIT_USAGE
