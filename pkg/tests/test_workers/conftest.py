import pytest

from qroute.arch import grid_architecture
from qroute.qasm import parse

TINY_BENCHMARKS = {
    "bell_pair.qasm": 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\ncreg c[2];\nh q[0];\ncx q[0],q[1];\nmeasure q -> c;\n',
    "star.qasm": (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[4];\n'
        "h q[0];\ncx q[0],q[1];\ncx q[0],q[2];\ncx q[0],q[3];\nt q[2];\ncx q[3],q[1];\n"
    ),
}


@pytest.fixture()
def square():
    return grid_architecture(2, 2)


@pytest.fixture()
def fragment():
    return parse(
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[4];\nt q[1];\ncx q[0],q[2];\ncx q[0],q[3];\n', name="fragment"
    )


@pytest.fixture()
def tiny_benchmarks(tmp_path):
    for name, text in TINY_BENCHMARKS.items():
        (tmp_path / name).write_text(text, encoding="utf-8")
    (tmp_path / "notes.txt").write_text("not a circuit", encoding="utf-8")
    return tmp_path


@pytest.fixture()
def job_payload(benchmarks_dir):
    return {
        "benchmark": str(benchmarks_dir / "toffoli_n3.qasm"),
        "architecture": "line-4",
        "seed": 42,
        "rt_rounds": 1,
        "rt_restarts": 2,
    }
