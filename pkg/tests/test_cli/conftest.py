import logging
import shutil

import pytest

FAST_ROUTING = ["--seed", "42", "--rt-rounds", "1", "--rt-restarts", "2"]


@pytest.fixture()
def qft4(benchmarks_dir):
    return str(benchmarks_dir / "qft4.qasm")


@pytest.fixture()
def small_corpus(tmp_path, benchmarks_dir):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for name in ("toffoli_n3.qasm", "adder_n4.qasm"):
        shutil.copy(benchmarks_dir / name, corpus / name)
    return corpus


@pytest.fixture(autouse=True)
def detach_cli_handlers():
    yield
    logger = logging.getLogger("qroute")
    for handler in list(logger.handlers):
        if getattr(handler, "_qroute_handler", False):
            logger.removeHandler(handler)
            handler.close()


RING5 = """
name: ring5
num_qubits: 5
edges: [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]
"""


@pytest.fixture()
def ring5_file(tmp_path):
    document = tmp_path / "ring5.yaml"
    document.write_text(RING5, encoding="utf-8")
    return document
