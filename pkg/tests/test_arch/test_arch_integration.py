import numpy as np
import pytest

from qroute.arch import Architecture, builtin, hd_vd, list_builtins, load_architecture_file, resolve_durations
from qroute.exceptions import ArchitectureError, UnknownArchitectureError


@pytest.mark.parametrize(
    "name, qubits, edges",
    [
        ("grid-6x6", 36, 60),
        ("q16-melbourne", 16, 22),
        ("q20-tokyo", 20, 43),
        ("sycamore-54", 54, 88),
    ],
)
def test_bundled_architectures(name, qubits, edges):
    arch = builtin(name)
    assert arch.name == name
    assert arch.num_qubits == qubits
    assert len(arch.edges) == edges


def test_bundled_grids():
    assert builtin("grid-6x6").has_grid
    assert builtin("q16-melbourne").has_grid
    assert builtin("sycamore-54").has_grid
    assert not builtin("q20-tokyo").has_grid


def test_parameterized_families():
    assert builtin("line-7").num_qubits == 7
    arch = builtin("grid-2x3")
    assert arch.num_qubits == 6
    assert len(arch.edges) == 7


def test_unknown_architecture():
    with pytest.raises(UnknownArchitectureError):
        builtin("q99-nowhere")


def test_list_builtins():
    names = list_builtins()
    assert len(names) >= 4
    assert {"grid-6x6", "q16-melbourne", "q20-tokyo", "sycamore-54"} <= set(names)


def test_data_dir_override(tmp_path, monkeypatch, square_document):
    (tmp_path / "architectures").mkdir()
    (tmp_path / "architectures" / "square.yaml").write_text(square_document)
    monkeypatch.setenv("QROUTE_DATA_DIR", str(tmp_path))
    assert builtin("square").num_qubits == 4
    assert list_builtins()[0] == "square"


def test_missing_data_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("QROUTE_DATA_DIR", str(tmp_path / "absent"))
    with pytest.raises(ArchitectureError):
        builtin("grid-6x6")


def test_load_architecture_file(tmp_path, square_document):
    path = tmp_path / "square.yaml"
    path.write_text(square_document)
    assert load_architecture_file(path).name == "square"
    with pytest.raises(ArchitectureError):
        load_architecture_file(tmp_path / "missing.yaml")


def test_resolve_durations(tmp_path):
    assert resolve_durations(None).of("cx") == 2
    assert resolve_durations("default").of("swap") == 6
    assert resolve_durations("preset:neutral-atom").of("swap") == 3
    path = tmp_path / "durations.yaml"
    path.write_text("cx: 5\nswap: 15\n")
    durations = resolve_durations(str(path))
    assert (durations.of("cx"), durations.of("swap"), durations.of("h")) == (5, 15, 1)


def _random_connected(rng: np.random.Generator, n: int, extra: int, index: int) -> Architecture:
    edges = {(int(rng.integers(i)), i) for i in range(1, n)}
    for _ in range(extra):
        a, b = sorted(rng.choice(n, size=2, replace=False).tolist())
        edges.add((a, b))
    return Architecture.build(f"random-{index}", n, sorted(edges))


def test_distance_matrix_properties_on_random_graphs():
    rng = np.random.default_rng(8)
    for index in range(30):
        n = int(rng.integers(2, 13))
        arch = _random_connected(rng, n, int(rng.integers(0, 2 * n)), index)
        matrix = arch.distances.matrix

        assert (matrix == matrix.T).all(), arch.name
        assert (np.diag(matrix) == 0).all(), arch.name
        for a in range(n):
            for b in range(n):
                assert (matrix[a, b] == 1) == arch.is_coupled(a, b), (arch.name, a, b)
        # d(a, c) <= d(a, b) + d(b, c) for every b
        assert (matrix[:, None, :] <= matrix[:, :, None] + matrix[None, :, :]).all(), arch.name


@pytest.mark.parametrize("name", ["grid-6x6", "q16-melbourne", "grid-3x5", "line-7"])
def test_full_grid_distance_is_manhattan(name):
    arch = builtin(name)
    dist = arch.distances
    for a in range(arch.num_qubits):
        for b in range(arch.num_qubits):
            hd, vd = hd_vd(arch, a, b)
            assert dist.hops(a, b) == hd + vd, (name, a, b)


@pytest.mark.parametrize("name", ["grid-6x6", "q16-melbourne", "q20-tokyo", "sycamore-54", "line-5"])
def test_builtin_is_stable(name):
    first, second = builtin(name), builtin(name)
    assert first.edge_list == second.edge_list
    assert (first.distances.matrix == second.distances.matrix).all()
