import json

import numpy as np
import pytest

from convchar.factory import build_from_theta, build_laplace_from_exponents, theta_preset
from convchar.groups import FiniteAbelianGroup
from convchar.kernelfile import KernelFileError, dump_operator, load_operator, load_theta, operator_to_json
from convchar.laplace import HalfLineGrid


def test_finite_round_trip(tmp_path):
    g = FiniteAbelianGroup.parse("4x3")
    T = build_from_theta(g, "cosine", theta_preset(g, "cosine", "random", seed=4))
    path = tmp_path / "op.json"
    dump_operator(T, path)
    back = load_operator(path)
    assert back.kind == "cosine" and back.group == g
    assert np.array_equal(back.kernel, T.kernel)
    doc = json.loads(path.read_text())
    assert doc["schema_version"] == 1 and doc["shape"] == [len(g.cosine_orbits), 12]


def test_laplace_round_trip(tmp_path):
    grid = HalfLineGrid.from_horizon(0.1, 2)
    K = build_laplace_from_exponents(grid, [0.5, 1.0], [1.5, None])
    path = tmp_path / "lap.json"
    dump_operator(K, path)
    back = load_operator(path)
    assert back.grid == grid and back.y_samples == (0.5, 1.0)
    assert np.array_equal(back.kernel, K.kernel)


def _write(tmp_path, doc):
    p = tmp_path / "bad.json"
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


def _good():
    g = FiniteAbelianGroup.cyclic(2)
    return operator_to_json(build_from_theta(g, "fourier", theta_preset(g, "fourier", "identity")))


@pytest.mark.parametrize("mutate, fragment", [
    (lambda d: d.pop("kernel"), "missing field 'kernel'"),
    (lambda d: d.update(kind="wavelet"), "field 'kind'"),
    (lambda d: d.update(schema_version=7), "schema_version"),
    (lambda d: d.update(shape=[2]), "field 'shape'"),
    (lambda d: d["kernel"][1].pop(), "kernel row 1"),
    (lambda d: d["kernel"][0].__setitem__(1, [1, "x"]), "kernel[0][1]"),
    (lambda d: d.update(group="2x"), "malformed group spec"),
    (lambda d: d.update(shape=[3, 2], kernel=d["kernel"] + [[[0, 0], [0, 0]]]), "shape"),
])
def test_schema_errors_name_the_field(tmp_path, mutate, fragment):
    doc = _good()
    mutate(doc)
    with pytest.raises(KernelFileError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        load_operator(_write(tmp_path, doc))


def test_json_syntax_error_reports_line(tmp_path):
    with pytest.raises(KernelFileError, match="line 2"):
        load_operator(_write(tmp_path, '{"schema_version": 1,\n  "kind": }'))


def test_missing_file(tmp_path):
    with pytest.raises(KernelFileError, match="cannot read"):
        load_operator(tmp_path / "nope.json")


def test_theta_file(tmp_path):
    p = tmp_path / "theta.json"
    p.write_text(json.dumps({"kind": "fourier", "targets": [0, None, 2]}))
    assert load_theta(p).targets == (0, None, 2)
    p.write_text(json.dumps({"kind": "fourier", "targets": [0.5]}))
    with pytest.raises(KernelFileError):
        load_theta(p)
