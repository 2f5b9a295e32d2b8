import json

import numpy as np

from polyball import serialize
from polyball.berezin import PolyballPoint
from polyball.cli import main
from polyball.fock import FockTruncation
from polyball.naimark import kernel_from_generator
from polyball.pluriharm import CbMapData
from polyball.words import identity_multiword, multiword


def run(argv):
    return main(argv)


def test_verify_passes(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = run(["verify", "--n", "2,1", "--degrees", "2,2", "--max-len", "2",
                "--tol", "1e-8", "--seed", "7", "--output", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["all_pass"]
    assert len(report["identities"]) >= 12
    for item in report["identities"]:
        assert set(item) == {"name", "anchor", "max_error", "tolerance", "pass"}
    text = capsys.readouterr().out
    assert "PASS" in text


def test_verify_rejects_degenerate_truncation(capsys):
    assert run(["verify", "--degrees", "0,0"]) == 2


def test_verify_rejects_bad_grid():
    assert run(["verify", "--r-grid", "0.5,1.5"]) == 2


def test_verify_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--n", "2,1", "--degrees", "2,2", "--max-len", "2",
            "--seed", "11"]
    assert run(args + ["--output", str(out1)]) == 0
    assert run(args + ["--output", str(out2)]) == 0
    a = json.loads(out1.read_text())
    b = json.loads(out2.read_text())
    a.pop("timestamp"), b.pop("timestamp")
    assert a == b


def test_dilate_delta_kernel(tmp_path):
    g = identity_multiword([1])
    gen = {(g, g): np.eye(1)}
    k = kernel_from_generator("left", gen, 4, default=np.zeros((1, 1)))
    kfile = tmp_path / "kernel.json"
    serialize.dump(serialize.kernel_to_json(k), str(kfile))
    out = tmp_path / "dilation.json"
    code = run(["dilate", str(kfile), "--max-len", "4", "--output", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["space_dim"] == 5
    assert report["defects"]["reproduction_error"] < 1e-10
    assert report["defects"]["minimal"]


def test_dilate_rho_kernel(tmp_path):
    g = identity_multiword([1])
    gen = {(g, g): np.eye(1)}
    for m in range(1, 11):
        w = multiword([[1] * m], [1])
        gen[(w, g)] = np.array([[0.6 ** m]])
        gen[(g, w)] = np.array([[0.6 ** m]])
    k = kernel_from_generator("left", gen, 5)
    kfile = tmp_path / "kernel.json"
    serialize.dump(serialize.kernel_to_json(k), str(kfile))
    out = tmp_path / "dilation.json"
    assert run(["dilate", str(kfile), "--output", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["defects"]["reproduction_error"] <= 1e-9


def test_dilate_rejects_non_psd(tmp_path, capsys):
    g = identity_multiword([1])
    w = multiword([[1]], [1])
    gen = {(g, g): np.eye(1), (w, g): [[2.0]], (g, w): [[2.0]]}
    k = kernel_from_generator("left", gen, 2, default=np.zeros((1, 1)))
    kfile = tmp_path / "kernel.json"
    serialize.dump(serialize.kernel_to_json(k), str(kfile))
    assert run(["dilate", str(kfile)]) == 3
    assert "min eigenvalue" in capsys.readouterr().err


def test_transform_poisson_point_mass(tmp_path):
    mu = CbMapData.point_mass([1.0, 1.0], 24)
    x = PolyballPoint.from_scalars([[0.5], [0.5]])
    inputs = tmp_path / "inputs.json"
    serialize.dump(
        {"mu": serialize.cbmap_to_json(mu), "X": serialize.point_to_json(x)},
        str(inputs),
    )
    out = tmp_path / "value.json"
    code = run(["transform", str(inputs), "--kind", "poisson",
                "--r-grid", "0.2,0.5", "--output", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    value = serialize.matrix_from_json(report["value"], report["value_dim"])
    assert abs(value[0, 0] - 9.0) < 1e-6
    csv_text = (tmp_path / "value.csv").read_text().splitlines()
    assert csv_text[0].startswith("r,")
    assert len(csv_text) == 3


def test_transform_herglotz_vacuum(tmp_path):
    tau = CbMapData.vacuum_state([2, 1])
    x = PolyballPoint([[np.zeros((1, 1)), np.zeros((1, 1))], [np.zeros((1, 1))]])
    inputs = tmp_path / "inputs.json"
    serialize.dump(
        {"mu": serialize.cbmap_to_json(tau), "X": serialize.point_to_json(x)},
        str(inputs),
    )
    out = tmp_path / "value.json"
    assert run(["transform", str(inputs), "--kind", "herglotz",
                "--output", str(out)]) == 0
    report = json.loads(out.read_text())
    value = serialize.matrix_from_json(report["value"], report["value_dim"])
    np.testing.assert_allclose(value, np.eye(1))


def test_transform_berezin_identity(tmp_path, rng):
    from polyball.fock import FockOperator
    from polyball.sampling import random_nilpotent_point

    t = FockTruncation([2, 1], [3, 3])
    g = FockOperator(t, np.eye(t.dim))
    x = random_nilpotent_point(rng, (2, 1), 3, 0.7)
    inputs = tmp_path / "inputs.json"
    serialize.dump(
        {"g": serialize.operator_to_json(g), "X": serialize.point_to_json(x)},
        str(inputs),
    )
    out = tmp_path / "value.json"
    assert run(["transform", str(inputs), "--kind", "berezin",
                "--output", str(out)]) == 0
    report = json.loads(out.read_text())
    value = serialize.matrix_from_json(report["value"], report["value_dim"])
    np.testing.assert_allclose(value, np.eye(3), atol=1e-10)


def test_transform_rejects_outside_ball(tmp_path, capsys):
    tau = CbMapData.vacuum_state([1])
    x = PolyballPoint.from_scalars([[1.5]])
    inputs = tmp_path / "inputs.json"
    serialize.dump(
        {"mu": serialize.cbmap_to_json(tau), "X": serialize.point_to_json(x)},
        str(inputs),
    )
    assert run(["transform", str(inputs), "--kind", "poisson"]) == 4
    assert "not in the open polyball" in capsys.readouterr().err


def test_missing_file_is_config_error():
    assert run(["dilate", "/nonexistent/kernel.json"]) == 2
