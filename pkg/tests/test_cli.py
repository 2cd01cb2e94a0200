import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from lorentzpol.cli import CSV_HEADER, main, parse_scene, SceneError
from lorentzpol.stokes import polar_decompose, three_squeezes

LN2 = np.log(2)


def write_scene(tmp_path, beam=None, elements=(), grid=None, name="scene.json"):
    scene = {
        "beam": beam or {"A": 1.0, "B": 1.0, "phi": 0.0, "lambda": 1.0},
        "elements": list(elements),
        "time_grid": grid or {"times": [0.0, LN2, 2.0]},
    }
    p = tmp_path / name
    p.write_text(json.dumps(scene))
    return p


def read_rows(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    return rows[0], np.array(rows[1:], dtype=float)


def test_simulate_empty_pipeline(tmp_path):
    out = tmp_path / "out.csv"
    assert main(["simulate", str(write_scene(tmp_path)), "-o", str(out)]) == 0
    header, rows = read_rows(out)
    assert header == CSV_HEADER
    col = {name: rows[:, i] for i, name in enumerate(header)}
    assert col["det"][0] == pytest.approx(0, abs=1e-15)
    assert col["det"][1] == pytest.approx(0.75, abs=1e-15)
    assert col["chi"][1] == pytest.approx(np.pi / 3)
    np.testing.assert_allclose(col["det_rho"] + col["det_sigma"], 1.0, atol=1e-10)
    np.testing.assert_allclose(col["s"] ** 2 - col["r"] ** 2, col["det"], atol=1e-12)
    assert out.read_bytes().count(b"\r") == 0


def test_simulate_rotator_swaps_s1_s2(tmp_path):
    beam = {"A": 1.3, "B": 0.5, "phi": 0.4, "lambda": 0.7}
    plain, rot = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["simulate", str(write_scene(tmp_path, beam)), "-o", str(plain)]) == 0
    scene = write_scene(tmp_path, beam, [{"kind": "rotator", "theta": np.pi / 2}], name="r.json")
    assert main(["simulate", str(scene), "-o", str(rot)]) == 0
    _, a = read_rows(plain)
    _, b = read_rows(rot)
    # R(pi/2): S1' = -S2, S2' = S1
    np.testing.assert_allclose(b[:, 2], -a[:, 3], atol=1e-12)
    np.testing.assert_allclose(b[:, 3], a[:, 2], atol=1e-12)
    np.testing.assert_allclose(b[:, [1, 4]], a[:, [1, 4]], atol=1e-12)


def test_simulate_degrees_flag(tmp_path):
    beam = {"A": 1.0, "B": 0.8, "phi": 30.0, "lambda": 0.5}
    deg = write_scene(tmp_path, beam, [{"kind": "phase_shifter", "phi": 45.0}], name="d.json")
    rad = write_scene(tmp_path, dict(beam, phi=np.pi / 6),
                      [{"kind": "phase_shifter", "phi": np.pi / 4}], name="r.json")
    main(["simulate", str(deg), "-o", str(tmp_path / "d.csv"), "--degrees"])
    main(["simulate", str(rad), "-o", str(tmp_path / "r.csv")])
    np.testing.assert_allclose(read_rows(tmp_path / "d.csv")[1], read_rows(tmp_path / "r.csv")[1], atol=1e-14)


def test_simulate_attenuator_scales_intensity(tmp_path):
    grid = {"start": 0.5, "end": 1.5, "steps": 4}
    main(["simulate", str(write_scene(tmp_path, grid=grid)), "-o", str(tmp_path / "a.csv")])
    scene = write_scene(tmp_path, grid=grid, elements=[{"kind": "attenuator", "eta1": 0.5, "eta2": 0.5}], name="x.json")
    main(["simulate", str(scene), "-o", str(tmp_path / "b.csv")])
    _, a = read_rows(tmp_path / "a.csv")
    _, b = read_rows(tmp_path / "b.csv")
    assert len(a) == 5
    np.testing.assert_allclose(b[:, 1:5], np.exp(-1.0) * a[:, 1:5], rtol=1e-13)


def test_simulate_is_deterministic(tmp_path):
    scene = write_scene(tmp_path, elements=[{"kind": "squeezer", "eta": 0.3}, {"kind": "rotator", "theta": 1.1}],
                        grid={"start": 0, "end": 3, "steps": 50})
    main(["simulate", str(scene), "-o", str(tmp_path / "1.csv")])
    main(["simulate", str(scene), "-o", str(tmp_path / "2.csv")])
    assert (tmp_path / "1.csv").read_bytes() == (tmp_path / "2.csv").read_bytes()


@pytest.mark.parametrize("mutate, field", [
    (lambda s: s["beam"].update({"lambda": -1}), "beam.lambda"),
    (lambda s: s["beam"].pop("A"), "beam.A"),
    (lambda s: s["elements"].append({"kind": "mirror"}), "elements[0].kind"),
    (lambda s: s["elements"].append({"kind": "rotator"}), "elements[0].theta"),
    (lambda s: s.update({"time_grid": {"start": 0, "end": 1, "steps": 0}}), "time_grid.steps"),
    (lambda s: s.update({"time_grid": {"start": 2, "end": 1, "steps": 3}}), "time_grid.end"),
])
def test_validation_names_the_field(tmp_path, capsys, mutate, field):
    scene = {"beam": {"A": 1, "B": 1, "phi": 0, "lambda": 1}, "elements": [],
             "time_grid": {"start": 0, "end": 1, "steps": 2}}
    mutate(scene)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(scene))
    assert main(["simulate", str(p), "-o", str(tmp_path / "o.csv")]) == 2
    assert field in capsys.readouterr().err


def test_syntax_error_reports_line():
    with pytest.raises(SceneError, match="line 2"):
        parse_scene('{"beam":\n  oops}')


def test_invariant_breach_exits_3(tmp_path, monkeypatch):
    import lorentzpol.cli as cli
    monkeypatch.setattr(cli, "complementary_dets", lambda a, b, p, c: (0.0, 0.0))
    assert main(["simulate", str(write_scene(tmp_path)), "-o", str(tmp_path / "o.csv")]) == 3


def test_canonicalize_command(tmp_path, capsys):
    scene = write_scene(tmp_path, grid={"start": LN2, "end": LN2, "steps": 1})
    assert main(["canonicalize", str(scene)]) == 0
    out = dict(line.split() for line in capsys.readouterr().out.splitlines())
    assert float(out["eta"]) == pytest.approx(0.549306, abs=1e-6)
    assert float(out["value"]) == pytest.approx(0.866025, abs=1e-6)
    assert float(out["residual"]) < 1e-9


def test_canonicalize_pure_state_exits_4(tmp_path, capsys):
    scene = write_scene(tmp_path, grid={"start": 0, "end": 1, "steps": 1})
    assert main(["canonicalize", str(scene)]) == 4
    assert "pure state not reducible" in capsys.readouterr().err


def test_canonicalize_large_time(tmp_path, capsys):
    scene = write_scene(tmp_path, beam={"A": 2, "B": 1, "phi": 0.3, "lambda": 1},
                        grid={"start": 30, "end": 30, "steps": 1})
    assert main(["canonicalize", str(scene)]) == 0
    out = dict(line.split() for line in capsys.readouterr().out.splitlines())
    assert float(out["value"]) == pytest.approx(2.0, abs=1e-6)


def test_verify_passes(capsys):
    assert main(["verify", "--seed", "42", "--trials", "200"]) == 0
    assert capsys.readouterr().out.count(" ok") == 5


def test_verify_rejects_zero_trials():
    assert main(["verify", "--seed", "1", "--trials", "0"]) == 2


def test_verify_fault_injection(capsys):
    assert main(["verify", "--seed", "1", "--trials", "5", "--inject-fault", "dual_path"]) == 5
    assert "dual_path" in capsys.readouterr().err


def test_wigner_command(capsys):
    assert main(["wigner", "--eta", "0", "--axis-angle", "2.0943951023931953"]) == 0
    out = dict(line.split() for line in capsys.readouterr().out.splitlines())
    assert float(out["wigner_angle"]) == 0.0
    assert main(["wigner", "--eta", "1", "--axis-angle", "120", "--degrees"]) == 0
    out = dict(line.split() for line in capsys.readouterr().out.splitlines())
    angle = float(out["wigner_angle"])
    assert abs(angle) > 0.1
    assert out["wigner_angle"] == format(angle, ".12g")
    assert angle == pytest.approx(polar_decompose(three_squeezes(1.0, 2 * np.pi / 3)).wigner_angle, abs=1e-11)
    assert float(out["product_residual"]) < 1e-9


def test_wigner_reversal_negates():
    a = polar_decompose(three_squeezes(1.0, 2 * np.pi / 3)).wigner_angle
    b = polar_decompose(three_squeezes(1.0, 2 * np.pi / 3, reverse=True)).wigner_angle
    assert b == pytest.approx(-a, abs=1e-10)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lorentzpol", "wigner", "--eta", "0.5", "--axis-angle", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "wigner_angle" in r.stdout
    r = subprocess.run([sys.executable, "-m", "lorentzpol", "verify", "--trials", "nope"],
                       capture_output=True, text=True)
    assert r.returncode == 2
