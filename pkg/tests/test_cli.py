import json

import numpy as np
import pytest

from su2pair.cli import main
from su2pair.hamiltonian import CoefficientSet
from su2pair.serialization import (
    coefficient_set_from_dict,
    coefficient_set_to_dict,
    format_float,
)

ENTANGLED = {
    "upsilon": 0.0,
    "alpha": [0, 0, 1],
    "beta": [0, 0, 0],
    "omega": [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
}


@pytest.fixture
def entangled_file(tmp_path):
    path = tmp_path / "entangled.json"
    path.write_text(json.dumps(ENTANGLED))
    return path


def read_csv(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


class TestSerialization:
    def test_round_trip(self):
        c = CoefficientSet(0.25, (1, 2, 3), (4, 5, 6), np.arange(9.0).reshape(3, 3))
        back = coefficient_set_from_dict(coefficient_set_to_dict(c))
        assert back.upsilon == c.upsilon
        assert np.array_equal(back.omega, c.omega)

    def test_seventeen_digit_floats_round_trip(self, rng):
        for _ in range(200):
            x = float(rng.normal() * 10.0 ** rng.integers(-8, 8))
            assert float(format_float(x)) == x

    def test_bad_payloads(self):
        from su2pair.errors import InputFormatError

        for payload in (
            [],
            {"upsilon": 0},
            {**ENTANGLED, "alpha": [0, 0]},
            {**ENTANGLED, "omega": [[0] * 3] * 2},
            {**ENTANGLED, "upsilon": "spam"},
            {**ENTANGLED, "upsilon": float("nan")},
        ):
            with pytest.raises(InputFormatError):
                coefficient_set_from_dict(payload)


class TestSolveCommand:
    def test_entangled_file(self, entangled_file, tmp_path, capsys):
        out = tmp_path / "eig.json"
        assert main(["solve", "--input", str(entangled_file), "--output", str(out)]) == 0
        text = capsys.readouterr().out
        assert "entangled-closed-form" in text
        payload = json.loads(out.read_text())
        assert payload["method"] == "entangled-closed-form"
        values = sorted(e["value"] for e in payload["eigenvalues"])
        assert np.allclose(values, [-np.sqrt(5), -1, 1, np.sqrt(5)])
        state = np.array(payload["states"][0])
        assert state.shape == (4, 4, 2)

    def test_zero_set(self, tmp_path, capsys):
        path = tmp_path / "zero.json"
        path.write_text(
            json.dumps({"upsilon": 0.5, "alpha": [0, 0, 0], "beta": [0, 0, 0],
                        "omega": [[0, 0, 0]] * 3})
        )
        assert main(["solve", "--input", str(path)]) == 0
        assert "0.5" in capsys.readouterr().out

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["solve", "--input", str(path)]) == 2

    def test_missing_file(self, tmp_path):
        assert main(["solve", "--input", str(tmp_path / "nope.json")]) == 2

    def test_non_finite_coefficients(self, tmp_path):
        path = tmp_path / "nan.json"
        path.write_text(json.dumps({**ENTANGLED, "upsilon": "NaN"}))
        # json accepts NaN spelled as a bare token only; as a string it is a
        # format error either way.
        assert main(["solve", "--input", str(path)]) == 2


class TestClassifyCommand:
    def test_reports_case(self, entangled_file, capsys):
        assert main(["classify", "--input", str(entangled_file)]) == 0
        out = capsys.readouterr().out
        assert "entangled-constrained" in out
        assert "residual" in out


class TestQuarticCommand:
    def test_roots(self, capsys):
        assert main(["quartic", "--coeffs", "1", "0", "-5", "0", "4"]) == 0
        out = capsys.readouterr().out.strip().split("\n")
        assert len(out) == 4
        reals = sorted(float(line.split()[0]) for line in out)
        assert np.allclose(reals, [-2, -1, 1, 2], atol=1e-9)


class TestVerifyCommand:
    def test_small_run_passes(self, capsys):
        assert main(["verify", "--samples", "20", "--seed", "42"]) == 0
        out = capsys.readouterr().out
        assert "numpy-PCG64" in out
        assert "all suites passed" in out

    def test_deterministic_output(self, capsys):
        main(["verify", "--samples", "15", "--seed", "7"])
        first = capsys.readouterr().out
        main(["verify", "--samples", "15", "--seed", "7"])
        second = capsys.readouterr().out
        assert first == second

    def test_zero_samples_usage_error(self):
        assert main(["verify", "--samples", "0"]) == 2

    def test_named_suite(self, capsys):
        code = main(
            ["verify", "--samples", "10", "--seed", "3", "--suite", "thermal-concurrence"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "thermal-concurrence" in out
        assert "outside commuting regime" in out

    def test_unknown_suite(self):
        assert main(["verify", "--samples", "5", "--suite", "spam"]) == 2


class TestThermoCommand:
    def test_sweep_endpoints(self, entangled_file, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(
            ["thermo", "--input", str(entangled_file), "--tmin", "0.01",
             "--tmax", "100", "--steps", "50", "--output", str(out)]
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["T", "Z", "purity", "concurrence", "flag"]
        assert len(rows) == 50
        assert float(rows[0][0]) == 0.01
        assert float(rows[-1][0]) == 100.0
        assert float(rows[0][2]) >= 1 - 1e-6
        assert abs(float(rows[-1][2]) - 0.25) <= 1e-3

    def test_positive_branch(self, entangled_file, tmp_path):
        out = tmp_path / "pos.csv"
        code = main(
            ["thermo", "--input", str(entangled_file), "--tmin", "0.5",
             "--tmax", "5", "--steps", "5", "--branch", "positive",
             "--output", str(out)]
        )
        assert code == 0
        _, rows = read_csv(out)
        z = float(rows[0][1])
        t = float(rows[0][0])
        assert np.isclose(z, np.exp(-np.sqrt(5) / t) + np.exp(-1 / t))

    def test_bad_range(self, entangled_file, tmp_path):
        code = main(
            ["thermo", "--input", str(entangled_file), "--tmin", "-1",
             "--tmax", "5", "--output", str(tmp_path / "x.csv")]
        )
        assert code == 2


class TestGrapheneCommands:
    def test_bands_csv(self, tmp_path):
        out = tmp_path / "bands.csv"
        code = main(["graphene-bands", "--bias", "0.5", "--grid", "15", "--output", str(out)])
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["kx", "ky", "E1", "E2"]
        assert len(rows) == 15 * 15
        e1 = np.array([float(r[2]) for r in rows])
        e2 = np.array([float(r[3]) for r in rows])
        assert np.all(e2 >= e1) and np.all(e1 >= 0)

    def test_bands_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            main(["graphene-bands", "--bias", "1", "--grid", "9", "--output", str(path)])
        assert a.read_bytes() == b.read_bytes()

    def test_bands_hex_mask(self, tmp_path):
        full, masked = tmp_path / "f.csv", tmp_path / "m.csv"
        main(["graphene-bands", "--grid", "15", "--output", str(full)])
        main(["graphene-bands", "--grid", "15", "--mask", "hex", "--output", str(masked)])
        assert len(read_csv(masked)[1]) < len(read_csv(full)[1])

    def test_concurrence_csv(self, tmp_path):
        out = tmp_path / "conc.csv"
        code = main(
            ["graphene-concurrence", "--bias", "1", "--grid", "11",
             "--branch-m", "2", "--branch-n", "2", "--output", str(out)]
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["kx", "ky", "C", "flag"]
        for row in rows:
            assert 0.0 <= float(row[2]) <= 1.0
            assert row[3] in ("0", "1")

    def test_thermal_curve_at_dirac_point(self, tmp_path):
        out = tmp_path / "curve.csv"
        code = main(
            ["graphene-thermal", "--tmin", "0.1", "--tmax", "10",
             "--steps", "20", "--output", str(out)]
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["T", "C", "flag"]
        values = [float(r[1]) for r in rows]
        assert values[0] > 0.9  # deep below the death temperature
        assert values[-1] == 0.0

    def test_thermal_curve_k_flags(self, tmp_path):
        code = main(
            ["graphene-thermal", "--kx", "0", "--output", str(tmp_path / "x.csv")]
        )
        assert code == 2

    def test_csv_round_trip_exact(self, tmp_path):
        from su2pair.graphene import GrapheneParams, band_grid, default_grid

        out = tmp_path / "bands.csv"
        main(["graphene-bands", "--bias", "0.3", "--grid", "7", "--output", str(out)])
        _, rows = read_csv(out)
        p = GrapheneParams(bias=0.3)
        data = band_grid(p, default_grid(p, 7))
        for row, e1, e2 in zip(rows, data["e1"], data["e2"]):
            assert float(row[2]) == e1
            assert float(row[3]) == e2


def test_usage_error_without_subcommand():
    assert main([]) == 2


def test_help_exits_zero():
    assert main(["--help"]) == 0
