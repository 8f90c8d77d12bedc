import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from cohorder import cli, ordering, statefile
from cohorder.errors import NotPositive, StateFileError
from cohorder.states import DensityMatrix, PureState


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def pair_files(tmp_path):
    r1, r2 = ordering.reference_qubit_pair()
    p1, p2 = tmp_path / "rho1.json", tmp_path / "rho2.json"
    statefile.write_state(p1, r1)
    statefile.write_state(p2, r2)
    return str(p1), str(p2)


def write_json(tmp_path, obj, name="s.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


class TestStateFile:
    def test_round_trip_mixed(self, tmp_path, rng):
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        rho = DensityMatrix(g @ g.conj().T / np.trace(g @ g.conj().T).real)
        statefile.write_state(tmp_path / "m.json", rho)
        back = statefile.read_state(tmp_path / "m.json")
        assert np.array_equal(back.matrix, rho.matrix)

    def test_round_trip_pure(self, tmp_path):
        phi = PureState(np.array([0.6, 0.8j]))
        statefile.write_state(tmp_path / "p.json", phi)
        assert np.array_equal(statefile.read_state(tmp_path / "p.json").amplitudes, phi.amplitudes)

    def test_bare_numbers(self):
        s = statefile.parse_state({"dim": 2, "matrix": [[0.5, [0.5, 0]], [0.5, 0.5]]})
        np.testing.assert_allclose(s.matrix, np.full((2, 2), 0.5))

    @pytest.mark.parametrize("obj", [
        [],
        {"matrix": [[1]]},
        {"dim": True, "matrix": [[1]]},
        {"dim": 0, "matrix": []},
        {"dim": 2},
        {"dim": 1, "matrix": [[1]], "amplitudes": [1]},
        {"dim": 2, "matrix": [[1, 0]]},
        {"dim": 2, "matrix": [[1, 0], [0]]},
        {"dim": 2, "matrix": [[1, "0"], [0, 0]]},
        {"dim": 2, "matrix": [[1, [0, 0, 0]], [0, 0]]},
        {"dim": 2, "amplitudes": [1]},
        {"dim": 1, "amplitudes": [True]},
    ])
    def test_grammar_errors(self, obj):
        with pytest.raises(StateFileError):
            statefile.parse_state(obj)

    def test_validation_errors_are_domain(self):
        with pytest.raises(NotPositive):
            statefile.parse_state({"dim": 2, "matrix": [[1.5, 0], [0, -0.5]]})

    def test_io_errors(self, tmp_path):
        with pytest.raises(StateFileError):
            statefile.read_state(tmp_path / "missing.json")
        with pytest.raises(StateFileError):
            statefile.read_state(write_json(tmp_path, "{not json"))


class TestMeasure:
    def test_max_coherent_qutrit(self, tmp_path):
        path = write_json(tmp_path, {"dim": 3, "amplitudes": [1 / math.sqrt(3)] * 3})
        code, out, _ = run("measure", path)
        assert code == 0
        assert "C_l1 = 2.000000" in out and "C_r  = 1.584963" in out and "C_f  = 1.584963" in out

    def test_bloch(self):
        code, out, _ = run("measure", "--bloch", "0.8,0.6")
        assert code == 0 and "C_l1 = 0.800000" in out and "C_r  = 0.721928" in out

    def test_mixed_qutrit_formation_undefined(self, tmp_path):
        path = write_json(tmp_path, {"dim": 3, "matrix": [[0.4, 0.1, 0], [0.1, 0.3, 0], [0, 0, 0.3]]})
        code, out, _ = run("measure", path)
        assert code == 0 and "undefined" in out

    def test_needs_one_source(self, tmp_path):
        assert run("measure")[0] == cli.EXIT_USAGE


class TestClassify:
    def test_reference_pair(self, pair_files):
        code, out, _ = run("classify", *pair_files)
        assert code == 10
        assert "0.800000 < 0.816497" in out and "0.721928 > 0.557710" in out

    def test_same_file_ties(self, pair_files):
        assert run("classify", pair_files[0], pair_files[0])[0] == 11

    def test_same_order(self):
        assert run("classify", "--bloch", "0.2,0", "--bloch", "0.9,0")[0] == 0

    def test_measures_option(self, pair_files):
        code, out, _ = run("classify", *pair_files, "--measures", "formation,relent")
        assert code == 10 and "0.744008" in out

    def test_wrong_count(self, pair_files):
        assert run("classify", pair_files[0])[0] == cli.EXIT_USAGE

    def test_bad_measure_name(self, pair_files):
        assert run("classify", *pair_files, "--measures", "l1,bogus")[0] == cli.EXIT_USAGE

    def test_missing_file(self, pair_files, tmp_path):
        assert run("classify", pair_files[0], str(tmp_path / "nope.json"))[0] == cli.EXIT_FILE

    def test_malformed_file(self, pair_files, tmp_path):
        assert run("classify", pair_files[0], write_json(tmp_path, {"dim": 2}))[0] == cli.EXIT_FILE

    def test_dimension_mismatch(self, pair_files, tmp_path):
        path = write_json(tmp_path, {"dim": 3, "amplitudes": [1, 0, 0]})
        code, _, err = run("classify", pair_files[0], path)
        assert code == cli.EXIT_DOMAIN and "DimensionMismatch" in err

    def test_not_positive(self, pair_files, tmp_path):
        path = write_json(tmp_path, {"dim": 2, "matrix": [[1.5, 0], [0, -0.5]]})
        assert run("classify", pair_files[0], path)[0] == cli.EXIT_DOMAIN


class TestFeasibleWitness:
    def test_infeasible(self):
        code, out, _ = run("feasible", "--t1", "0.6", "--t2", "0.8")
        assert code == 0 and "feasible: false" in out

    def test_feasible_expression(self):
        code, out, _ = run("feasible", "--t1", "4/5", "--t2", "2/sqrt(6)")
        assert code == 0 and "feasible: true" in out and "boundary: false" in out

    def test_domain(self):
        assert run("feasible", "--t1", "0.9", "--t2", "0.1")[0] == cli.EXIT_DOMAIN

    @pytest.mark.parametrize("text", ["abc", "__import__('os')", "1/0", "2**3"])
    def test_bad_number(self, text):
        assert run("feasible", "--t1", text, "--t2", "0.8")[0] == cli.EXIT_USAGE

    def test_witness(self):
        code, out, _ = run("witness", "--t1", "0.8", "--t2", "2/sqrt(6)")
        assert code == 0 and "z1 = 0.600000" in out and "z2 = 0.000000" in out

    def test_witness_none(self):
        code, out, _ = run("witness", "--t1", "0.6", "--t2", "0.8")
        assert code == 0 and out.strip() == "NONE"


class TestScan:
    def test_writes_csv(self, tmp_path):
        path = tmp_path / "grid.csv"
        code, out, _ = run("scan", "--t1", "0.8", "--t2", "2/sqrt(6)", "--n1", "21", "--n2", "11",
                           "--out", str(path))
        assert code == 0 and "21x11" in out
        grid = ordering.ScanGrid.from_csv(path.read_text())
        assert grid.delta_cr.shape == (21, 11)
        assert grid.delta_cr[-1, 0] == pytest.approx(0.164218, abs=1e-6)

    def test_unwritable(self, tmp_path):
        code = run("scan", "--t1", "0.8", "--t2", "0.9", "--out", str(tmp_path / "no" / "x.csv"))[0]
        assert code == cli.EXIT_FILE


class TestConstructions:
    def test_lift(self):
        code, out, _ = run("lift", "--d", "4", "--alpha", "sqrt(1/2)")
        assert code == 0 and "verdict: OrderingDifferent" in out

    def test_lift_betas(self):
        code, out, _ = run("lift", "--d", "5", "--alpha", "0.6", "--betas", "0.6,0.52915026221")
        assert code == 0

    def test_lift_bad_betas(self):
        assert run("lift", "--d", "5", "--alpha", "0.6", "--betas", "0.1")[0] == cli.EXIT_DOMAIN

    def test_embed(self):
        code, out, _ = run("embed", "--d", "4", "--delta1", "0.3,0.7", "--delta2", "0.5,0.5")
        assert code == 0 and "verdict: OrderingDifferent" in out

    def test_embed_bad(self):
        assert run("embed", "--d", "4", "--delta1", "0.3,0.3")[0] == cli.EXIT_DOMAIN


class TestCampaignCommands:
    def test_postulates(self):
        code, out, _ = run("postulates", "--dim", "2,3", "--trials", "10", "--seed", "4")
        lines = out.strip().splitlines()
        assert code == 0 and lines[0].startswith("trial_id")
        assert lines[-1] == "100/100 checks passed"

    def test_postulates_quiet(self):
        code, out, _ = run("postulates", "--trials", "3", "--quiet")
        assert code == 0 and out.strip() == "30/30 checks passed"

    @pytest.mark.parametrize("argv", [["--trials", "0"], ["--dim", "1"], ["--dim", "x"]])
    def test_postulates_usage(self, argv):
        assert run("postulates", *argv)[0] == cli.EXIT_USAGE

    def test_reproduce(self):
        code, out, _ = run("reproduce")
        assert code == 0 and "FAIL" not in out and "checks passed" in out


class TestEntryPoint:
    def test_no_command(self):
        assert run()[0] == cli.EXIT_USAGE

    def test_unknown_command(self):
        assert run("frobnicate")[0] == cli.EXIT_USAGE

    def test_module_invocation(self, pair_files):
        proc = subprocess.run([sys.executable, "-m", "cohorder", "classify", *pair_files],
                              capture_output=True, text=True)
        assert proc.returncode == 10 and "0.557710" in proc.stdout
