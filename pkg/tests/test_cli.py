import json

import pytest

from hamfam.cli import main, parse_complex, parse_n_range, parse_params, UsageError


def run(argv):
    return main(list(argv))


class TestParsers:
    @pytest.mark.parametrize("text,value", [
        ("1", 1 + 0j),
        ("-2.5", -2.5 + 0j),
        ("1+2i", 1 + 2j),
        ("1-0.5i", 1 - 0.5j),
        ("3i", 3j),
        ("i", 1j),
        ("-i", -1j),
        ("2+i", 2 + 1j),
    ])
    def test_complex_literals(self, text, value):
        assert parse_complex(text) == value

    def test_bad_complex(self):
        with pytest.raises(UsageError):
            parse_complex("one")

    def test_params(self):
        got = parse_params("a=1,e1=2+i,e2=-0.5")
        assert got == {"a": 1 + 0j, "e1": 2 + 1j, "e2": -0.5 + 0j}

    def test_params_empty(self):
        assert parse_params("") == {}

    def test_params_bad(self):
        with pytest.raises(UsageError):
            parse_params("a:1")

    def test_n_range(self):
        assert parse_n_range("2..5") == [2, 3, 4, 5]
        assert parse_n_range("7") == [7]


class TestVerify:
    def test_autonomous5_passes(self, capsys):
        assert run(["verify", "--family", "autonomous5"]) == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out and "[FAIL]" not in out

    def test_general_range(self, capsys):
        assert run(["verify", "--family", "general", "--n", "2..4"]) == 0
        out = capsys.readouterr().out
        assert out.count("second-order form equivalence") == 3

    def test_nonautonomous_passes(self, capsys):
        assert run(["verify", "--family", "nonautonomous3"]) == 0
        out = capsys.readouterr().out
        assert "s-nonauto[z]" in out and "s-nonauto[z^7]" in out

    @pytest.mark.parametrize("mutate", ["ode", "map", "hamiltonian"])
    def test_mutation_fails(self, mutate, capsys):
        assert run(["verify", "--family", "autonomous5",
                    "--mutate", mutate]) == 1
        out = capsys.readouterr().out
        assert "[FAIL]" in out
        assert "residual =" in out

    def test_n_out_of_range(self, capsys):
        assert run(["verify", "--family", "general", "--n", "99"]) == 2

    def test_report_written(self, tmp_path):
        report = tmp_path / "verify.json"
        assert run(["verify", "--family", "autonomous5",
                    "--out", str(report)]) == 0
        doc = json.loads(report.read_text())
        assert doc["schema"] == 1
        assert doc["all_pass"] is True
        assert "generated_at" in doc["metadata"]

    def test_report_payload_is_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(["verify", "--family", "nonautonomous3", "--out", str(a)])
        run(["verify", "--family", "nonautonomous3", "--out", str(b)])
        da, db = json.loads(a.read_text()), json.loads(b.read_text())
        da.pop("metadata"), db.pop("metadata")
        assert da == db


class TestIntegrate:
    def test_writes_csv_and_summary(self, tmp_path, capsys):
        csv = tmp_path / "traj.csv"
        summary = tmp_path / "summary.json"
        rc = run(["integrate", "--family", "autonomous5",
                  "--params", "a=1,e1=1,e2=1", "--q0", "1", "--p0", "0.3",
                  "--t1", "0.05", "--out", str(csv),
                  "--summary-out", str(summary)])
        assert rc == 0
        header = csv.read_text().splitlines()[0]
        assert header == "t,re_q,im_q,re_p,im_p,re_H,im_H,drift"
        doc = json.loads(summary.read_text())
        assert doc["termination"] == "completed"
        assert doc["drift"] < 1e-8

    def test_sweep_reports_order(self, tmp_path):
        summary = tmp_path / "sweep.json"
        rc = run(["integrate", "--family", "autonomous5",
                  "--params", "a=1,e1=1,e2=1", "--p0", "0.3", "--t1", "0.03",
                  "--sweep", "1e-2,5e-3,2.5e-3",
                  "--summary-out", str(summary)])
        assert rc == 0
        doc = json.loads(summary.read_text())
        assert 3.7 <= doc["measured_order"] <= 4.3

    def test_missing_params(self):
        assert run(["integrate", "--family", "autonomous5",
                    "--params", "a=1", "--t1", "0.01"]) == 2

    def test_immediate_singularity(self):
        assert run(["integrate", "--family", "autonomous5",
                    "--params", "a=1,e1=1,e2=1", "--q0", "1e-12",
                    "--t1", "0.01"]) == 2


class TestSymmetry:
    def test_autonomous_map_point(self, capsys):
        rc = run(["symmetry", "--family", "autonomous5", "--map", "s-auto",
                  "--params", "a=1,e1=1,e2=1", "--q0", "2", "--p0", "0"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "(q, p, t) ->" in out
        assert "a=-1" in out

    def test_nonautonomous_trajectory_check(self, tmp_path, capsys):
        report = tmp_path / "sym.json"
        rc = run(["symmetry", "--family", "nonautonomous3",
                  "--map", "s-nonauto", "--branch", "1",
                  "--params", "a1=1,a2=1,a3=1", "--q0", "1", "--p0", "-1.5",
                  "--t1", "0.05", "--check-trajectory", "--out", str(report)])
        assert rc == 0
        doc = json.loads(report.read_text())
        assert doc["trajectory_residual"] <= 1e-5

    def test_singular_point_rejected(self):
        assert run(["symmetry", "--family", "nonautonomous3",
                    "--map", "s-nonauto", "--q0", "0"]) == 2

    def test_unknown_map(self):
        assert run(["symmetry", "--family", "autonomous5",
                    "--map", "nope"]) == 2


class TestConfig:
    def test_config_supplies_defaults(self, tmp_path):
        cfg = tmp_path / "run.ini"
        cfg.write_text("[integrate]\n"
                       "family = autonomous5\n"
                       "params = a=1,e1=1,e2=1\n"
                       "p0 = 0.3\n"
                       "t1 = 0.05\n")
        summary = tmp_path / "s.json"
        rc = run(["integrate", "--config", str(cfg),
                  "--summary-out", str(summary)])
        assert rc == 0
        assert json.loads(summary.read_text())["termination"] == "completed"

    def test_cli_flag_beats_config(self, tmp_path):
        cfg = tmp_path / "run.ini"
        cfg.write_text("[verify]\nfamily = autonomous5\nmutate = ode\n")
        # explicit flag overrides the config's family, mutate still applies
        assert run(["verify", "--config", str(cfg)]) == 1
        assert run(["verify", "--family", "nonautonomous3", "--config",
                    str(cfg)]) == 1

    def test_missing_config(self):
        assert run(["verify", "--family", "autonomous5",
                    "--config", "/nonexistent.ini"]) == 2
