import json

import pytest

from swipt_relay.cli import (
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_VERIFY,
    main,
)

BASE_CONFIG = {
    "p_s_dbm": 40.0,
    "sigma_r_sq_dbm": -20.0,
    "sigma_p_sq_dbm": -20.0,
    "sigma_d_sq_dbm": -17.0,
    "rate_bps_hz": 3.0,
    "lambda_h": 1.5,
    "lambda_g": 1.5,
    "policies": ["full_csi", "partial_csi", "fixed:0.4", "fixed:0.6", "fixed:0.8"],
    "n": 20000,
    "seed": 99,
}


def write_config(tmp_path, overrides=None, name="config.json"):
    cfg = dict(BASE_CONFIG)
    if overrides:
        cfg.update(overrides)
        for k, v in list(cfg.items()):
            if v is None:
                del cfg[k]
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


class TestPoint:
    def test_writes_one_row_per_policy(self, tmp_path, capsys):
        cfg = write_config(tmp_path)
        out = tmp_path / "point.csv"
        assert main(["point", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
        lines = out.read_text().splitlines()
        comments = [l for l in lines if l.startswith("#")]
        data = [l for l in lines if not l.startswith("#")]
        assert any("seed=99" in c for c in comments)
        assert data[0].startswith("sweep_var,sweep_value,policy,p_out")
        assert len(data) == 1 + 5
        assert data[1].split(",")[2] == "full_csi"

    def test_byte_identical_reruns(self, tmp_path):
        cfg = write_config(tmp_path)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["point", "--config", str(cfg), "--out", str(out1)])
        main(["point", "--config", str(cfg), "--out", str(out2)])
        assert out1.read_bytes() == out2.read_bytes()

    def test_n_zero_is_config_error(self, tmp_path):
        cfg = write_config(tmp_path, {"n": 0})
        out = tmp_path / "x.csv"
        assert main(["point", "--config", str(cfg), "--out", str(out)]) == EXIT_CONFIG
        assert not out.exists()

    def test_unknown_policy_lists_valid_names(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"policies": ["grid_search"]})
        code = main(["point", "--config", str(cfg), "--out", str(tmp_path / "x.csv")])
        assert code == EXIT_CONFIG
        err = capsys.readouterr().err
        assert "full_csi" in err and "partial_csi" in err

    def test_missing_system_field(self, tmp_path):
        cfg = write_config(tmp_path, {"sigma_d_sq_dbm": None})
        assert main(["point", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == EXIT_CONFIG

    def test_missing_config_file(self, tmp_path):
        missing = tmp_path / "nope.json"
        assert main(["point", "--config", str(missing), "--out", str(tmp_path / "x.csv")]) == EXIT_CONFIG

    def test_flag_overrides_config_seed(self, tmp_path):
        cfg = write_config(tmp_path)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["point", "--config", str(cfg), "--out", str(out1), "--seed", "1234"])
        main(["point", "--config", str(cfg), "--out", str(out2)])
        assert out1.read_bytes() != out2.read_bytes()


class TestSweep:
    def sweep_config(self, tmp_path, **overrides):
        return write_config(tmp_path, {
            "sweep": {"variable": "lambda_g", "values": [1.0, 2.0, 3.0]},
            "n": 20000,
            **overrides,
        })

    def test_sweep_csv_rows(self, tmp_path):
        cfg = self.sweep_config(tmp_path)
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
        data = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert len(data) == 1 + 3 * 5

    def test_empty_values_is_config_error(self, tmp_path):
        cfg = self.sweep_config(tmp_path, sweep={"variable": "lambda_g", "values": []})
        assert main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == EXIT_CONFIG

    def test_gains_emitted_when_requested(self, tmp_path):
        gains_path = tmp_path / "gains.csv"
        cfg = self.sweep_config(tmp_path, gains_out=str(gains_path), n=10**5)
        assert main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "s.csv")]) == EXIT_OK
        data = [l for l in gains_path.read_text().splitlines() if not l.startswith("#")]
        assert data[0] == "sweep_value,eta_full,eta_par,eta_rho06,eta_rho08"
        assert len(data) == 1 + 3

    def test_byte_identical_and_worker_independent(self, tmp_path):
        cfg = self.sweep_config(tmp_path)
        outs = [tmp_path / f"{i}.csv" for i in range(3)]
        main(["sweep", "--config", str(cfg), "--out", str(outs[0])])
        main(["sweep", "--config", str(cfg), "--out", str(outs[1])])
        main(["sweep", "--config", str(cfg), "--out", str(outs[2]), "--workers", "3"])
        blobs = [o.read_bytes() for o in outs]
        assert blobs[0] == blobs[1] == blobs[2]


class TestGainsCommand:
    def test_gains_csv(self, tmp_path):
        cfg = write_config(tmp_path, {
            "sweep": {"variable": "lambda_h", "values": [1.0, 2.0]},
            "n": 10**5,
        })
        out = tmp_path / "gains.csv"
        assert main(["gains", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
        data = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert data[0] == "sweep_value,eta_full,eta_par,eta_rho06,eta_rho08"
        assert len(data) == 1 + 2


class TestVerify:
    def test_quick_passes(self, capsys):
        assert main(["verify", "--quick"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "[PASS]" in out and "[FAIL]" not in out

    def test_fault_injection_fails(self, capsys):
        assert main(["verify", "--quick", "--inject-fault"]) == EXIT_VERIFY
        assert "[FAIL]" in capsys.readouterr().out
