"""CLI: config handling, exit codes, result records."""

import json
import os

import pytest

from hidacur.cli import main

CONFIG_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "configs")


def write_config(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def phi_ref(components):
    return {"components": components}


class TestExitCodes:
    def test_missing_config_is_config_error(self, tmp_path):
        assert main(["stransform", "--config", str(tmp_path / "none.json")]) == 2

    def test_malformed_json_is_config_error(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["stransform", "--config", str(path)]) == 2

    def test_non_object_config_rejected(self, tmp_path):
        path = tmp_path / "arr.json"
        path.write_text("[1, 2]")
        assert main(["stransform", "--config", str(path)]) == 2

    def test_kind_mismatch_rejected(self, tmp_path):
        cfg = write_config(tmp_path, "c.json", {"kind": "diverge"})
        assert main(["mc", "--config", cfg]) == 2

    def test_missing_field_is_config_error(self, tmp_path):
        cfg = write_config(tmp_path, "c.json", {"x": [0.5]})  # no T, no phi
        assert main(["stransform", "--config", cfg,
                     "--out", str(tmp_path)]) == 2

    def test_nonexistence_is_exit_4(self, tmp_path):
        cfg = write_config(tmp_path, "c.json", {
            "x": [0.0, 0.0], "T": 1.0, "phi": phi_ref([[1.0], [0.0]])})
        assert main(["stransform", "--config", cfg,
                     "--out", str(tmp_path)]) == 4

    def test_bad_seed_rejected(self, tmp_path):
        cfg = write_config(tmp_path, "c.json", {"T": 1.0})
        assert main(["diverge", "--config", cfg, "--seed", str(2 ** 64)]) == 2

    def test_success_is_exit_0(self, tmp_path):
        cfg = write_config(tmp_path, "c.json", {"T": 1.0})
        assert main(["diverge", "--config", cfg, "--out", str(tmp_path)]) == 0


class TestRecords:
    def test_diverge_record(self, tmp_path):
        cfg = write_config(tmp_path, "c.json", {"T": 1.0, "d_values": [2]})
        assert main(["diverge", "--config", cfg, "--out", str(tmp_path)]) == 0
        rec = json.loads((tmp_path / "diverge.json").read_text())
        row = rec["rows"][0]
        assert row["verdict"] == "divergent"
        assert row["model"] == "log"
        assert abs(row["rate"] - 1.0) <= 0.01
        assert rec["version"]
        assert rec["wall_time_s"] >= 0.0
        assert rec["inputs"]["T"] == 1.0
        assert (tmp_path / "diverge.csv").exists()

    def test_stransform_zero_phi_zero_vector(self, tmp_path):
        cfg = write_config(tmp_path, "c.json", {
            "x": [0.5, 0.3], "T": 1.0, "phi": phi_ref([[0.0], [0.0]])})
        assert main(["stransform", "--config", cfg,
                     "--out", str(tmp_path)]) == 0
        rec = json.loads((tmp_path / "stransform.json").read_text())
        assert rec["value"] == [0.0, 0.0]

    def test_mc_record_matches_closed_form(self, tmp_path):
        cfg = write_config(tmp_path, "c.json", {
            "n_paths": 4000, "n_steps": 256, "stderr_fraction": None,
            "cases": [{"d": 1, "x": [0.5], "eps2": 0.05, "seed": 7}]})
        assert main(["mc", "--config", cfg, "--out", str(tmp_path)]) == 0
        rec = json.loads((tmp_path / "mc.json").read_text())
        assert all(z <= 4.0 for z in rec["rows"][0]["z"])

    def test_phi_from_file_reference(self, tmp_path):
        phi_path = tmp_path / "phi.json"
        phi_path.write_text(json.dumps({"d": 1, "components": [[1.0]]}))
        cfg = write_config(tmp_path, "c.json", {
            "x": [0.5], "T": 1.0, "phi": str(phi_path)})
        assert main(["stransform", "--config", cfg,
                     "--out", str(tmp_path)]) == 0
        rec = json.loads((tmp_path / "stransform.json").read_text())
        assert rec["value"][0] > 0.0

    def test_idempotent_modulo_wall_time(self, tmp_path):
        cfg = write_config(tmp_path, "c.json", {
            "T": 1.0, "seed": 3, "n_samples": 4})
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        assert main(["ubound", "--config", cfg, "--out", str(out1)]) == 0
        assert main(["ubound", "--config", cfg, "--out", str(out2)]) == 0
        r1 = json.loads((out1 / "ubound.json").read_text())
        r2 = json.loads((out2 / "ubound.json").read_text())
        r1.pop("wall_time_s"), r2.pop("wall_time_s")
        assert r1 == r2

    def test_seed_override_changes_sweep(self, tmp_path):
        cfg = write_config(tmp_path, "c.json", {
            "sweep": True, "n_nonzero": 2, "n_origin_d1": 1, "seed": 1})
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["stransform", "--config", cfg, "--out", str(out1)]) == 0
        assert main(["stransform", "--config", cfg, "--out", str(out2),
                     "--seed", "42"]) == 0
        r1 = json.loads((out1 / "stransform.json").read_text())
        r2 = json.loads((out2 / "stransform.json").read_text())
        assert r1["rows"][0]["x"] != r2["rows"][0]["x"]


class TestShippedConfigs:
    """The fast shipped configs run green end to end (the heavy mc config
    is exercised by the acceptance suite)."""

    @pytest.mark.parametrize("kind,name", [
        ("gamma-check", "01_gamma_check.json"),
        ("diverge", "06_diverge.json"),
    ])
    def test_config_runs_clean(self, tmp_path, kind, name):
        cfg = os.path.join(CONFIG_DIR, name)
        assert main([kind, "--config", cfg, "--out", str(tmp_path)]) == 0
        rec = json.loads((tmp_path / f"{kind}.json").read_text())
        assert rec["passed"] is True

    def test_all_shipped_configs_parse(self):
        names = sorted(os.listdir(CONFIG_DIR))
        assert len(names) == 7
        for name in names:
            with open(os.path.join(CONFIG_DIR, name)) as fh:
                obj = json.load(fh)
            assert "kind" in obj
