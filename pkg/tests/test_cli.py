import json

from qsystems.cli import main

FAST_BELL = {"bell": {"n_samples": 10_000, "n_random_settings": 2}}


def write_config(tmp_path, doc):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_no_arguments_prints_usage_and_fails(capsys):
    rc = main([])
    assert rc == 2
    assert "usage" in capsys.readouterr().err.lower()


def test_unknown_subcommand_rejected(capsys):
    rc = main(["frobnicate"])
    assert rc == 2
    assert capsys.readouterr().err


def test_missing_config_file_reports_error(capsys):
    rc = main(["charge", "--config", "/nonexistent/config.json"])
    assert rc == 2
    assert "config" in capsys.readouterr().err


def test_malformed_config_reports_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("[1, 2, 3]")
    rc = main(["charge", "--config", str(path)])
    assert rc == 2
    assert "config" in capsys.readouterr().err


def test_charge_suite_json_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = main(["charge", "--seed", "5", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["suite"] == "charge"
    assert doc["pass"] is True
    assert doc["seed"] == 5
    assert doc["schema_version"] == 1
    assert {"id", "law", "value", "tolerance", "pass"} <= set(doc["checks"][0])


def test_text_format_renders_status_lines(capsys):
    rc = main(["charge", "--format", "text"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out
    assert "overall: PASS" in out


def test_bell_subcommand_with_angles_and_seed(tmp_path):
    out = tmp_path / "bell.json"
    rc = main(
        [
            "bell",
            "--angles",
            "0,1.5707963267948966,0.7853981633974483,2.356194490192345",
            "--seed",
            "7",
            "--samples",
            "10000",
            "--model",
            "sign-cosine",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    schema_check = next(c for c in doc["checks"] if c["id"] == "bell-report-schema")
    assert abs(abs(schema_check["detail"]["S_quantum"]) - 2.8284271247461903) <= 1e-10


def test_tolerance_scale_can_force_failures(tmp_path, capsys):
    rc = main(["bell", "--tolerance-scale", "1e-30", "--samples", "10000"])
    assert rc == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["pass"] is False


def test_config_section_overrides_defaults(tmp_path, capsys):
    cfg = write_config(tmp_path, {"charge": {"charges": [0, 1, 2, 3]}})
    rc = main(["charge", "--config", cfg])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["config"]["charges"] == [0, 1, 2, 3]


def test_dynamics_accepts_tabulated_potentials(tmp_path, capsys):
    r = [0.125 * k for k in range(65)]
    table = {"r": r, "values": [-2.0 * 2.718281828459045 ** (-(x * x) / 4.5) for x in r]}
    cfg = write_config(
        tmp_path,
        {"dynamics": {"relative": {"n_sites": 32, "length": 16.0, "masses": [1.0, 1.0],
                                   "well_depth": 2.0, "well_width": 1.5,
                                   "v2_scale": 0.8, "v3_scale": 0.5,
                                   "potential": {"v": table, "v2": 0.5}}}},
    )
    rc = main(["dynamics", "--config", cfg])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["pass"] is True
    assert doc["config"]["relative"]["potential"]["v2"] == 0.5


def test_identical_invocations_byte_identical(tmp_path):
    cfg = write_config(tmp_path, FAST_BELL)
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["bell", "--config", cfg, "--seed", "11", "--out", str(out1)]) == 0
    assert main(["bell", "--config", cfg, "--seed", "11", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_different_seed_changes_sampled_values(tmp_path):
    cfg = write_config(tmp_path, FAST_BELL)
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    main(["bell", "--config", cfg, "--seed", "1", "--out", str(out1)])
    main(["bell", "--config", cfg, "--seed", "2", "--out", str(out2)])
    assert out1.read_bytes() != out2.read_bytes()


def test_version_flag(capsys):
    rc = main(["--version"])
    assert rc == 0
    assert "qsystems" in capsys.readouterr().out
