import json

import pandas as pd
import pytest

from ricci_hessian_lib.cli import ExitCode, build_parser, main


def test_profiles_command(capsys):
    code = main(["profiles", "--family", "const2", "--tau", "0.5"])
    assert code == ExitCode.OK
    output = json.loads(capsys.readouterr().out)
    assert output["profile"]["family"] == "const2"
    assert output["values"]["alpha"] == pytest.approx(2.0)
    assert output["values"]["alpha1"] == pytest.approx(0.0)


def test_profiles_command_at_pole(capsys):
    code = main(["profiles", "--family", "reciprocal", "--tau", "0.0"])
    assert code == ExitCode.DOMAIN
    assert "DomainError" in capsys.readouterr().err


def test_profiles_command_unknown_family(capsys):
    code = main(["profiles", "--family", "sine", "--tau", "0.0"])
    assert code == ExitCode.CONFIG


def test_jets_command(capsys):
    code = main(
        [
            "jets",
            "--state",
            "1,0,1,0",
            "--alpha",
            "2",
            "--F",
            "-2",
            "--q-partials",
            "0,0",
        ]
    )
    assert code == ExitCode.OK
    jet = json.loads(capsys.readouterr().out)
    assert set(jet) == {
        "Q_tau",
        "S_tau",
        "B_tau",
        "G_tau",
        "Q_lam",
        "S_lam",
        "B_lam",
        "G_lam",
    }
    assert all(value == pytest.approx(0.0) for value in jet.values())


@pytest.mark.parametrize(
    "extra",
    [
        [],
        ["--direction", "1,0"],
        ["--q-partials", "1"],
        ["--q-partials", "a,b"],
    ],
)
def test_jets_command_bad_arguments(capsys, extra):
    code = main(["jets", "--state", "1,0,1,0", "--alpha", "2", *extra])
    assert code == ExitCode.CONFIG


def test_jets_command_zero_direction(capsys):
    code = main(
        [
            "jets",
            "--state",
            "1,0,1,0",
            "--alpha",
            "2",
            "--direction",
            "0,0",
            "--rate",
            "0,0,0,0",
        ]
    )
    assert code == ExitCode.JET_ALGEBRA


def test_invalid_config_prints_schema(
    capsys, run_config_data, write_config
):
    run_config_data["grid"]["n_lam"] = 8
    code = main(["run", "--config", write_config(run_config_data)])
    assert code == ExitCode.CONFIG
    err = capsys.readouterr().err
    assert "n_lam" in err
    assert "srh run configuration" in err


def test_pole_crossing_config(capsys, run_config_data, write_config):
    run_config_data["profile"] = {"family": "reciprocal"}
    run_config_data["grid"].update(tau0=-0.1, tau1=0.1)
    code = main(["solve", "--config", write_config(run_config_data)])
    assert code == ExitCode.DOMAIN


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_log_level_is_case_insensitive():
    args = build_parser().parse_args(
        ["--log-level", "debug", "profiles", "--family", "t", "--tau", "1"]
    )
    assert args.log_level == "DEBUG"
    assert args.tau == [1.0]


def test_convergence_levels_are_comma_separated(
    monkeypatch, capsys, run_config_data, write_config
):
    requested = []

    def fake_pass(config, levels):
        requested.append(levels)
        table = pd.DataFrame({"n_lam": list(levels)})
        return table, table

    monkeypatch.setattr(
        "ricci_hessian_lib.cli._main.convergence_pass", fake_pass
    )
    path = write_config(run_config_data)
    code = main(["convergence", "--config", path, "--levels", "33,65"])
    assert code == ExitCode.OK
    assert requested == [(33, 65)]
    assert "65" in capsys.readouterr().out


def test_convergence_levels_must_be_integers(
    capsys, run_config_data, write_config
):
    path = write_config(run_config_data)
    code = main(["convergence", "--config", path, "--levels", "33,6.5"])
    assert code == ExitCode.CONFIG
    assert "--levels" in capsys.readouterr().err
