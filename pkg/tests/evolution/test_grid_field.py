import json
import os

import numpy as np
import pytest

from ricci_hessian_lib.exceptions import ConfigError, ValidationError
from ricci_hessian_lib.evolution import (
    GridField,
    evolve,
    field_frame,
    generate_initial_data,
)


@pytest.fixture
def evolved_field(soliton_profile):
    initial = generate_initial_data(
        soliton_profile, 0.0, np.linspace(0.0, 1.0, 17)
    )
    return evolve(initial, 0.04, 4)


@pytest.fixture
def backward_field(soliton_profile):
    initial = generate_initial_data(
        soliton_profile, 0.0, np.linspace(0.0, 1.0, 17)
    )
    return evolve(initial, -0.04, 4)


def _assert_same_field(loaded: GridField, original: GridField):
    np.testing.assert_array_equal(loaded.tau_grid, original.tau_grid)
    np.testing.assert_array_equal(loaded.lambda_grid, original.lambda_grid)
    for a, b in zip(loaded.fields(), original.fields()):
        np.testing.assert_array_equal(a, b)
    assert loaded.profile == original.profile
    np.testing.assert_array_equal(
        loaded.constraint_history, original.constraint_history
    )
    assert loaded.diagnostics == original.diagnostics
    assert loaded.edge_bands == original.edge_bands
    assert loaded.truncated == original.truncated


def test_properties(evolved_field):
    assert evolved_field.n_tau == 5
    assert evolved_field.n_lam == 17
    assert evolved_field.tau_spacing == pytest.approx(0.01)
    assert evolved_field.lambda_spacing == pytest.approx(1.0 / 16)
    assert evolved_field.pi.shape == (5, 17)
    assert evolved_field.slice(2).tau == pytest.approx(0.02)
    assert len(evolved_field.slices) == 5
    assert evolved_field.state.is_admissible()


def test_save_and_load(tmp_path, evolved_field):
    written = evolved_field.save(tmp_path)
    assert set(written) == {
        "Q.csv",
        "S.csv",
        "B.csv",
        "G.csv",
        "Pi.csv",
        "manifest.json",
    }
    _assert_same_field(GridField.load(tmp_path), evolved_field)


def test_save_and_load_decreasing_tau(tmp_path, backward_field):
    backward_field.save(tmp_path)
    loaded = GridField.load(tmp_path)
    assert loaded.tau_spacing < 0
    _assert_same_field(loaded, backward_field)


def test_manifest(tmp_path, evolved_field):
    evolved_field.save(tmp_path)
    with open(os.path.join(tmp_path, "manifest.json"), encoding="utf-8") as f:
        manifest = json.load(f)
    assert manifest["profile"]["family"] == "const2"
    assert manifest["fields"]["Q"] == "Q.csv"
    assert len(manifest["constraint_history"]) == 5
    assert manifest["truncated"] is False


def test_csv_layout(tmp_path, evolved_field):
    evolved_field.save(tmp_path)
    with open(os.path.join(tmp_path, "Q.csv"), encoding="utf-8") as f:
        header = f.readline().strip()
    assert header == "tau,lambda,value"
    frames = evolved_field.to_frames()
    assert set(frames) == {"Q", "S", "B", "G", "Pi"}
    assert len(frames["Q"]) == 5 * 17


def test_load_missing_directory(tmp_path):
    with pytest.raises(ValidationError):
        GridField.load(tmp_path / "missing")


def test_load_missing_field(tmp_path, evolved_field):
    evolved_field.save(tmp_path)
    os.remove(os.path.join(tmp_path, "S.csv"))
    with pytest.raises(ValidationError):
        GridField.load(tmp_path)


def test_shape_mismatch(soliton_profile):
    grid = np.linspace(0.0, 1.0, 9)
    q = np.ones((2, 9))
    with pytest.raises(ValidationError):
        GridField(
            np.array([0.0, 0.1]),
            grid,
            q,
            q,
            q,
            np.ones((2, 8)),
            profile=soliton_profile,
        )


def test_non_uniform_lambda_grid(soliton_profile):
    grid = np.array([0.0, 0.1, 0.2, 0.4, 0.5])
    q = np.ones((1, 5))
    with pytest.raises(ConfigError):
        GridField(np.array([0.0]), grid, q, q, q, q, profile=soliton_profile)


def test_field_frame_order():
    frame = field_frame(
        np.array([0.0, 1.0]), np.array([0.0, 0.5, 1.0]), np.arange(6.0)
    )
    assert list(frame.columns) == ["tau", "lambda", "value"]
    assert frame["tau"].tolist() == [0.0, 0.0, 0.0, 1.0, 1.0, 1.0]
    assert frame["value"].tolist() == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]
