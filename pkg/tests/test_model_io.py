"""Saving and loading trained models: round-trips and tamper rejection."""

import json
import random

import pytest

from boltnet.errors import PersistenceError
from boltnet.linalg import Vector
from boltnet.model_io import FORMAT_VERSION, load_model, save_model
from boltnet.network import NetworkConfig, init_network, predict_one
from boltnet.preprocess import FeatureScaler
from boltnet.training import HyperParams

ROWS = [[float(i + j) for j in range(6)] for i in range(5)]


def _saved(tmp_path, **hp_overrides):
    hp = HyperParams(seed=11, **hp_overrides)
    cfg = NetworkConfig(
        hidden_activation=hp.hidden_activation,
        output_activation=hp.resolved_output_activation(),
        init_method=hp.init_method,
        bias_init=hp.bias_init,
        seed=3,
    )
    net = init_network(cfg)
    scaler = FeatureScaler(hp.scaling).fit(ROWS)
    path = tmp_path / "model.json"
    save_model(net, scaler, hp, path)
    return net, scaler, hp, path


def test_round_trip_preserves_forward_exactly(tmp_path):
    net, _, _, path = _saved(tmp_path)
    loaded_net, _, _ = load_model(path)
    rng = random.Random(0)
    for _ in range(25):
        x = [rng.uniform(-2, 2) for _ in range(6)]
        assert predict_one(loaded_net, x).data == predict_one(net, x).data


def test_round_trip_preserves_scaler_and_hyperparams(tmp_path):
    _, scaler, hp, path = _saved(tmp_path)
    _, loaded_scaler, loaded_hp = load_model(path)
    assert loaded_hp == hp
    assert loaded_scaler.params_ == scaler.params_
    assert loaded_scaler.transform(ROWS) == scaler.transform(ROWS)


def test_file_is_stable_json_with_version(tmp_path):
    _, _, _, path = _saved(tmp_path)
    payload = json.loads(path.read_text())
    assert payload["format_version"] == FORMAT_VERSION
    assert set(payload) >= {"format_version", "network", "scaler", "hyperparams"}
    # a second save writes identical bytes
    again = tmp_path / "again.json"
    net, scaler, hp, _ = _saved(tmp_path)
    save_model(net, scaler, hp, again)
    assert again.read_bytes() == path.read_bytes()


def test_version_mismatch_is_rejected(tmp_path):
    _, _, _, path = _saved(tmp_path)
    payload = json.loads(path.read_text())
    payload["format_version"] = FORMAT_VERSION + 1
    path.write_text(json.dumps(payload))
    with pytest.raises(PersistenceError) as err:
        load_model(path)
    assert "format_version" in str(err.value)


def test_weight_shape_tampering_is_rejected(tmp_path):
    _, _, _, path = _saved(tmp_path)
    payload = json.loads(path.read_text())
    payload["network"]["weights"][0][0].append(0.5)
    path.write_text(json.dumps(payload))
    with pytest.raises(PersistenceError):
        load_model(path)


def test_missing_field_is_rejected_with_path(tmp_path):
    _, _, _, path = _saved(tmp_path)
    payload = json.loads(path.read_text())
    del payload["scaler"]["method"]
    path.write_text(json.dumps(payload))
    with pytest.raises(PersistenceError) as err:
        load_model(path)
    assert "method" in str(err.value)


def test_non_finite_weight_is_rejected(tmp_path):
    _, _, _, path = _saved(tmp_path)
    text = path.read_text()
    payload = json.loads(text)
    payload["network"]["weights"][0][0][0] = "not-a-number"
    path.write_text(json.dumps(payload))
    with pytest.raises(PersistenceError):
        load_model(path)


def test_unknown_hyperparameter_key_is_rejected(tmp_path):
    _, _, _, path = _saved(tmp_path)
    payload = json.loads(path.read_text())
    payload["hyperparams"]["momentum"] = 0.9
    path.write_text(json.dumps(payload))
    with pytest.raises(PersistenceError) as err:
        load_model(path)
    assert "momentum" in str(err.value)


def test_unparseable_json_is_rejected(tmp_path):
    path = tmp_path / "model.json"
    path.write_text("{not json")
    with pytest.raises(PersistenceError):
        load_model(path)


def test_missing_file_is_rejected(tmp_path):
    with pytest.raises((PersistenceError, OSError)):
        load_model(tmp_path / "absent.json")


def test_save_rejects_non_finite_network(tmp_path):
    from boltnet.errors import ValidationError

    net, scaler, hp, _ = _saved(tmp_path)
    net.weights[0].data[0] = float("inf")
    with pytest.raises(ValidationError):
        save_model(net, scaler, hp, tmp_path / "bad.json")


def test_standardization_scaler_round_trips_too(tmp_path):
    _, scaler, hp, path = _saved(tmp_path, scaling="standardization")
    _, loaded_scaler, loaded_hp = load_model(path)
    assert loaded_hp.scaling == "standardization"
    assert loaded_scaler.params_.stds == scaler.params_.stds
