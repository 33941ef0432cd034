"""Model persistence: network, scaler, and hyperparameters in one JSON file.

The format is structured text with a version marker. Floats are serialized
with full repr precision, so a load followed by a save reproduces the file
byte for byte and predictions from a loaded model match the original
exactly.
"""

from __future__ import annotations

import dataclasses
import json
import math
from pathlib import Path

from .errors import PersistenceError, ValidationError
from .linalg import Matrix, Vector
from .network import Network, NetworkConfig
from .preprocess import FeatureScaler, ScalerParams
from .training import HyperParams
from .validation import check_is_fitted

FORMAT_VERSION = 1


def save_model(net: Network, scaler: FeatureScaler, hp: HyperParams, path) -> None:
    """Write a trained pipeline to a JSON model file."""
    check_is_fitted(scaler, "params_")
    for l, (w, b) in enumerate(zip(net.weights, net.biases)):
        for v in w.data + b.data:
            if not math.isfinite(v):
                raise ValidationError(f"layer {l} contains a non-finite parameter")
    if net.config is None:
        raise ValidationError("network carries no config; cannot persist topology choices")
    p = scaler.params_
    payload = {
        "format_version": FORMAT_VERSION,
        "network": {
            "hidden_sizes": list(net.config.hidden_sizes),
            "hidden_activation": net.config.hidden_activation,
            "output_activation": net.config.output_activation,
            "init_method": net.config.init_method,
            "bias_init": net.config.bias_init,
            "seed": net.config.seed,
            "weights": [w.to_rows() for w in net.weights],
            "biases": [list(b.data) for b in net.biases],
        },
        "scaler": {
            "method": p.method,
            "n_features": p.n_features,
            "means": list(p.means) if p.means is not None else None,
            "stds": list(p.stds) if p.stds is not None else None,
            "mins": list(p.mins) if p.mins is not None else None,
            "maxs": list(p.maxs) if p.maxs is not None else None,
        },
        "hyperparams": dataclasses.asdict(hp),
        "train_seed": hp.seed,
    }
    try:
        Path(path).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    except OSError as exc:
        raise PersistenceError(f"could not write model to {path}: {exc}") from None


def _expect(mapping, key, kinds, path: str):
    if not isinstance(mapping, dict) or key not in mapping:
        raise PersistenceError(f"model file field {path}: missing")
    value = mapping[key]
    if kinds is not None and not isinstance(value, kinds):
        raise PersistenceError(
            f"model file field {path}: expected {kinds}, got {type(value).__name__}"
        )
    return value


def _float_list(values, path: str) -> list[float]:
    if not isinstance(values, list):
        raise PersistenceError(f"model file field {path}: expected a list")
    out = []
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise PersistenceError(f"model file field {path}[{i}]: not a number")
        out.append(float(v))
    return out


def load_model(path) -> tuple[Network, FeatureScaler, HyperParams]:
    """Read a model file back into a usable pipeline.

    Any structural problem raises a persistence error naming the offending
    field path; a format_version other than the supported one is rejected
    the same way.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PersistenceError(f"could not read model from {path}: {exc}") from None
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PersistenceError(f"{path} is not valid model JSON: {exc}") from None
    version = _expect(payload, "format_version", int, "format_version")
    if version != FORMAT_VERSION:
        raise PersistenceError(
            f"model file field format_version: unsupported version {version}, "
            f"this build reads version {FORMAT_VERSION}"
        )
    net_obj = _expect(payload, "network", dict, "network")
    hidden_sizes = _float_list(
        _expect(net_obj, "hidden_sizes", list, "network.hidden_sizes"),
        "network.hidden_sizes",
    )
    try:
        config = NetworkConfig(
            hidden_sizes=tuple(int(v) for v in hidden_sizes),
            hidden_activation=_expect(
                net_obj, "hidden_activation", str, "network.hidden_activation"
            ),
            output_activation=_expect(
                net_obj, "output_activation", str, "network.output_activation"
            ),
            init_method=_expect(net_obj, "init_method", str, "network.init_method"),
            bias_init=_expect(net_obj, "bias_init", str, "network.bias_init"),
            seed=_expect(net_obj, "seed", int, "network.seed"),
        )
    except ValidationError as exc:
        raise PersistenceError(f"model file field network: {exc}") from None
    raw_weights = _expect(net_obj, "weights", list, "network.weights")
    raw_biases = _expect(net_obj, "biases", list, "network.biases")
    sizes = config.layer_sizes
    if len(raw_weights) != len(sizes) - 1 or len(raw_biases) != len(sizes) - 1:
        raise PersistenceError(
            "model file field network.weights: layer count does not match topology"
        )
    weights: list[Matrix] = []
    biases: list[Vector] = []
    for l, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
        rows = raw_weights[l]
        if not isinstance(rows, list) or len(rows) != fan_out:
            raise PersistenceError(
                f"model file field network.weights[{l}]: expected {fan_out} rows"
            )
        flat: list[float] = []
        for r, row in enumerate(rows):
            vals = _float_list(row, f"network.weights[{l}][{r}]")
            if len(vals) != fan_in:
                raise PersistenceError(
                    f"model file field network.weights[{l}][{r}]: "
                    f"expected {fan_in} values, got {len(vals)}"
                )
            flat.extend(vals)
        weights.append(Matrix(fan_out, fan_in, flat))
        bias = _float_list(raw_biases[l], f"network.biases[{l}]")
        if len(bias) != fan_out:
            raise PersistenceError(
                f"model file field network.biases[{l}]: "
                f"expected {fan_out} values, got {len(bias)}"
            )
        biases.append(Vector(bias))
    net = Network(
        weights, biases, config.hidden_activation, config.output_activation, config
    )
    scaler_obj = _expect(payload, "scaler", dict, "scaler")
    method = _expect(scaler_obj, "method", str, "scaler.method")
    n_features = _expect(scaler_obj, "n_features", int, "scaler.n_features")

    def optional_stats(key: str) -> tuple[float, ...] | None:
        value = _expect(scaler_obj, key, (list, type(None)), f"scaler.{key}")
        if value is None:
            return None
        vals = _float_list(value, f"scaler.{key}")
        if len(vals) != n_features:
            raise PersistenceError(
                f"model file field scaler.{key}: expected {n_features} values"
            )
        return tuple(vals)

    try:
        params = ScalerParams(
            method,
            n_features,
            means=optional_stats("means"),
            stds=optional_stats("stds"),
            mins=optional_stats("mins"),
            maxs=optional_stats("maxs"),
        )
    except ValidationError as exc:
        raise PersistenceError(f"model file field scaler: {exc}") from None
    if method == "standardization" and (params.means is None or params.stds is None):
        raise PersistenceError("model file field scaler.means: missing statistics")
    if method == "normalization" and (params.mins is None or params.maxs is None):
        raise PersistenceError("model file field scaler.mins: missing statistics")
    scaler = FeatureScaler(method)
    scaler.params_ = params
    scaler.n_features_in_ = n_features
    hp_obj = _expect(payload, "hyperparams", dict, "hyperparams")
    hp_fields = {f.name for f in dataclasses.fields(HyperParams)}
    unknown = set(hp_obj) - hp_fields
    if unknown:
        raise PersistenceError(
            f"model file field hyperparams: unknown entries {sorted(unknown)}"
        )
    missing = hp_fields - set(hp_obj)
    if missing:
        raise PersistenceError(
            f"model file field hyperparams.{sorted(missing)[0]}: missing"
        )
    try:
        hp = HyperParams(**hp_obj)
    except (TypeError, ValidationError) as exc:
        raise PersistenceError(f"model file field hyperparams: {exc}") from None
    train_seed = _expect(payload, "train_seed", int, "train_seed")
    if train_seed != hp.seed:
        raise PersistenceError(
            "model file field train_seed: does not match hyperparams.seed"
        )
    return net, scaler, hp
