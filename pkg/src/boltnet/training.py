"""Mini-batch gradient descent on Huber loss with per-epoch reshuffling."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from .dataset import FORCE_UNITS, SplitDataset
from .errors import DivergenceError, PersistenceError, ValidationError
from .evaluation import DEFAULT_BAND, within_band
from .linalg import Matrix, Vector, axpy
from .network import (
    HIDDEN_ACTIVATIONS,
    INIT_METHODS,
    BIAS_INITS,
    N_INPUT_FEATURES,
    Network,
    backward,
    forward,
    predict_one,
)
from .preprocess import SCALING_METHODS
from .validation import check_is_fitted

LOSSES = ("huber",)
OPTIMIZERS = ("sgd",)

# a value of "auto" resolves against the scaling method: bounded outputs
# suit normalized pipelines, unbounded outputs suit standardized ones
OUTPUT_ACTIVATION_CHOICES = ("auto", "sigmoid", "identity")


@dataclass
class HyperParams:
    """Everything that controls one training run besides the data itself."""

    learning_rate: float = 0.01
    batch_size: int = 4
    epochs: int = 1000
    loss: str = "huber"
    huber_delta: float = 1.0
    optimizer: str = "sgd"
    init_method: str = "xavier"
    bias_init: str = "zero"
    hidden_activation: str = "sigmoid"
    output_activation: str = "auto"
    scaling: str = "normalization"
    preload_unit: str = "kN"
    load_unit: str = "MN"
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.learning_rate > 0:
            raise ValidationError(f"learning_rate must be positive, got {self.learning_rate}")
        if not isinstance(self.batch_size, int) or self.batch_size < 1:
            raise ValidationError(f"batch_size must be a positive integer, got {self.batch_size}")
        if not isinstance(self.epochs, int) or self.epochs < 1:
            raise ValidationError(f"epochs must be a positive integer, got {self.epochs}")
        if self.loss not in LOSSES:
            raise ValidationError(f"loss must be one of {list(LOSSES)}, got {self.loss!r}")
        if not self.huber_delta > 0:
            raise ValidationError(f"huber_delta must be positive, got {self.huber_delta}")
        if self.optimizer not in OPTIMIZERS:
            raise ValidationError(
                f"optimizer must be one of {list(OPTIMIZERS)}, got {self.optimizer!r}"
            )
        if self.init_method not in INIT_METHODS:
            raise ValidationError(
                f"init_method must be one of {list(INIT_METHODS)}, got {self.init_method!r}"
            )
        if self.bias_init not in BIAS_INITS:
            raise ValidationError(
                f"bias_init must be one of {list(BIAS_INITS)}, got {self.bias_init!r}"
            )
        if self.hidden_activation not in HIDDEN_ACTIVATIONS:
            raise ValidationError(
                f"hidden_activation must be one of {list(HIDDEN_ACTIVATIONS)}, "
                f"got {self.hidden_activation!r}"
            )
        if self.output_activation not in OUTPUT_ACTIVATION_CHOICES:
            raise ValidationError(
                f"output_activation must be one of {list(OUTPUT_ACTIVATION_CHOICES)}, "
                f"got {self.output_activation!r}"
            )
        if self.scaling not in SCALING_METHODS:
            raise ValidationError(
                f"scaling must be one of {list(SCALING_METHODS)}, got {self.scaling!r}"
            )
        if self.preload_unit not in FORCE_UNITS:
            raise ValidationError(
                f"preload_unit must be one of {list(FORCE_UNITS)}, got {self.preload_unit!r}"
            )
        if self.load_unit not in FORCE_UNITS:
            raise ValidationError(
                f"load_unit must be one of {list(FORCE_UNITS)}, got {self.load_unit!r}"
            )

    def resolved_output_activation(self) -> str:
        if self.output_activation != "auto":
            return self.output_activation
        return "sigmoid" if self.scaling == "normalization" else "identity"


@dataclass
class TrainingHistory:
    """Per-epoch mean loss and training-set band accuracy."""

    mean_loss: list[float]
    accuracy_pct: list[float]
    elapsed_seconds: float = 0.0

    def __post_init__(self) -> None:
        if len(self.mean_loss) != len(self.accuracy_pct):
            raise ValidationError(
                f"{len(self.mean_loss)} loss entries but "
                f"{len(self.accuracy_pct)} accuracy entries"
            )

    @property
    def epochs(self) -> int:
        return len(self.mean_loss)

    def to_csv(self, path) -> None:
        lines = ["epoch,mean_loss,accuracy_pct"]
        for i, (loss, acc) in enumerate(zip(self.mean_loss, self.accuracy_pct), start=1):
            lines.append(f"{i},{repr(loss)},{repr(acc)}")
        try:
            Path(path).write_text("\n".join(lines) + "\n")
        except OSError as exc:
            raise PersistenceError(f"could not write history to {path}: {exc}") from None


def huber_loss(pred, target, delta: float = 1.0) -> tuple[float, Vector]:
    """Mean Huber loss over the output components and its gradient.

    Residuals within delta contribute quadratically, larger ones linearly,
    so single far-off components cannot blow up the update step. Returns
    (loss, d loss / d pred).
    """
    if not delta > 0:
        raise ValidationError(f"huber delta must be positive, got {delta}")
    p = pred.data if isinstance(pred, Vector) else [float(v) for v in pred]
    t = target.data if isinstance(target, Vector) else [float(v) for v in target]
    if len(p) != len(t):
        raise ValidationError(
            f"prediction has {len(p)} components, target has {len(t)}"
        )
    n = len(p)
    total = 0.0
    grad = [0.0] * n
    for i in range(n):
        r = p[i] - t[i]
        if abs(r) <= delta:
            total += 0.5 * r * r
            grad[i] = r / n
        else:
            total += delta * (abs(r) - 0.5 * delta)
            grad[i] = (delta if r > 0.0 else -delta) / n
    return total / n, Vector(grad)


def _shuffle_rng(seed: int, epoch: int) -> random.Random:
    # one independent stream per (run, epoch) pair
    return random.Random((seed + 1) * 2_654_435_761 + epoch)


def band_accuracy(net: Network, inputs, targets, band: float = DEFAULT_BAND) -> float:
    """Percent of (sample, output) pairs predicted within the band."""
    hits = 0
    total = 0
    for x, t in zip(inputs, targets):
        y = predict_one(net, x)
        for p, tv in zip(y.data, t.data if isinstance(t, Vector) else t):
            hits += within_band(p, tv, band)
            total += 1
    if total == 0:
        raise ValidationError("cannot compute accuracy on an empty set")
    return 100.0 * hits / total


def run_training_loop(
    net: Network,
    inputs: list[Vector],
    targets: list[Vector],
    *,
    learning_rate: float,
    batch_size: int,
    epochs: int,
    huber_delta: float,
    seed: int,
    band: float = DEFAULT_BAND,
) -> tuple[list[float], list[float]]:
    """Optimize the network in place; return per-epoch losses and accuracies.

    Each epoch reshuffles sample order with an epoch-derived seed, walks the
    data in mini-batches (the final short batch is kept), and applies one
    descent step per batch using the batch-averaged gradient. The recorded
    epoch loss is the mean of the batch mean losses; the recorded accuracy
    is measured on the full training set after the epoch's updates.
    """
    n = len(inputs)
    if n == 0:
        raise ValidationError("training set is empty")
    if len(targets) != n:
        raise ValidationError(f"{n} inputs but {len(targets)} targets")
    n_layers = len(net.weights)
    order = list(range(n))
    losses: list[float] = []
    accuracies: list[float] = []
    for epoch in range(epochs):
        _shuffle_rng(seed, epoch).shuffle(order)
        batch_means: list[float] = []
        for start in range(0, n, batch_size):
            batch = order[start : start + batch_size]
            acc_w = [Matrix.zeros(w.rows, w.cols) for w in net.weights]
            acc_b = [Vector.zeros(len(b)) for b in net.biases]
            batch_loss = 0.0
            for idx in batch:
                y, trace = forward(net, inputs[idx])
                loss, grad = huber_loss(y, targets[idx], huber_delta)
                d_w, d_b = backward(net, trace, grad)
                for l in range(n_layers):
                    acc_w[l] = axpy(1.0, d_w[l], acc_w[l])
                    acc_b[l] = axpy(1.0, d_b[l], acc_b[l])
                batch_loss += loss
            if not math.isfinite(batch_loss):
                raise DivergenceError(
                    f"non-finite loss in epoch {epoch + 1}, "
                    f"batch starting at position {start}"
                )
            k = len(batch)
            step = -learning_rate / k
            for l in range(n_layers):
                net.weights[l] = axpy(step, acc_w[l], net.weights[l])
                net.biases[l] = axpy(step, acc_b[l], net.biases[l])
            batch_means.append(batch_loss / k)
        losses.append(sum(batch_means) / len(batch_means))
        accuracies.append(band_accuracy(net, inputs, targets, band))
    return losses, accuracies


def train(
    net: Network,
    split: SplitDataset,
    scaler,
    hp: HyperParams,
    *,
    start_time: float | None = None,
) -> tuple[Network, TrainingHistory]:
    """Train a network on the training split of a partitioned dataset.

    Inputs are transformed by the already-fitted scaler; targets are used
    as-is. Elapsed seconds cover the span from start_time (default: entry
    into this function) to the end of the last epoch.
    """
    t0 = time.perf_counter() if start_time is None else start_time
    check_is_fitted(scaler, "params_")
    if len(split.train) == 0:
        raise ValidationError("training split is empty")
    if net.weights[0].cols != N_INPUT_FEATURES:
        raise ValidationError(
            f"network expects {net.weights[0].cols} features, "
            f"pipeline provides {N_INPUT_FEATURES}"
        )
    inputs = [Vector(scaler.transform_one(row)) for row in split.train.feature_rows()]
    targets = [Vector(row) for row in split.train.target_rows()]
    losses, accuracies = run_training_loop(
        net,
        inputs,
        targets,
        learning_rate=hp.learning_rate,
        batch_size=hp.batch_size,
        epochs=hp.epochs,
        huber_delta=hp.huber_delta,
        seed=hp.seed,
    )
    history = TrainingHistory(losses, accuracies, time.perf_counter() - t0)
    return net, history
