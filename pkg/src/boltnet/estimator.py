"""A feed-forward regressor with the scikit-learn estimator protocol.

This is the ecosystem-facing surface of the trainer: plain fit/predict over
row-major tables, parameters introspectable through get_params, suitable
for third-party pipelines and clone-based tools. The domain pipeline in
training.py drives the same loop through datasets and scalers instead.
"""

from __future__ import annotations

import random
import time

from .base import ParamsMixin
from .errors import ValidationError
from .linalg import Vector
from .network import (
    BIAS_INITS,
    HIDDEN_ACTIVATIONS,
    INIT_METHODS,
    OUTPUT_ACTIVATIONS,
    Network,
    build_layers,
    predict_one,
    warn_on_unconventional_pairing,
)
from .training import TrainingHistory, band_accuracy, run_training_loop
from .validation import as_float_rows, check_consistent_length, check_is_fitted


class FeedForwardRegressor(ParamsMixin):
    """Two-hidden-layer network trained by mini-batch descent on Huber loss.

    The layer widths adapt to the data: input width from X, output width
    from y. Targets are consumed unscaled, so callers pick units that put
    them in a range the output activation can reach.
    """

    def __init__(
        self,
        hidden_sizes: tuple[int, int] = (6, 3),
        hidden_activation: str = "sigmoid",
        output_activation: str = "sigmoid",
        init_method: str = "xavier",
        bias_init: str = "zero",
        learning_rate: float = 0.01,
        batch_size: int = 4,
        epochs: int = 1000,
        huber_delta: float = 1.0,
        band: float = 0.05,
        seed: int = 0,
    ):
        self.hidden_sizes = hidden_sizes
        self.hidden_activation = hidden_activation
        self.output_activation = output_activation
        self.init_method = init_method
        self.bias_init = bias_init
        self.learning_rate = learning_rate
        self.batch_size = batch_size
        self.epochs = epochs
        self.huber_delta = huber_delta
        self.band = band
        self.seed = seed

    def _check_params(self) -> None:
        sizes = tuple(int(n) for n in self.hidden_sizes)
        if len(sizes) != 2 or any(n < 1 for n in sizes):
            raise ValidationError(
                f"hidden_sizes must be two positive widths, got {self.hidden_sizes!r}"
            )
        if self.hidden_activation not in HIDDEN_ACTIVATIONS:
            raise ValidationError(
                f"hidden_activation must be one of {list(HIDDEN_ACTIVATIONS)}, "
                f"got {self.hidden_activation!r}"
            )
        if self.output_activation not in OUTPUT_ACTIVATIONS:
            raise ValidationError(
                f"output_activation must be one of {list(OUTPUT_ACTIVATIONS)}, "
                f"got {self.output_activation!r}"
            )
        if self.init_method not in INIT_METHODS:
            raise ValidationError(
                f"init_method must be one of {list(INIT_METHODS)}, "
                f"got {self.init_method!r}"
            )
        if self.bias_init not in BIAS_INITS:
            raise ValidationError(
                f"bias_init must be one of {list(BIAS_INITS)}, got {self.bias_init!r}"
            )
        if not self.learning_rate > 0:
            raise ValidationError(
                f"learning_rate must be positive, got {self.learning_rate}"
            )
        if int(self.batch_size) < 1:
            raise ValidationError(f"batch_size must be positive, got {self.batch_size}")
        if int(self.epochs) < 1:
            raise ValidationError(f"epochs must be positive, got {self.epochs}")
        if not self.huber_delta > 0:
            raise ValidationError(f"huber_delta must be positive, got {self.huber_delta}")
        if not self.band > 0:
            raise ValidationError(f"band must be positive, got {self.band}")

    def fit(self, X, y) -> "FeedForwardRegressor":
        self._check_params()
        t0 = time.perf_counter()
        rows = as_float_rows(X, "X")
        targets = as_float_rows(y, "y")
        check_consistent_length(rows, targets)
        warn_on_unconventional_pairing(self.init_method, self.hidden_activation)
        sizes = (len(rows[0]), *(int(n) for n in self.hidden_sizes), len(targets[0]))
        rng = random.Random(self.seed)
        weights, biases = build_layers(sizes, self.init_method, self.bias_init, rng)
        net = Network(weights, biases, self.hidden_activation, self.output_activation)
        losses, accuracies = run_training_loop(
            net,
            [Vector(r) for r in rows],
            [Vector(t) for t in targets],
            learning_rate=float(self.learning_rate),
            batch_size=int(self.batch_size),
            epochs=int(self.epochs),
            huber_delta=float(self.huber_delta),
            seed=int(self.seed),
            band=float(self.band),
        )
        self.network_ = net
        self.history_ = TrainingHistory(losses, accuracies, time.perf_counter() - t0)
        self.n_features_in_ = len(rows[0])
        self.n_outputs_ = len(targets[0])
        return self

    def predict(self, X) -> list[list[float]]:
        check_is_fitted(self, "network_")
        rows = as_float_rows(X, "X", width=self.n_features_in_)
        return [predict_one(self.network_, Vector(r)).data for r in rows]

    def score(self, X, y) -> float:
        """Band accuracy in percent over all (sample, output) pairs."""
        check_is_fitted(self, "network_")
        rows = as_float_rows(X, "X", width=self.n_features_in_)
        targets = as_float_rows(y, "y", width=self.n_outputs_)
        check_consistent_length(rows, targets)
        return band_accuracy(
            self.network_,
            [Vector(r) for r in rows],
            [Vector(t) for t in targets],
            float(self.band),
        )
