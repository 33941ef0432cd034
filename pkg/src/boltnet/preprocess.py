"""Feature scaling fitted on training data and applied without refitting.

Two methods are offered: standardization maps each feature to zero mean and
unit standard deviation (population form, divisor n), normalization maps it
onto [0, 1] by the observed min and max. Targets are never scaled here;
bringing outputs into a trainable range is done by choosing their unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .base import ParamsMixin
from .errors import DegenerateFeatureError, ValidationError
from .validation import as_float_rows, check_is_fitted

SCALING_METHODS = ("standardization", "normalization", "none")


@dataclass(frozen=True)
class ScalerParams:
    """Frozen per-feature statistics captured at fit time."""

    method: str
    n_features: int
    means: tuple[float, ...] | None = None
    stds: tuple[float, ...] | None = None
    mins: tuple[float, ...] | None = None
    maxs: tuple[float, ...] | None = None


class FeatureScaler(ParamsMixin):
    """Column-wise scaler with the fit/transform estimator protocol.

    Fit learns statistics from the training rows alone; transform applies
    them unchanged to any other rows, so values outside the training range
    simply map outside [0, 1] rather than being clipped.
    """

    def __init__(self, method: str = "standardization"):
        self.method = method

    def fit(self, X, y=None, feature_names=None) -> "FeatureScaler":
        if self.method not in SCALING_METHODS:
            raise ValidationError(
                f"method must be one of {list(SCALING_METHODS)}, got {self.method!r}"
            )
        rows = as_float_rows(X, "X")
        width = len(rows[0])
        if feature_names is not None and len(feature_names) != width:
            raise ValidationError(
                f"{len(feature_names)} feature names for {width} columns"
            )
        if self.method == "none":
            self.params_ = ScalerParams("none", width)
        elif self.method == "standardization":
            means, stds = [], []
            for j in range(width):
                col = [row[j] for row in rows]
                mean = sum(col) / len(col)
                var = sum((v - mean) ** 2 for v in col) / len(col)
                std = math.sqrt(var)
                if std == 0.0:
                    raise DegenerateFeatureError(
                        f"feature {_feature_label(j, feature_names)} is constant; "
                        "standardization is undefined"
                    )
                means.append(mean)
                stds.append(std)
            self.params_ = ScalerParams(
                "standardization", width, means=tuple(means), stds=tuple(stds)
            )
        else:
            mins, maxs = [], []
            for j in range(width):
                col = [row[j] for row in rows]
                lo, hi = min(col), max(col)
                if lo == hi:
                    raise DegenerateFeatureError(
                        f"feature {_feature_label(j, feature_names)} is constant; "
                        "normalization is undefined"
                    )
                mins.append(lo)
                maxs.append(hi)
            self.params_ = ScalerParams(
                "normalization", width, mins=tuple(mins), maxs=tuple(maxs)
            )
        self.n_features_in_ = width
        return self

    def transform(self, X) -> list[list[float]]:
        check_is_fitted(self, "params_")
        rows = as_float_rows(X, "X", width=self.n_features_in_)
        return [self.transform_one(row) for row in rows]

    def transform_one(self, row) -> list[float]:
        check_is_fitted(self, "params_")
        p = self.params_
        if len(row) != p.n_features:
            raise ValidationError(
                f"row has {len(row)} values, scaler was fitted on {p.n_features}"
            )
        if p.method == "none":
            return [float(v) for v in row]
        if p.method == "standardization":
            return [(v - m) / s for v, m, s in zip(row, p.means, p.stds)]
        return [(v - lo) / (hi - lo) for v, lo, hi in zip(row, p.mins, p.maxs)]

    def inverse_transform(self, X) -> list[list[float]]:
        check_is_fitted(self, "params_")
        rows = as_float_rows(X, "X", width=self.n_features_in_)
        return [self.inverse_transform_one(row) for row in rows]

    def inverse_transform_one(self, row) -> list[float]:
        check_is_fitted(self, "params_")
        p = self.params_
        if len(row) != p.n_features:
            raise ValidationError(
                f"row has {len(row)} values, scaler was fitted on {p.n_features}"
            )
        if p.method == "none":
            return [float(v) for v in row]
        if p.method == "standardization":
            return [v * s + m for v, m, s in zip(row, p.means, p.stds)]
        return [v * (hi - lo) + lo for v, lo, hi in zip(row, p.mins, p.maxs)]

    def fit_transform(self, X, y=None, **fit_params) -> list[list[float]]:
        return self.fit(X, y, **fit_params).transform(X)


def _feature_label(j: int, feature_names) -> str:
    if feature_names is not None:
        return f"{feature_names[j]!r}"
    return str(j)


def fit_scaler(train, method: str, feature_names=None) -> FeatureScaler:
    """Fit a scaler on a training split's input features only."""
    return FeatureScaler(method).fit(train.feature_rows(), feature_names=feature_names)
