"""Input validation helpers for the estimator-facing surfaces."""

from __future__ import annotations

import math

from .errors import NotFittedError, ValidationError


def as_float_rows(X, name: str = "X", width: int | None = None) -> list[list[float]]:
    """Coerce a 2-D table (lists, tuples, arrays) to lists of finite floats.

    Raises a validation error on empty input, ragged rows, values that do
    not convert to float, and non-finite values. When width is given every
    row must have exactly that many columns.
    """
    try:
        raw_rows = list(X)
    except TypeError:
        raise ValidationError(f"{name} is not iterable") from None
    if not raw_rows:
        raise ValidationError(f"{name} is empty")
    rows: list[list[float]] = []
    expected = width
    for i, raw in enumerate(raw_rows):
        try:
            row = [float(v) for v in raw]
        except TypeError:
            raise ValidationError(f"{name} row {i} is not a sequence of numbers") from None
        except ValueError as exc:
            raise ValidationError(f"{name} row {i}: {exc}") from None
        if not row:
            raise ValidationError(f"{name} row {i} is empty")
        if expected is None:
            expected = len(row)
        if len(row) != expected:
            raise ValidationError(
                f"{name} row {i} has {len(row)} values, expected {expected}"
            )
        for j, v in enumerate(row):
            if not math.isfinite(v):
                raise ValidationError(f"{name} row {i}, column {j} is not finite")
        rows.append(row)
    return rows


def check_consistent_length(a, b, name_a: str = "X", name_b: str = "y") -> None:
    if len(a) != len(b):
        raise ValidationError(
            f"{name_a} and {name_b} have different lengths: {len(a)} vs {len(b)}"
        )


def check_is_fitted(obj, attribute: str) -> None:
    if not hasattr(obj, attribute):
        raise NotFittedError(
            f"{type(obj).__name__} is not fitted yet; call fit before using it"
        )


def check_positive(value: float, name: str) -> None:
    if not (value > 0):
        raise ValidationError(f"{name} must be positive, got {value}")


def check_choice(value: str, choices, name: str) -> None:
    if value not in choices:
        raise ValidationError(
            f"{name} must be one of {sorted(choices)}, got {value!r}"
        )
