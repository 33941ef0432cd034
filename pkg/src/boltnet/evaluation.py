"""Accuracy within a relative tolerance band, error metrics, and reports."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .dataset import OUTPUT_NAMES, Dataset
from .errors import PersistenceError, ValidationError
from .linalg import Vector
from .network import Network, predict_one
from .validation import check_is_fitted

DEFAULT_BAND = 0.05


def within_band(pred: float, target: float, band: float = DEFAULT_BAND) -> bool:
    """True when pred deviates from target by at most band, relatively.

    The boundary counts as inside. A zero target makes the relative
    criterion undefined; such predictions count as hits only when they are
    essentially zero themselves, and callers flag them as degenerate.
    """
    if not band > 0:
        raise ValidationError(f"band must be positive, got {band}")
    if target == 0.0:
        return abs(pred) <= band * 1e-6
    return abs(pred - target) <= band * abs(target)


@dataclass(frozen=True)
class PredictionRecord:
    """One (sample, output) pair with its band verdict."""

    sample_index: int
    output_name: str
    target: float
    predicted: float
    within_band: bool
    degenerate: bool = False


@dataclass(frozen=True)
class SampleErrors:
    """Error metrics for one sample across its output components."""

    sample_index: int
    mae: float
    mse: float
    rmse: float


@dataclass
class EvalReport:
    """Aggregated evaluation results for one model on one dataset."""

    per_prediction: list[PredictionRecord]
    per_sample_errors: list[SampleErrors]
    per_output_accuracy: dict[str, float]
    overall_accuracy: float
    scatter: dict[str, list[tuple[float, float]]]
    band: float = DEFAULT_BAND

    @property
    def predictions_total(self) -> int:
        return len(self.per_prediction)

    @property
    def predictions_within_band(self) -> int:
        return sum(1 for r in self.per_prediction if r.within_band)


def build_report(
    targets: list[list[float]],
    predictions: list[list[float]],
    band: float = DEFAULT_BAND,
    output_names=OUTPUT_NAMES,
) -> EvalReport:
    """Compare prediction rows against target rows component by component.

    Accuracy counts each (sample, output) pair once: the percentage of
    pairs whose prediction falls within the relative band. Error metrics
    are aggregated per sample across its components.
    """
    if len(targets) != len(predictions):
        raise ValidationError(
            f"{len(targets)} target rows but {len(predictions)} prediction rows"
        )
    if not targets:
        raise ValidationError("cannot evaluate an empty dataset")
    width = len(output_names)
    records: list[PredictionRecord] = []
    errors: list[SampleErrors] = []
    scatter: dict[str, list[tuple[float, float]]] = {name: [] for name in output_names}
    hits_per_output = {name: 0 for name in output_names}
    for i, (t_row, p_row) in enumerate(zip(targets, predictions)):
        if len(t_row) != width or len(p_row) != width:
            raise ValidationError(
                f"row {i}: expected {width} components, got "
                f"{len(t_row)} targets and {len(p_row)} predictions"
            )
        abs_sum = 0.0
        sq_sum = 0.0
        for name, t, p in zip(output_names, t_row, p_row):
            hit = within_band(p, t, band)
            records.append(
                PredictionRecord(i, name, t, p, hit, degenerate=(t == 0.0))
            )
            if hit:
                hits_per_output[name] += 1
            scatter[name].append((t, p))
            r = p - t
            abs_sum += abs(r)
            sq_sum += r * r
        mse = sq_sum / width
        errors.append(SampleErrors(i, abs_sum / width, mse, math.sqrt(mse)))
    n = len(targets)
    per_output = {name: 100.0 * hits_per_output[name] / n for name in output_names}
    overall = 100.0 * sum(hits_per_output.values()) / (n * width)
    return EvalReport(records, errors, per_output, overall, scatter, band)


def evaluate(
    net: Network, test: Dataset, scaler, band: float = DEFAULT_BAND
) -> EvalReport:
    """Score a trained network on a held-out split.

    Inputs go through the scaler fitted on the training split; predictions
    are compared against the raw targets, which are never scaled.
    """
    if len(test) == 0:
        raise ValidationError("test set is empty")
    check_is_fitted(scaler, "params_")
    predictions = [
        predict_one(net, Vector(scaler.transform_one(row))).data
        for row in test.feature_rows()
    ]
    return build_report(test.target_rows(), predictions, band)


def export_report(report: EvalReport, out_dir) -> list[Path]:
    """Write scatter CSVs, per-sample errors, and a summary to a directory.

    Output is byte-stable: exporting the same report twice produces
    identical files.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written: list[Path] = []
        for name, pairs in report.scatter.items():
            path = out / f"scatter_{name}.csv"
            lines = ["target,predicted"]
            lines += [f"{repr(t)},{repr(p)}" for t, p in pairs]
            path.write_text("\n".join(lines) + "\n")
            written.append(path)
        errors_path = out / "errors_per_sample.csv"
        lines = ["sample_index,mae,mse,rmse"]
        lines += [
            f"{e.sample_index},{repr(e.mae)},{repr(e.mse)},{repr(e.rmse)}"
            for e in report.per_sample_errors
        ]
        errors_path.write_text("\n".join(lines) + "\n")
        written.append(errors_path)
        summary_path = out / "summary.txt"
        summary_lines = [
            f"overall_accuracy_pct = {repr(report.overall_accuracy)}",
        ]
        summary_lines += [
            f"accuracy_{name}_pct = {repr(report.per_output_accuracy[name])}"
            for name in report.per_output_accuracy
        ]
        summary_lines += [
            f"predictions_total = {report.predictions_total}",
            f"predictions_within_band = {report.predictions_within_band}",
            f"band = {repr(report.band)}",
        ]
        summary_path.write_text("\n".join(summary_lines) + "\n")
        written.append(summary_path)
        return written
    except OSError as exc:
        raise PersistenceError(f"could not write report to {out}: {exc}") from None
