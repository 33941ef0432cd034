"""End-to-end runs: data acquisition through training, evaluation, and files.

The command line layer is a thin wrapper over these functions; tests and
library users can call them directly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

from .config import RunConfig, write_run_config
from .dataset import (
    INPUT_FEATURE_NAMES,
    Dataset,
    SplitDataset,
    convert_units,
    load_csv,
    save_csv,
    split,
)
from .errors import PersistenceError
from .evaluation import EvalReport, evaluate, export_report
from .model_io import save_model
from .network import Network, init_network
from .preprocess import FeatureScaler, fit_scaler
from .synth import generate
from .training import HyperParams, TrainingHistory, train


@dataclass
class TrainResult:
    """Everything produced by one training run, before any file is written."""

    config: RunConfig
    dataset: Dataset
    split: SplitDataset
    scaler: FeatureScaler
    net: Network
    history: TrainingHistory
    report: EvalReport


def acquire_dataset(cfg: RunConfig) -> Dataset:
    """Load or generate the dataset named by the config, in file units."""
    if cfg.source == "csv":
        data = load_csv(
            cfg.csv_path,
            preload_unit=cfg.csv_preload_unit,
            load_unit=cfg.csv_load_unit,
        )
    else:
        data = generate(cfg.synth)
    if cfg.max_samples is not None:
        data = data.head(cfg.max_samples)
    return data


def prepare_split(cfg: RunConfig, hp: HyperParams) -> SplitDataset:
    """Acquire data, convert to training units, and partition it."""
    data = acquire_dataset(cfg)
    data = convert_units(data, hp.preload_unit, hp.load_unit)
    return split(data, cfg.split_seed, cfg.stratified)


def run_training(cfg: RunConfig) -> TrainResult:
    """Execute one full training run described by a configuration.

    The elapsed time recorded in the history spans data acquisition through
    the final epoch.
    """
    t0 = time.perf_counter()
    data = acquire_dataset(cfg)
    converted = convert_units(data, cfg.hp.preload_unit, cfg.hp.load_unit)
    parts = split(converted, cfg.split_seed, cfg.stratified)
    scaler = fit_scaler(parts.train, cfg.hp.scaling, INPUT_FEATURE_NAMES)
    net = init_network(cfg.network_config())
    net, history = train(net, parts, scaler, cfg.hp, start_time=t0)
    report = evaluate(net, parts.test, scaler)
    return TrainResult(cfg, data, parts, scaler, net, history, report)


def write_train_outputs(result: TrainResult, out_dir) -> dict[str, Path]:
    """Write model, history, dataset, and manifest into a run directory."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise PersistenceError(f"could not create {out}: {exc}") from None
    paths = {
        "model": out / "model.json",
        "history": out / "history.csv",
        "dataset": out / "dataset.csv",
        "manifest": out / "manifest.ini",
    }
    save_model(result.net, result.scaler, result.config.hp, paths["model"])
    result.history.to_csv(paths["history"])
    try:
        save_csv(result.dataset, paths["dataset"])
    except OSError as exc:
        raise PersistenceError(f"could not write {paths['dataset']}: {exc}") from None
    write_run_config(
        result.config,
        paths["manifest"],
        result={
            "elapsed_seconds": repr(result.history.elapsed_seconds),
            "train_accuracy_pct": repr(result.history.accuracy_pct[-1]),
            "test_accuracy_pct": repr(result.report.overall_accuracy),
        },
    )
    return paths


def run_evaluation(cfg: RunConfig, net: Network, scaler: FeatureScaler, hp: HyperParams) -> EvalReport:
    """Evaluate a trained pipeline on the test split the config describes.

    Units come from the model's stored hyperparameters, so a dataset is
    always converted exactly as it was during that model's training.
    """
    parts = prepare_split(cfg, hp)
    return evaluate(net, parts.test, scaler)


def write_eval_outputs(report: EvalReport, out_dir) -> list[Path]:
    return export_report(report, out_dir)
