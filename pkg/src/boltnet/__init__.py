"""Prediction of bolted-joint load capacity and friction coefficients.

A from-scratch feed-forward network pipeline: synthetic data generation,
CSV handling, feature scaling, mini-batch training on Huber loss, band
accuracy evaluation, and model persistence. The estimator surfaces follow
the scikit-learn fit/transform/predict protocol without depending on it.
"""

from .config import RunConfig, load_run_config, write_run_config
from .dataset import (
    BoltSample,
    Dataset,
    SplitDataset,
    convert_units,
    load_csv,
    save_csv,
    split,
)
from .errors import (
    BoltNetError,
    ConfigError,
    DegenerateFeatureError,
    DivergenceError,
    InversionError,
    NotFittedError,
    NumericError,
    ParseError,
    PersistenceError,
    ShapeError,
    ValidationError,
)
from .estimator import FeedForwardRegressor
from .evaluation import EvalReport, build_report, evaluate, export_report, within_band
from .model_io import load_model, save_model
from .models import (
    default_synth_plan,
    ladder_config,
    ladder_configs,
    overfit_synth_plan,
)
from .network import Network, NetworkConfig, backward, forward, init_network
from .pipeline import run_training, write_train_outputs
from .preprocess import FeatureScaler, ScalerParams, fit_scaler
from .synth import (
    BoltGeometry,
    SynthConfig,
    SynthGroup,
    generate,
    geometry_for,
    invert_friction,
)
from .training import HyperParams, TrainingHistory, huber_loss, train

__version__ = "0.1.0"

__all__ = [
    "BoltGeometry",
    "BoltNetError",
    "BoltSample",
    "ConfigError",
    "Dataset",
    "DegenerateFeatureError",
    "DivergenceError",
    "EvalReport",
    "FeatureScaler",
    "FeedForwardRegressor",
    "HyperParams",
    "InversionError",
    "Network",
    "NetworkConfig",
    "NotFittedError",
    "NumericError",
    "ParseError",
    "PersistenceError",
    "RunConfig",
    "ScalerParams",
    "ShapeError",
    "SplitDataset",
    "SynthConfig",
    "SynthGroup",
    "TrainingHistory",
    "ValidationError",
    "backward",
    "build_report",
    "convert_units",
    "default_synth_plan",
    "evaluate",
    "export_report",
    "fit_scaler",
    "forward",
    "generate",
    "geometry_for",
    "huber_loss",
    "init_network",
    "invert_friction",
    "ladder_config",
    "ladder_configs",
    "load_csv",
    "load_model",
    "load_run_config",
    "overfit_synth_plan",
    "run_training",
    "save_csv",
    "save_model",
    "split",
    "train",
    "within_band",
    "write_run_config",
    "write_train_outputs",
]
