"""Command line entry points: synth, train, eval, and sweep.

Exit codes: 0 success, 1 validation or configuration problem, 2 numeric
divergence during training, 3 I/O or persistence failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_run_config
from .dataset import save_csv
from .errors import (
    BoltNetError,
    ConfigError,
    NumericError,
    PersistenceError,
)
from .model_io import load_model
from .pipeline import (
    run_evaluation,
    run_training,
    write_eval_outputs,
    write_train_outputs,
)
from .synth import generate

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERIC = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boltnet",
        description=(
            "Train and evaluate feed-forward predictors of bolted-joint "
            "load capacity and friction coefficients."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="generate a synthetic dataset CSV")
    train = sub.add_parser("train", help="train a model from a run config")
    evaluate = sub.add_parser("eval", help="evaluate a saved model on a config's test split")
    sweep = sub.add_parser("sweep", help="train several configs and tabulate the results")

    for p in (synth, train, evaluate):
        p.add_argument("--config", required=True, help="run configuration INI file")
        p.add_argument("--seed", type=int, default=None,
                       help="override every seed in the config with this value")
        p.add_argument("--out", default=None, help="output directory")
    sweep.add_argument("--config", required=True, nargs="+",
                       help="one or more run configuration INI files")
    sweep.add_argument("--seed", type=int, default=None,
                       help="override every seed in each config with this value")
    sweep.add_argument("--out", default="sweep", help="root output directory")
    evaluate.add_argument("--model", required=True, help="model JSON file to load")

    synth.set_defaults(func=cmd_synth)
    train.set_defaults(func=cmd_train)
    evaluate.set_defaults(func=cmd_eval)
    sweep.set_defaults(func=cmd_sweep)
    return parser


def cmd_synth(args) -> int:
    cfg = load_run_config(args.config)
    if args.seed is not None:
        cfg.override_seeds(args.seed)
    if cfg.source != "synth" or cfg.synth is None:
        raise ConfigError("the synth command needs a config with a [synth] section")
    data = generate(cfg.synth)
    out = Path(args.out if args.out is not None else cfg.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        path = out / "dataset.csv"
        save_csv(data, path)
    except OSError as exc:
        raise PersistenceError(f"could not write dataset to {out}: {exc}") from None
    print(f"wrote {path}")
    for label, indices in data.groups().items():
        print(f"{label}: {len(indices)}")
    print(f"total: {len(data)}")
    return EXIT_OK


def cmd_train(args) -> int:
    cfg = load_run_config(args.config)
    if args.seed is not None:
        cfg.override_seeds(args.seed)
    if args.out is not None:
        cfg.out_dir = args.out
    result = run_training(cfg)
    paths = write_train_outputs(result, cfg.out_dir)
    for kind in ("model", "history", "dataset", "manifest"):
        print(f"wrote {paths[kind]}")
    print(f"train_accuracy_pct = {result.history.accuracy_pct[-1]!r}")
    print(f"test_accuracy_pct = {result.report.overall_accuracy!r}")
    print(f"elapsed_seconds = {result.history.elapsed_seconds!r}")
    return EXIT_OK


def cmd_eval(args) -> int:
    cfg = load_run_config(args.config)
    if args.seed is not None:
        cfg.override_seeds(args.seed)
    net, scaler, hp = load_model(args.model)
    report = run_evaluation(cfg, net, scaler, hp)
    out = args.out if args.out is not None else str(Path(cfg.out_dir) / "eval")
    for path in write_eval_outputs(report, out):
        print(f"wrote {path}")
    print(f"overall_accuracy_pct = {report.overall_accuracy!r}")
    for name, acc in report.per_output_accuracy.items():
        print(f"accuracy_{name}_pct = {acc!r}")
    print(f"predictions_total = {report.predictions_total}")
    print(f"predictions_within_band = {report.predictions_within_band}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    root = Path(args.out)
    rows: list[tuple[str, str, str, str]] = []
    seen: dict[str, int] = {}
    all_ok = True
    for config_path in args.config:
        try:
            cfg = load_run_config(config_path)
            if args.seed is not None:
                cfg.override_seeds(args.seed)
            label = cfg.label
        except BoltNetError as exc:
            print(f"error: {config_path}: {exc}", file=sys.stderr)
            rows.append((Path(config_path).stem, "failed", "", ""))
            all_ok = False
            continue
        # duplicate labels get positional suffixes so runs never collide
        seen[label] = seen.get(label, 0) + 1
        if seen[label] > 1:
            label = f"{label}_{seen[label]}"
        try:
            result = run_training(cfg)
            write_train_outputs(result, root / label)
            rows.append(
                (
                    label,
                    "ok",
                    repr(result.report.overall_accuracy),
                    repr(result.history.elapsed_seconds),
                )
            )
        except BoltNetError as exc:
            print(f"error: {label}: {exc}", file=sys.stderr)
            rows.append((label, "failed", "", ""))
            all_ok = False
    try:
        root.mkdir(parents=True, exist_ok=True)
        table = root / "sweep.csv"
        lines = ["label,status,test_accuracy_pct,elapsed_seconds"]
        lines += [",".join(row) for row in rows]
        table.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise PersistenceError(f"could not write sweep table to {root}: {exc}") from None
    print(f"wrote {table}")
    for row in rows:
        print(" ".join(cell for cell in row if cell))
    return EXIT_OK if all_ok else EXIT_INVALID


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        return args.func(args)
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (PersistenceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BoltNetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
