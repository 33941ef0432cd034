"""Tightening records: CSV loading, unit conversion, and train/test splits.

A sample couples six measured inputs (bolt size, strength grade, tightening
torque, head torque, thread torque, preload force) with the three quantities
the network predicts (load capacity, head friction coefficient, thread
friction coefficient). Files never declare units; the run configuration
states which unit the preload and load-capacity columns are in.
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass, field, replace

from .errors import ConfigError, ParseError, ValidationError

INPUT_FEATURE_NAMES = (
    "bolt_size",
    "strength_grade",
    "tightening_torque",
    "head_torque",
    "thread_torque",
    "preload_force",
)
OUTPUT_NAMES = ("load_capacity", "mu_head", "mu_thread")

# canonical field -> default CSV header
DEFAULT_SCHEMA = {
    "group": "group",
    "bolt_size": "bolt_size_mm",
    "strength_grade": "strength_grade",
    "tightening_torque": "tightening_torque_Nm",
    "head_torque": "head_torque_Nm",
    "thread_torque": "thread_torque_Nm",
    "preload_force": "preload",
    "load_capacity": "load_capacity",
    "mu_head": "mu_head",
    "mu_thread": "mu_thread",
}

FORCE_UNITS = ("N", "kN", "MN")
_UNIT_EXPONENT = {"N": 0, "kN": 1, "MN": 2}

TRAIN_FRACTION = 0.8


def round_half_up(x: float) -> int:
    """Round to the nearest integer with exact halves going up."""
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class BoltSample:
    """One tightening observation: six inputs and three targets.

    Torques are in N*m and the bolt size in mm. The preload and load
    capacity are stored in whatever unit the owning dataset declares.
    """

    bolt_size: float
    strength_grade: float
    tightening_torque: float
    head_torque: float
    thread_torque: float
    preload_force: float
    load_capacity: float
    mu_head: float
    mu_thread: float

    def features(self) -> list[float]:
        return [
            self.bolt_size,
            self.strength_grade,
            self.tightening_torque,
            self.head_torque,
            self.thread_torque,
            self.preload_force,
        ]

    def targets(self) -> list[float]:
        return [self.load_capacity, self.mu_head, self.mu_thread]

    def violated_rule(self) -> str | None:
        """Return the first physical-plausibility rule this sample breaks."""
        for name in INPUT_FEATURE_NAMES + OUTPUT_NAMES:
            if not math.isfinite(getattr(self, name)):
                return f"{name} must be finite"
        if not self.bolt_size > 0:
            return "bolt_size must be positive"
        if not self.strength_grade > 0:
            return "strength_grade must be positive"
        if not self.preload_force > 0:
            return "preload_force must be positive"
        if not 0 < self.mu_head < 1:
            return "mu_head must lie in (0, 1)"
        if not 0 < self.mu_thread < 1:
            return "mu_thread must lie in (0, 1)"
        if not self.tightening_torque > 0:
            return "tightening_torque must be positive"
        if not self.head_torque > 0:
            return "head_torque must be positive"
        if not self.thread_torque > 0:
            return "thread_torque must be positive"
        if self.tightening_torque < self.head_torque:
            return "tightening_torque must be at least head_torque"
        if self.tightening_torque < self.thread_torque:
            return "tightening_torque must be at least thread_torque"
        if self.load_capacity < 0:
            return "load_capacity must be non-negative"
        return None


@dataclass
class Dataset:
    """An ordered collection of samples with declared force units."""

    samples: list[BoltSample]
    preload_unit: str = "N"
    load_unit: str = "N"
    group_labels: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.preload_unit not in FORCE_UNITS:
            raise ValidationError(
                f"preload_unit must be one of {list(FORCE_UNITS)}, got {self.preload_unit!r}"
            )
        if self.load_unit not in FORCE_UNITS:
            raise ValidationError(
                f"load_unit must be one of {list(FORCE_UNITS)}, got {self.load_unit!r}"
            )
        if not self.group_labels:
            self.group_labels = [""] * len(self.samples)
        if len(self.group_labels) != len(self.samples):
            raise ValidationError(
                f"{len(self.group_labels)} group labels for {len(self.samples)} samples"
            )

    def __len__(self) -> int:
        return len(self.samples)

    def feature_rows(self) -> list[list[float]]:
        return [s.features() for s in self.samples]

    def target_rows(self) -> list[list[float]]:
        return [s.targets() for s in self.samples]

    def groups(self) -> dict[str, list[int]]:
        """Sample indices per group label, in order of first appearance."""
        out: dict[str, list[int]] = {}
        for i, label in enumerate(self.group_labels):
            out.setdefault(label, []).append(i)
        return out

    def head(self, n: int) -> "Dataset":
        """The first n samples in file order, keeping the declared units."""
        if n < 1:
            raise ValidationError(f"subset size must be positive, got {n}")
        if n > len(self.samples):
            raise ValidationError(
                f"subset size {n} exceeds dataset size {len(self.samples)}"
            )
        return Dataset(
            self.samples[:n], self.preload_unit, self.load_unit, self.group_labels[:n]
        )

    def take(self, indices: list[int]) -> "Dataset":
        return Dataset(
            [self.samples[i] for i in indices],
            self.preload_unit,
            self.load_unit,
            [self.group_labels[i] for i in indices],
        )


@dataclass
class SplitDataset:
    """A train/test partition of one dataset."""

    train: Dataset
    test: Dataset
    split_seed: int

    def __post_init__(self) -> None:
        if (
            self.train.preload_unit != self.test.preload_unit
            or self.train.load_unit != self.test.load_unit
        ):
            raise ValidationError("train and test splits declare different units")


def load_csv(
    path,
    schema: dict[str, str] | None = None,
    *,
    preload_unit: str = "N",
    load_unit: str = "N",
) -> Dataset:
    """Read a comma-separated sample file.

    The header must contain every column the schema names; extra columns
    are ignored. Cell errors report the file line number (the header is
    line 1) and the offending column.
    """
    columns = dict(DEFAULT_SCHEMA)
    if schema:
        unknown = set(schema) - set(DEFAULT_SCHEMA)
        if unknown:
            raise ConfigError(f"schema maps unknown fields: {sorted(unknown)}")
        columns.update(schema)
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise ValidationError(f"{path}: file is empty") from None
            header = [h.strip() for h in header]
            position: dict[str, int] = {}
            for fieldname, column in columns.items():
                if column not in header:
                    raise ConfigError(f"{path}: missing column {column!r}")
                position[fieldname] = header.index(column)
            samples: list[BoltSample] = []
            labels: list[str] = []
            for line_no, row in enumerate(reader, start=2):
                if not row or all(not cell.strip() for cell in row):
                    continue
                if len(row) < len(header):
                    raise ValidationError(
                        f"{path} line {line_no}: {len(row)} cells, header has {len(header)}"
                    )
                values: dict[str, float] = {}
                for fieldname in DEFAULT_SCHEMA:
                    if fieldname == "group":
                        continue
                    cell = row[position[fieldname]].strip()
                    try:
                        values[fieldname] = float(cell)
                    except ValueError:
                        raise ParseError(
                            f"{path} line {line_no}, column "
                            f"{columns[fieldname]!r}: could not parse {cell!r}"
                        ) from None
                sample = BoltSample(**values)
                rule = sample.violated_rule()
                if rule is not None:
                    raise ValidationError(f"{path} line {line_no}: {rule}")
                samples.append(sample)
                labels.append(row[position["group"]].strip())
    except OSError as exc:
        raise ValidationError(f"could not read {path}: {exc}") from None
    if not samples:
        raise ValidationError(f"{path}: no data rows")
    return Dataset(samples, preload_unit, load_unit, labels)


def save_csv(dataset: Dataset, path) -> None:
    """Write a dataset with the default column headers.

    Floats are written with repr so a load of the written file reproduces
    every value bit for bit.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(DEFAULT_SCHEMA.values()))
        for sample, label in zip(dataset.samples, dataset.group_labels):
            writer.writerow(
                [label]
                + [repr(getattr(sample, f)) for f in DEFAULT_SCHEMA if f != "group"]
            )


def convert_units(dataset: Dataset, preload_unit: str, load_unit: str) -> Dataset:
    """Rescale preload and load-capacity columns by exact powers of 1000."""
    for unit, name in ((preload_unit, "preload_unit"), (load_unit, "load_unit")):
        if unit not in FORCE_UNITS:
            raise ValidationError(
                f"{name} must be one of {list(FORCE_UNITS)}, got {unit!r}"
            )
    pf = 1000.0 ** (_UNIT_EXPONENT[dataset.preload_unit] - _UNIT_EXPONENT[preload_unit])
    lf = 1000.0 ** (_UNIT_EXPONENT[dataset.load_unit] - _UNIT_EXPONENT[load_unit])
    samples = [
        replace(s, preload_force=s.preload_force * pf, load_capacity=s.load_capacity * lf)
        for s in dataset.samples
    ]
    return Dataset(samples, preload_unit, load_unit, list(dataset.group_labels))


def _stratified_test_allocation(dataset: Dataset, test_size: int) -> dict[str, int]:
    """Decide how many test samples each group contributes.

    Each group's share is proportional to its size, assigned by largest
    remainder; any group with at least 5 samples is guaranteed one test
    slot when the total allows it.
    """
    groups = dataset.groups()
    n = len(dataset)
    quotas = {label: test_size * len(idx) / n for label, idx in groups.items()}
    alloc = {label: math.floor(q) for label, q in quotas.items()}
    order = sorted(
        groups,
        key=lambda label: (-(quotas[label] - alloc[label]), list(groups).index(label)),
    )
    remainder = test_size - sum(alloc.values())
    for label in order:
        if remainder <= 0:
            break
        if alloc[label] < len(groups[label]):
            alloc[label] += 1
            remainder -= 1
    # large groups must appear in the test split if there is room
    for label, idx in groups.items():
        if len(idx) >= 5 and alloc[label] == 0:
            donor = max(alloc, key=lambda lb: alloc[lb])
            if alloc[donor] > 1:
                alloc[donor] -= 1
                alloc[label] += 1
    return alloc


def split(dataset: Dataset, seed: int, stratified: bool = True) -> SplitDataset:
    """Partition a dataset 80/20 with a seeded draw.

    The train size is the half-up rounding of 0.8 * n. Stratified splits
    allocate test slots per group proportionally; both splits keep samples
    in their original file order.
    """
    n = len(dataset)
    if n < 5:
        raise ValidationError(f"need at least 5 samples to split, got {n}")
    train_size = round_half_up(TRAIN_FRACTION * n)
    test_size = n - train_size
    rng = random.Random(seed)
    if stratified and any(dataset.group_labels):
        alloc = _stratified_test_allocation(dataset, test_size)
        test_indices: set[int] = set()
        for label, indices in dataset.groups().items():
            take = alloc.get(label, 0)
            if take > 0:
                test_indices.update(rng.sample(indices, take))
    else:
        test_indices = set(rng.sample(range(n), test_size))
    train_idx = [i for i in range(n) if i not in test_indices]
    test_idx = [i for i in range(n) if i in test_indices]
    return SplitDataset(dataset.take(train_idx), dataset.take(test_idx), seed)
