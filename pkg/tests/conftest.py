"""Shared helpers for the test suite.

Builders here produce small, valid inputs by hand so individual tests can
focus on the one field or behavior they bend. Anything statistical or
end-to-end lives in the test modules themselves.
"""

from __future__ import annotations

import random

import pytest

from boltnet.dataset import BoltSample, Dataset
from boltnet.network import NetworkConfig, init_network

VALID_SAMPLE = dict(
    bolt_size=6.0,
    strength_grade=8.8,
    tightening_torque=10.0,
    head_torque=4.0,
    thread_torque=5.0,
    preload_force=8_000.0,
    load_capacity=100_000.0,
    mu_head=0.12,
    mu_thread=0.14,
)


def make_sample(**overrides) -> BoltSample:
    """A sample passing every validity rule, with chosen fields replaced."""
    fields = dict(VALID_SAMPLE)
    fields.update(overrides)
    return BoltSample(**fields)


def make_dataset(n: int = 10, seed: int = 0) -> Dataset:
    """n distinct valid samples with mild variation in every feature."""
    rng = random.Random(seed)
    samples = []
    labels = []
    for i in range(n):
        scale = 1.0 + 0.1 * rng.random()
        samples.append(
            make_sample(
                bolt_size=6.0 if i % 2 == 0 else 10.0,
                strength_grade=8.8 if i % 2 == 0 else 10.9,
                tightening_torque=10.0 * scale,
                head_torque=4.0 * scale,
                thread_torque=5.0 * scale,
                preload_force=8_000.0 * scale,
                load_capacity=100_000.0 * scale,
                mu_head=0.10 + 0.01 * rng.random(),
                mu_thread=0.13 + 0.01 * rng.random(),
            )
        )
        labels.append("even" if i % 2 == 0 else "odd")
    return Dataset(samples, preload_unit="N", load_unit="N", group_labels=labels)


@pytest.fixture
def small_net():
    """A freshly initialized default-shape network, fixed seed."""
    return init_network(NetworkConfig(seed=7))
