"""Feed-forward network: topology, initialization, forward and backward passes.

The pipeline's network takes the six joint features, passes them through two
hidden layers, and emits the three predicted quantities. The forward pass
records pre-activations and activations so the backward pass can compute
exact gradients by the chain rule.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass

from .errors import NumericError, ShapeError, ValidationError
from .linalg import Matrix, Vector, matvec, matvec_t, outer

N_INPUT_FEATURES = 6
N_OUTPUT_FEATURES = 3

HIDDEN_ACTIVATIONS = ("sigmoid", "relu")
OUTPUT_ACTIVATIONS = ("sigmoid", "identity")
INIT_METHODS = ("random", "xavier", "he")
BIAS_INITS = ("zero", "random")

# conventional pairing of weight init with hidden activation
_PREFERRED_INIT = {"xavier": "sigmoid", "he": "relu"}


@dataclass
class NetworkConfig:
    """Topology and initialization choices for a joint-parameter network."""

    hidden_sizes: tuple[int, int] = (6, 3)
    hidden_activation: str = "sigmoid"
    output_activation: str = "sigmoid"
    init_method: str = "xavier"
    bias_init: str = "zero"
    seed: int = 0

    def __post_init__(self) -> None:
        self.hidden_sizes = tuple(int(n) for n in self.hidden_sizes)
        if len(self.hidden_sizes) != 2:
            raise ValidationError(
                f"exactly two hidden layers are supported, got {len(self.hidden_sizes)}"
            )
        if any(n < 1 for n in self.hidden_sizes):
            raise ValidationError(f"hidden sizes must be positive, got {self.hidden_sizes}")
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
                f"init_method must be one of {list(INIT_METHODS)}, got {self.init_method!r}"
            )
        if self.bias_init not in BIAS_INITS:
            raise ValidationError(
                f"bias_init must be one of {list(BIAS_INITS)}, got {self.bias_init!r}"
            )

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return (N_INPUT_FEATURES, *self.hidden_sizes, N_OUTPUT_FEATURES)


@dataclass
class Network:
    """Weights, biases, and activation choices; the mutable learnable state."""

    weights: list[Matrix]
    biases: list[Vector]
    hidden_activation: str = "sigmoid"
    output_activation: str = "sigmoid"
    config: NetworkConfig | None = None

    def __post_init__(self) -> None:
        if not self.weights:
            raise ShapeError("network needs at least one layer")
        if len(self.weights) != len(self.biases):
            raise ShapeError(
                f"{len(self.weights)} weight matrices but {len(self.biases)} bias vectors"
            )
        for l, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.rows != len(b):
                raise ShapeError(
                    f"layer {l}: weight matrix has {w.rows} rows, bias has {len(b)}"
                )
            if l > 0 and w.cols != self.weights[l - 1].rows:
                raise ShapeError(
                    f"layer {l}: expects {w.cols} inputs, previous layer emits "
                    f"{self.weights[l - 1].rows}"
                )

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return (self.weights[0].cols, *(w.rows for w in self.weights))


@dataclass
class ForwardTrace:
    """Per-layer values recorded by forward for use in backward."""

    pre_activations: list[Vector]
    activations: list[Vector]


def _sigmoid(z: float) -> float:
    # stable in both tails; clamp keeps the output strictly inside (0, 1)
    if z >= 0.0:
        s = 1.0 / (1.0 + math.exp(-z))
    else:
        e = math.exp(z)
        s = e / (1.0 + e)
    if s <= 0.0:
        return math.nextafter(0.0, 1.0)
    if s >= 1.0:
        return math.nextafter(1.0, 0.0)
    return s


def activation(kind: str, z: float) -> float:
    """Scalar activation value."""
    if kind == "sigmoid":
        return _sigmoid(z)
    if kind == "relu":
        return z if z > 0.0 else 0.0
    if kind == "identity":
        return z
    raise ValidationError(f"unknown activation {kind!r}")


def activation_grad(kind: str, z: float) -> float:
    """Derivative of the activation at pre-activation z."""
    if kind == "sigmoid":
        s = _sigmoid(z)
        return s * (1.0 - s)
    if kind == "relu":
        return 1.0 if z > 0.0 else 0.0
    if kind == "identity":
        return 1.0
    raise ValidationError(f"unknown activation {kind!r}")


def build_layers(
    layer_sizes, init_method: str, bias_init: str, rng: random.Random
) -> tuple[list[Matrix], list[Vector]]:
    """Draw initial weights and biases for consecutive layer pairs.

    random: uniform on [-1/sqrt(fan_in), 1/sqrt(fan_in)]
    xavier: uniform on [-sqrt(6/(fan_in+fan_out)), sqrt(6/(fan_in+fan_out))]
    he:     normal with standard deviation sqrt(2/fan_in)

    Biases start at zero or uniform on [-0.1, 0.1].
    """
    sizes = [int(n) for n in layer_sizes]
    if len(sizes) < 2:
        raise ValidationError("layer_sizes must name at least input and output")
    if any(n < 1 for n in sizes):
        raise ValidationError(f"layer sizes must be positive, got {sizes}")
    if init_method not in INIT_METHODS:
        raise ValidationError(
            f"init_method must be one of {list(INIT_METHODS)}, got {init_method!r}"
        )
    if bias_init not in BIAS_INITS:
        raise ValidationError(
            f"bias_init must be one of {list(BIAS_INITS)}, got {bias_init!r}"
        )
    weights: list[Matrix] = []
    biases: list[Vector] = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        if init_method == "random":
            bound = 1.0 / math.sqrt(fan_in)
            values = [rng.uniform(-bound, bound) for _ in range(fan_out * fan_in)]
        elif init_method == "xavier":
            bound = math.sqrt(6.0 / (fan_in + fan_out))
            values = [rng.uniform(-bound, bound) for _ in range(fan_out * fan_in)]
        else:
            std = math.sqrt(2.0 / fan_in)
            values = [rng.gauss(0.0, std) for _ in range(fan_out * fan_in)]
        weights.append(Matrix(fan_out, fan_in, values))
        if bias_init == "zero":
            biases.append(Vector.zeros(fan_out))
        else:
            biases.append(Vector([rng.uniform(-0.1, 0.1) for _ in range(fan_out)]))
    return weights, biases


def warn_on_unconventional_pairing(init_method: str, hidden_activation: str) -> None:
    expected = _PREFERRED_INIT.get(init_method)
    if expected is not None and hidden_activation != expected:
        warnings.warn(
            f"{init_method} initialization is conventionally paired with "
            f"{expected} hidden layers, not {hidden_activation}",
            stacklevel=3,
        )


def init_network(config: NetworkConfig) -> Network:
    """Build a network with freshly drawn parameters from the config seed."""
    warn_on_unconventional_pairing(config.init_method, config.hidden_activation)
    rng = random.Random(config.seed)
    weights, biases = build_layers(
        config.layer_sizes, config.init_method, config.bias_init, rng
    )
    return Network(
        weights, biases, config.hidden_activation, config.output_activation, config
    )


def forward(net: Network, x) -> tuple[Vector, ForwardTrace]:
    """Run one input through the network, recording intermediates.

    Raises a numeric error naming the layer if any pre-activation is
    non-finite.
    """
    a = x if isinstance(x, Vector) else Vector([float(v) for v in x])
    if len(a) != net.weights[0].cols:
        raise ShapeError(
            f"input has {len(a)} features, network expects {net.weights[0].cols}"
        )
    last = len(net.weights) - 1
    pre: list[Vector] = []
    acts: list[Vector] = [a]
    for l, (w, b) in enumerate(zip(net.weights, net.biases)):
        z = matvec(w, a)
        zd = z.data
        bd = b.data
        for i in range(len(zd)):
            zd[i] += bd[i]
            if not math.isfinite(zd[i]):
                raise NumericError(f"non-finite pre-activation in layer {l}")
        kind = net.output_activation if l == last else net.hidden_activation
        a = Vector([activation(kind, v) for v in zd])
        pre.append(z)
        acts.append(a)
    return a, ForwardTrace(pre, acts)


def predict_one(net: Network, x) -> Vector:
    """Forward pass without keeping the trace."""
    out, _ = forward(net, x)
    return out


def backward(net: Network, trace: ForwardTrace, dl_dy) -> tuple[list[Matrix], list[Vector]]:
    """Backpropagate a loss gradient through the recorded trace.

    dl_dy is the gradient of the loss with respect to the network output.
    Returns per-layer weight and bias gradients shaped exactly like the
    network parameters. Neither the network nor the trace is modified.
    """
    grad = dl_dy if isinstance(dl_dy, Vector) else Vector([float(v) for v in dl_dy])
    n_layers = len(net.weights)
    if len(trace.pre_activations) != n_layers or len(trace.activations) != n_layers + 1:
        raise ShapeError("trace does not match network depth")
    if len(grad) != len(trace.pre_activations[-1]):
        raise ShapeError(
            f"loss gradient has {len(grad)} components, output layer has "
            f"{len(trace.pre_activations[-1])}"
        )
    d_weights: list[Matrix] = [None] * n_layers  # type: ignore[list-item]
    d_biases: list[Vector] = [None] * n_layers  # type: ignore[list-item]
    z_last = trace.pre_activations[-1]
    delta = Vector(
        [
            g * activation_grad(net.output_activation, z)
            for g, z in zip(grad.data, z_last.data)
        ]
    )
    for l in range(n_layers - 1, -1, -1):
        d_weights[l] = outer(delta, trace.activations[l])
        d_biases[l] = delta.copy()
        if l > 0:
            back = matvec_t(net.weights[l], delta)
            z_prev = trace.pre_activations[l - 1]
            delta = Vector(
                [
                    bv * activation_grad(net.hidden_activation, z)
                    for bv, z in zip(back.data, z_prev.data)
                ]
            )
    return d_weights, d_biases
