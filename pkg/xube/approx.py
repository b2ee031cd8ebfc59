#--------------------------------------------------------------------------------------------------#
# approx.py                                                                                        #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Function approximators for heuristic-v / heuristic-q values: a numpy MLP trained with            #
# backpropagation (sgd or adam), an exact tabular approximator, and immutable snapshots used as    #
# target networks                                                                                  #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.20: 1st coding                                                                    #
# update 2026.10.23: per-action masking for q heads                                                #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from xube.errors import ConfigError

ACTIVATIONS = ("relu",)

#--------------------------------------------------------------------------------------------------#
# Specs & optimizer state                                                                          #
#--------------------------------------------------------------------------------------------------#
@dataclass(frozen=True)
class MLPSpec:
    layer_sizes: tuple[int, ...]
    activation: str = "relu"

    def __post_init__(self):
        object.__setattr__(self, "layer_sizes", tuple(int(s) for s in self.layer_sizes))
        if len(self.layer_sizes) < 2:
            raise ConfigError(f"an MLP needs at least 2 layer sizes, got {self.layer_sizes}")
        if any(s < 1 for s in self.layer_sizes):
            raise ConfigError(f"layer sizes must be >= 1, got {self.layer_sizes}")
        if self.activation not in ACTIVATIONS:
            raise ConfigError(f"unsupported activation {self.activation!r}")

    @property
    def in_dim(self) -> int:
        return self.layer_sizes[0]

    @property
    def out_dim(self) -> int:
        return self.layer_sizes[-1]

    @property
    def shapes(self) -> list[tuple[int, int]]:
        return list(zip(self.layer_sizes[:-1], self.layer_sizes[1:]))

    @property
    def num_params(self) -> int:
        return sum(i * o + o for i, o in self.shapes)


@dataclass
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8


def _unflatten(spec: MLPSpec, params: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    """Views (W, b) per layer; W is (in, out) row-major, followed by b."""
    layers, pos = [], 0
    for i, o in spec.shapes:
        w = params[pos:pos + i * o].reshape(i, o)
        pos += i * o
        b = params[pos:pos + o]
        pos += o
        layers.append((w, b))
    return layers


def _forward(spec: MLPSpec, params: np.ndarray, inputs: np.ndarray) -> list[np.ndarray]:
    inputs = np.asarray(inputs)
    if inputs.ndim != 2 or inputs.shape[1] != spec.in_dim:
        raise ValueError(f"expected input of shape (N, {spec.in_dim}), got {inputs.shape}")
    acts = [inputs.astype(params.dtype, copy=False)]
    layers = _unflatten(spec, params)
    for li, (w, b) in enumerate(layers):
        z = acts[-1] @ w + b
        if li < len(layers) - 1:
            z = np.maximum(z, 0)
        acts.append(z)
    return acts


#--------------------------------------------------------------------------------------------------#
# Evaluators                                                                                       #
#--------------------------------------------------------------------------------------------------#
class Evaluator(ABC):
    """Anything mapping an encoded batch (N, in_dim) to values (N, out_dim)."""
    out_dim: int

    @abstractmethod
    def evaluate(self, inputs: np.ndarray) -> np.ndarray:
        ...


@dataclass(frozen=True)
class ZeroTarget(Evaluator):
    """The target network before the first swap: returns 0 for every input."""
    out_dim: int = 1

    def evaluate(self, inputs):
        return np.zeros((len(inputs), self.out_dim))


@dataclass(frozen=True)
class MLPSnapshot(Evaluator):
    spec: MLPSpec
    params: np.ndarray = field(repr=False)

    @property
    def out_dim(self):
        return self.spec.out_dim

    def evaluate(self, inputs):
        return _forward(self.spec, self.params, inputs)[-1]


@dataclass(frozen=True)
class TableSnapshot(Evaluator):
    out_dim: int
    table: dict = field(repr=False)

    def evaluate(self, inputs):
        out = np.zeros((len(inputs), self.out_dim))
        for i, row in enumerate(np.asarray(inputs, dtype=np.float32)):
            vals = self.table.get(row.tobytes())
            if vals is not None:
                out[i] = vals
        return out


#--------------------------------------------------------------------------------------------------#
# Approximators                                                                                    #
#--------------------------------------------------------------------------------------------------#
class Approximator(Evaluator):
    kind: str = ""

    @abstractmethod
    def forward_batch(self, inputs: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def train_batch(self, inputs: np.ndarray, targets: np.ndarray, mask: np.ndarray | None,
                    lr: float) -> float:
        """One update on a batch. Returns the batch loss before the update."""

    @abstractmethod
    def snapshot(self) -> Evaluator:
        ...

    def evaluate(self, inputs):
        return self.forward_batch(inputs)


class MLP(Approximator):
    """
    Feedforward network with rectifier hidden layers and a linear output layer

    Parameters
    ----------
    spec: `MLPSpec`
        layer sizes, input first. Output size is 1 (heuristic-v) or |A| (heuristic-q)
    rng: `numpy.random.Generator` or None
        initializer; weights uniform in +-sqrt(6/(fan_in+fan_out)), biases 0. None gives zeros
    optimizer: `str`
        "adam" or "sgd". Default is "adam"
    dtype: numpy dtype
        parameter dtype. Default is float32
    """
    kind = "mlp"

    def __init__(self, spec: MLPSpec, rng: np.random.Generator | None = None, optimizer: str = "adam",
                 dtype=np.float32, params: np.ndarray | None = None):
        if optimizer not in ("adam", "sgd"):
            raise ConfigError(f"unknown optimizer {optimizer!r}")
        self.spec = spec
        self.optimizer = optimizer
        if params is not None:
            if params.shape != (spec.num_params,):
                raise ValueError(f"expected {spec.num_params} parameters, got {params.shape}")
            self.params = np.array(params, dtype=dtype)
        else:
            self.params = np.zeros(spec.num_params, dtype=dtype)
            if rng is not None:
                for w, _ in _unflatten(spec, self.params):
                    limit = np.sqrt(6.0 / (w.shape[0] + w.shape[1]))
                    w[...] = rng.uniform(-limit, limit, size=w.shape)
        self.adam = AdamState(m=np.zeros_like(self.params), v=np.zeros_like(self.params))

    @property
    def out_dim(self):
        return self.spec.out_dim

    def forward_batch(self, inputs):
        return _forward(self.spec, self.params, inputs)[-1]

    def loss_and_grad(self, inputs, targets, mask=None):
        """
        Mean squared error and its exact gradient

        Parameters
        ----------
        inputs: `np.ndarray`
            (N, in_dim)
        targets: `np.ndarray`
            (N,) or (N, out_dim)
        mask: `np.ndarray` or None
            per-row action index (N,) or boolean (N, out_dim) selecting the trained outputs

        Returns
        -------
        loss: `float`
            (1/N) * sum of squared errors over the selected outputs
        grad: `np.ndarray`
            float64 gradient, same layout as the parameter vector
        """
        acts = _forward(self.spec, self.params, inputs)
        preds = acts[-1].astype(np.float64)
        num = preds.shape[0]
        sel = _selector(mask, num, self.spec.out_dim)
        targets = np.asarray(targets, dtype=np.float64)
        if targets.ndim == 1:
            if targets.shape[0] != num:
                raise ValueError(f"{num} inputs but {targets.shape[0]} targets")
            targets = np.broadcast_to(targets[:, None], preds.shape)
        err = np.where(sel, preds - targets, 0.0)
        loss = float(np.sum(err ** 2) / num)

        grads = []
        delta = 2.0 * err / num
        layers = _unflatten(self.spec, self.params)
        for li in range(len(layers) - 1, -1, -1):
            w, _ = layers[li]
            a_prev = acts[li].astype(np.float64)
            grads.append(np.concatenate([(a_prev.T @ delta).ravel(), delta.sum(axis=0)]))
            if li > 0:
                delta = (delta @ w.T.astype(np.float64)) * (acts[li] > 0)
        return loss, np.concatenate(grads[::-1])

    def sgd_step(self, grad, lr):
        self.params -= (lr * grad).astype(self.params.dtype)

    def adam_step(self, grad, lr, beta1=0.9, beta2=0.999, eps=1e-8, state=None):
        st = state if state is not None else self.adam
        st.beta1, st.beta2, st.eps = beta1, beta2, eps
        st.t += 1
        st.m[...] = beta1 * st.m + (1 - beta1) * grad
        st.v[...] = beta2 * st.v + (1 - beta2) * grad * grad
        m_hat = st.m / (1 - beta1 ** st.t)
        v_hat = st.v / (1 - beta2 ** st.t)
        self.params -= (lr * m_hat / (np.sqrt(v_hat) + eps)).astype(self.params.dtype)
        return st

    def train_batch(self, inputs, targets, mask, lr):
        loss, grad = self.loss_and_grad(inputs, targets, mask)
        if self.optimizer == "adam":
            self.adam_step(grad, lr, self.adam.beta1, self.adam.beta2, self.adam.eps)
        else:
            self.sgd_step(grad, lr)
        return loss

    def snapshot(self):
        params = self.params.copy()
        params.flags.writeable = False
        return MLPSnapshot(self.spec, params)


class TabularApprox(Approximator):
    """Exact map from encoded input to value(s). Unseen inputs evaluate to 0."""
    kind = "table"

    def __init__(self, out_dim: int = 1):
        self.out_dim = out_dim
        self.table: dict[bytes, np.ndarray] = {}

    def forward_batch(self, inputs):
        return TableSnapshot(self.out_dim, self.table).evaluate(inputs)

    def train_batch(self, inputs, targets, mask, lr):
        inputs = np.asarray(inputs, dtype=np.float32)
        targets = np.asarray(targets, dtype=np.float64)
        sel = _selector(mask, len(inputs), self.out_dim)
        sq_err = 0.0
        for row, target, row_sel in zip(inputs, targets, sel):
            vals = self.table.setdefault(row.tobytes(), np.zeros(self.out_dim))
            err = np.where(row_sel, target - vals, 0.0)
            sq_err += float(np.sum(err ** 2))
            vals += lr * err
        return sq_err / max(len(inputs), 1)

    def snapshot(self):
        return TableSnapshot(self.out_dim, {k: v.copy() for k, v in self.table.items()})


def _selector(mask, num: int, out_dim: int) -> np.ndarray:
    if mask is None:
        return np.ones((num, out_dim), dtype=bool)
    mask = np.asarray(mask)
    if mask.dtype == bool:
        if mask.shape != (num, out_dim):
            raise ValueError(f"boolean mask must have shape ({num}, {out_dim}), got {mask.shape}")
        return mask
    if mask.shape != (num,):
        raise ValueError(f"action-index mask must have shape ({num},), got {mask.shape}")
    return np.arange(out_dim)[None, :] == mask[:, None]


#--------------------------------------------------------------------------------------------------#
# Functional interface                                                                             #
#--------------------------------------------------------------------------------------------------#
def forward_batch(approx: Approximator, inputs: np.ndarray) -> np.ndarray:
    return approx.forward_batch(inputs)


def mse_loss_and_grad(approx: MLP, inputs, targets, mask=None):
    return approx.loss_and_grad(inputs, targets, mask)


def sgd_step(approx: MLP, grad: np.ndarray, lr: float) -> MLP:
    if lr <= 0:
        raise ConfigError(f"learning rate must be > 0, got {lr}")
    approx.sgd_step(grad, lr)
    return approx


def adam_step(approx: MLP, grad, lr, beta1=0.9, beta2=0.999, eps_adam=1e-8, state=None) -> MLP:
    if lr <= 0:
        raise ConfigError(f"learning rate must be > 0, got {lr}")
    approx.adam_step(grad, lr, beta1, beta2, eps_adam, state)
    return approx


def snapshot(approx: Approximator) -> Evaluator:
    return approx.snapshot()


def eval_snapshot(snap: Evaluator, inputs: np.ndarray) -> np.ndarray:
    return snap.evaluate(inputs)


def zero_target(out_dim: int = 1) -> ZeroTarget:
    return ZeroTarget(out_dim)
