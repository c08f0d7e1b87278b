"""Recurrent and dense building blocks on top of the op tape."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tape as T
from .tape import Node


def glorot(rng: np.random.Generator, fan_out: int, fan_in: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_out, fan_in))


@dataclass
class GruCell:
    """Gated recurrent unit parameters.

    Gate weights w_* are (hidden, input), recurrent u_* are (hidden, hidden),
    biases b_* are (hidden,). Update convention:
    h' = (1 - z) * h_prev + z * h~.
    """

    input_size: int
    hidden_size: int
    w_z: Node
    w_r: Node
    w_h: Node
    u_z: Node
    u_r: Node
    u_h: Node
    b_z: Node
    b_r: Node
    b_h: Node

    @classmethod
    def create(cls, rng: np.random.Generator, input_size: int, hidden_size: int) -> "GruCell":
        return cls(
            input_size=input_size,
            hidden_size=hidden_size,
            w_z=T.parameter(glorot(rng, hidden_size, input_size)),
            w_r=T.parameter(glorot(rng, hidden_size, input_size)),
            w_h=T.parameter(glorot(rng, hidden_size, input_size)),
            u_z=T.parameter(glorot(rng, hidden_size, hidden_size)),
            u_r=T.parameter(glorot(rng, hidden_size, hidden_size)),
            u_h=T.parameter(glorot(rng, hidden_size, hidden_size)),
            b_z=T.parameter(np.zeros(hidden_size)),
            b_r=T.parameter(np.zeros(hidden_size)),
            b_h=T.parameter(np.zeros(hidden_size)),
        )

    def named(self, prefix: str):
        for gate in ("z", "r", "h"):
            yield f"{prefix}.w_{gate}", getattr(self, f"w_{gate}")
            yield f"{prefix}.u_{gate}", getattr(self, f"u_{gate}")
            yield f"{prefix}.b_{gate}", getattr(self, f"b_{gate}")

    def check_dims(self, x_dim: int, h_dim: int):
        if x_dim != self.input_size:
            raise ValueError(f"input dim {x_dim} != cell input size {self.input_size}")
        if h_dim != self.hidden_size:
            raise ValueError(f"hidden dim {h_dim} != cell hidden size {self.hidden_size}")

    def input_projections(self, tape, xs: Node):
        """W x + b for all gates; xs is (N, I) or flattened (T*B, I)."""
        return (
            T.affine(tape, xs, self.w_z, self.b_z),
            T.affine(tape, xs, self.w_r, self.b_r),
            T.affine(tape, xs, self.w_h, self.b_h),
        )


@dataclass
class DenseLayer:
    w: Node  # (out, in)
    b: Node  # (out,)

    @classmethod
    def create(cls, rng: np.random.Generator, out_size: int, in_size: int) -> "DenseLayer":
        return cls(w=T.parameter(glorot(rng, out_size, in_size)), b=T.parameter(np.zeros(out_size)))

    def named(self, prefix: str):
        yield f"{prefix}.w", self.w
        yield f"{prefix}.b", self.b

    def __call__(self, tape, x: Node) -> Node:
        return T.affine(tape, x, self.w, self.b)


def gru_step(cell: GruCell, x_t: np.ndarray, h_prev: np.ndarray) -> np.ndarray:
    """One GRU update on plain arrays; x_t (I,) or (B, I), h_prev matching."""
    x = np.atleast_2d(np.asarray(x_t, dtype=np.float64))
    h = np.atleast_2d(np.asarray(h_prev, dtype=np.float64))
    cell.check_dims(x.shape[1], h.shape[1])
    pre = cell.input_projections(None, T.constant(x))
    out = T.gru_step_pre(None, pre[0], pre[1], pre[2], None, T.constant(h),
                         cell.u_z, cell.u_r, cell.u_h)
    return out.value[0] if np.ndim(x_t) == 1 else out.value


def gru_sequence(tape, cell: GruCell, pre, h0: Node):
    """Run the cell over T steps of precomputed projections (T, B, H)."""
    steps = pre[0].value.shape[0]
    states = []
    h = h0
    for t in range(steps):
        h = T.gru_step_pre(tape, pre[0], pre[1], pre[2], t, h,
                           cell.u_z, cell.u_r, cell.u_h)
        states.append(h)
    return states


def sequence_projections(tape, cell: GruCell, xs: np.ndarray):
    """Precompute per-step gate inputs for xs (T, B, I) -> three (T, B, H)."""
    steps, batch, dim = xs.shape
    flat = T.constant(xs.reshape(steps * batch, dim))
    return tuple(
        T.reshape(tape, p, (steps, batch, cell.hidden_size))
        for p in cell.input_projections(tape, flat)
    )


def gru_run(tape, cell: GruCell, xs: np.ndarray, h0: Node | None = None, reverse: bool = False):
    """Full pass over xs (T, B, I); returns per-step states in input order."""
    if xs.shape[0] < 1:
        raise ValueError("sequence must have at least one step")
    cell.check_dims(xs.shape[2], cell.hidden_size)
    if reverse:
        xs = xs[::-1]
    pre = sequence_projections(tape, cell, np.ascontiguousarray(xs))
    if h0 is None:
        h0 = T.constant(np.zeros((xs.shape[1], cell.hidden_size)))
    states = gru_sequence(tape, cell, pre, h0)
    return states[::-1] if reverse else states


def decoder_gru_run(tape, cell: GruCell, positions: np.ndarray, z: Node, h0: Node):
    """Decoder pass where step t's input is [positions[t] ; z].

    positions is (T, P) and shared across the batch; z is (B, N) and
    broadcast over time, so gradients into z sum over all steps.
    """
    steps, p_dim = positions.shape
    batch, z_dim = z.value.shape
    cell.check_dims(p_dim + z_dim, cell.hidden_size)
    tiled = np.broadcast_to(positions[:, None, :], (steps, batch, p_dim))
    xs = T.concat(tape, [T.constant(np.ascontiguousarray(tiled)),
                         T.stack_steps(tape, [z] * steps)], axis=2)
    flat = T.reshape(tape, xs, (steps * batch, p_dim + z_dim))
    pre = tuple(
        T.reshape(tape, p, (steps, batch, cell.hidden_size))
        for p in cell.input_projections(tape, flat)
    )
    return gru_sequence(tape, cell, pre, h0)


def bgru_encode(tape, cell_fwd: GruCell, cell_bwd: GruCell, xs: np.ndarray) -> Node:
    """Concatenated final states of a forward and a backward pass over xs.

    xs is (T, B, I); output is (B, 2H) = [h_fwd_T ; h_bwd_1].
    """
    fwd = gru_run(tape, cell_fwd, xs)
    bwd = gru_run(tape, cell_bwd, xs, reverse=True)
    return T.concat(tape, [fwd[-1], bwd[0]], axis=1)


def bgru_states(tape, cell_fwd: GruCell, cell_bwd: GruCell, xs: np.ndarray):
    """Per-step concatenated states [h_fwd_t ; h_bwd_t], each (B, 2H)."""
    fwd = gru_run(tape, cell_fwd, xs)
    bwd = gru_run(tape, cell_bwd, xs, reverse=True)
    return [T.concat(tape, [f, b], axis=1) for f, b in zip(fwd, bwd)]


# ---------------------------------------------------------------------------
# Plain-array forward ops
# ---------------------------------------------------------------------------

def sigmoid(x):
    return T.sigmoid_values(np.asarray(x, dtype=np.float64))


def softmax(x):
    return T.softmax_values(np.asarray(x, dtype=np.float64))


_ACTIVATIONS = {
    "identity": lambda y: y,
    "sigmoid": sigmoid,
    "tanh": np.tanh,
    "softmax": softmax,
}


def dense(weights, bias, x, activation: str = "identity"):
    """activation(W x + b) on plain arrays; x is (I,) or (B, I)."""
    if activation not in _ACTIVATIONS:
        raise ValueError(f"unknown activation {activation!r}")
    w = np.asarray(weights, dtype=np.float64)
    b = np.asarray(bias, dtype=np.float64)
    xv = np.asarray(x, dtype=np.float64)
    if w.shape[1] != xv.shape[-1]:
        raise ValueError(f"weight columns {w.shape[1]} != input dim {xv.shape[-1]}")
    if w.shape[0] != b.shape[0]:
        raise ValueError(f"weight rows {w.shape[0]} != bias dim {b.shape[0]}")
    return _ACTIVATIONS[activation](xv @ w.T + b)


def sample_gaussian(mean, logvar, rng: np.random.Generator):
    """Reparameterized draw z = mean + exp(logvar/2) * eps, eps ~ N(0, I)."""
    m = np.asarray(mean, dtype=np.float64)
    lv = np.asarray(logvar, dtype=np.float64)
    if m.shape != lv.shape:
        raise ValueError(f"mean shape {m.shape} != logvar shape {lv.shape}")
    eps = rng.standard_normal(m.shape)
    return m + np.exp(0.5 * lv) * eps


def kl_divergence(mean, logvar) -> float:
    """Closed-form KL(N(mean, exp(logvar)) || N(0, I)) for one vector."""
    m = np.asarray(mean, dtype=np.float64)
    lv = np.asarray(logvar, dtype=np.float64)
    if m.shape != lv.shape:
        raise ValueError(f"mean shape {m.shape} != logvar shape {lv.shape}")
    # expm1 keeps exp(lv) - 1 - lv accurate (and nonnegative) near lv = 0.
    return float(0.5 * np.sum(np.expm1(lv) - lv + m * m))
