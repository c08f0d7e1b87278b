"""Adam optimizer and the shared minibatch training loop."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tape import Node, Tape


class NonFiniteLossError(RuntimeError):
    """Training produced a non-finite loss; names the first bad tensor."""

    def __init__(self, tensor_name: str):
        self.tensor_name = tensor_name
        super().__init__(f"non-finite values in {tensor_name}")


class Adam:
    """Adaptive moment estimation over a fixed parameter list."""

    def __init__(self, params, lr: float = 1e-3, beta1: float = 0.9,
                 beta2: float = 0.999, eps: float = 1e-8):
        self.params = list(params)
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self._m = [np.zeros_like(p.value) for p in self.params]
        self._v = [np.zeros_like(p.value) for p in self.params]

    def step(self):
        self.t += 1
        bc1 = 1.0 - self.beta1 ** self.t
        bc2 = 1.0 - self.beta2 ** self.t
        for p, m, v in zip(self.params, self._m, self._v):
            g = p.grad if p.grad is not None else np.zeros_like(p.value)
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p.value -= self.lr * (m / bc1) / (np.sqrt(v / bc2) + self.eps)

    def zero_grad(self):
        for p in self.params:
            p.grad = None


def _check_finite(loss_value: float, named_params) -> None:
    if math.isfinite(loss_value):
        return
    for name, p in named_params:
        if not np.all(np.isfinite(p.value)):
            raise NonFiniteLossError(name)
    raise NonFiniteLossError("loss")


def train_step(model, optimizer: Adam, batch, beta: float) -> dict:
    """One gradient step on loss = reconstruction + beta * KL (model-defined).

    The model supplies ``loss(tape, batch, beta) -> (Node, breakdown)`` and
    ``named_params()``. Returns the loss breakdown as plain floats.
    """
    tape = Tape()
    loss, breakdown = model.loss(tape, batch, beta)
    _check_finite(float(loss.value), model.named_params())
    optimizer.zero_grad()
    tape.backward(loss)
    optimizer.step()
    return breakdown


@dataclass
class TrainConfig:
    epochs: int
    batch_size: int
    learning_rate: float = 1e-3
    beta: float = 0.2
    # KL weight ramps linearly from zero over this fraction of all steps.
    warmup_frac: float = 0.2


def fit(model, examples: list, config: TrainConfig, rng: np.random.Generator,
        epoch_callback=None) -> list:
    """Minibatch training with linear KL warm-up; returns per-epoch logs."""
    n = len(examples)
    optimizer = Adam(
        [p for _, p in model.named_params()], lr=config.learning_rate
    )
    steps_per_epoch = max(1, math.ceil(n / config.batch_size))
    total_steps = config.epochs * steps_per_epoch
    warmup_steps = max(1, int(round(config.warmup_frac * total_steps)))
    log = []
    step = 0
    for epoch in range(config.epochs):
        order = rng.permutation(n)
        sums: dict = {}
        for start in range(0, n, config.batch_size):
            batch = [examples[i] for i in order[start : start + config.batch_size]]
            beta = config.beta * min(1.0, step / warmup_steps) if config.warmup_frac > 0 else config.beta
            breakdown = train_step(model, optimizer, model.make_batch(batch, rng), beta)
            step += 1
            for key, value in breakdown.items():
                sums[key] = sums.get(key, 0.0) + value
        entry = {"epoch": epoch, **{k: v / steps_per_epoch for k, v in sums.items()}}
        log.append(entry)
        if epoch_callback is not None:
            epoch_callback(entry)
    return log
