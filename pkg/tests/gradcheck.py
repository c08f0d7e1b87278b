"""Finite-difference gradient checking shared by the numeric test modules."""
import numpy as np

from jamlab.nn import tape as T

EPSILON = 1e-4
REL_TOL = 1e-3


def central_difference(fn, arr: np.ndarray) -> np.ndarray:
    """Numeric gradient of scalar fn with respect to every entry of arr."""
    grad = np.zeros_like(arr, dtype=np.float64)
    flat = arr.reshape(-1)
    out = grad.reshape(-1)
    for i in range(flat.size):
        original = flat[i]
        flat[i] = original + EPSILON
        upper = fn()
        flat[i] = original - EPSILON
        lower = fn()
        flat[i] = original
        out[i] = (upper - lower) / (2.0 * EPSILON)
    return grad


def max_relative_error(build, params: dict) -> float:
    """Worst-case relative gradient error over all parameter arrays.

    ``build(tape, nodes)`` maps {name: Node} to a scalar loss Node; the
    nodes wrap the arrays in ``params`` so finite differences can perturb
    them in place.
    """
    nodes = {name: T.parameter(arr) for name, arr in params.items()}

    tape = T.Tape()
    loss = build(tape, nodes)
    tape.backward(loss)
    analytic = {name: np.array(node.grad, dtype=np.float64)
                for name, node in nodes.items()}

    def loss_value() -> float:
        probe = {name: T.parameter(arr) for name, arr in params.items()}
        return float(build(T.Tape(), probe).value)

    worst = 0.0
    for name, arr in params.items():
        numeric = central_difference(loss_value, arr)
        scale = np.maximum(np.abs(analytic[name]) + np.abs(numeric), 1e-8)
        worst = max(worst, float(np.max(np.abs(analytic[name] - numeric) / scale)))
    return worst
