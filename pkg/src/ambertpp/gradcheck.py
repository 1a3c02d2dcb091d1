"""Central finite-difference gradient checking for autodiff graphs."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .autodiff import Tensor


def finite_difference_grad(
    fn: Callable[[], Tensor],
    param: Tensor,
    h: float = 1e-5,
    indices: Sequence[tuple] | None = None,
) -> np.ndarray:
    """Central-difference gradient of scalar ``fn()`` w.r.t. entries of ``param``.

    ``fn`` must re-run the forward pass reading ``param.data`` in place. When
    ``indices`` is given only those entries are perturbed (others return 0).
    """
    flat = param.data.ravel()
    grad = np.zeros_like(flat)
    if indices is None:
        idx_list = list(range(flat.size))
    else:
        idx_list = [int(np.ravel_multi_index(i, param.data.shape)) for i in indices]
    for i in idx_list:
        orig = flat[i]
        flat[i] = orig + h
        f_plus = fn().item()
        flat[i] = orig - h
        f_minus = fn().item()
        flat[i] = orig
        grad[i] = (f_plus - f_minus) / (2.0 * h)
    return grad.reshape(param.data.shape)


def max_relative_error(
    analytic: np.ndarray, numeric: np.ndarray, abs_floor: float = 1e-6
) -> float:
    """Worst-case |a - n| / max(|a|, |n|, abs_floor) over all entries."""
    denom = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), abs_floor)
    return float(np.max(np.abs(analytic - numeric) / denom))


def check_gradients(
    fn: Callable[[], Tensor],
    params: dict[str, Tensor],
    h: float = 1e-5,
    rtol: float = 1e-4,
    abs_floor: float = 1e-6,
    max_entries_per_param: int | None = None,
    rng: np.random.Generator | None = None,
) -> dict[str, float]:
    """Compare backward() gradients of ``fn`` against central differences.

    Returns the worst relative error per parameter name and raises
    AssertionError when any exceeds ``rtol``. ``max_entries_per_param``
    spot-checks a random subset of entries (for large models).
    """
    for p in params.values():
        p.grad = None
    loss = fn()
    loss.backward()
    analytic = {
        n: (p.grad.copy() if p.grad is not None else np.zeros_like(p.data))
        for n, p in params.items()
    }
    errors = {}
    for name, p in params.items():
        if max_entries_per_param is not None and p.size > max_entries_per_param:
            r = rng if rng is not None else np.random.default_rng(0)
            chosen = r.choice(p.size, size=max_entries_per_param, replace=False)
            indices = [np.unravel_index(i, p.data.shape) for i in chosen]
        else:
            indices = None
        numeric = finite_difference_grad(fn, p, h=h, indices=indices)
        if indices is not None:
            sel = tuple(np.array([ix[d] for ix in indices]) for d in range(p.data.ndim))
            err = max_relative_error(analytic[name][sel], numeric[sel], abs_floor)
        else:
            err = max_relative_error(analytic[name], numeric, abs_floor)
        errors[name] = err
        if err > rtol:
            raise AssertionError(f"gradient check failed for {name}: rel err {err:.2e}")
    return errors
