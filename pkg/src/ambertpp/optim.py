"""Adam optimizer with the standard bias-corrected update.

Defaults follow the usual recommendation (lr 1e-3, betas 0.9/0.999,
eps 1e-8); there is deliberately no learning-rate decay.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .autodiff import Tensor


@dataclass
class AdamState:
    """Per-parameter first/second moment accumulators and step counter."""

    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    m: dict = field(default_factory=dict)
    v: dict = field(default_factory=dict)


def adam_step(
    params: dict[str, np.ndarray],
    grads: dict[str, np.ndarray],
    state: AdamState,
) -> tuple[dict[str, np.ndarray], AdamState]:
    """One bias-corrected Adam update; returns new parameter arrays and state.

    Parameters with a zero gradient are unchanged (the update direction is
    m_hat / (sqrt(v_hat) + eps), which vanishes with the moments).
    """
    state.step += 1
    t = state.step
    new_params = {}
    for name, value in params.items():
        g = grads[name]
        m = state.m.get(name)
        v = state.v.get(name)
        if m is None:
            m = np.zeros_like(value)
            v = np.zeros_like(value)
        m = state.beta1 * m + (1.0 - state.beta1) * g
        v = state.beta2 * v + (1.0 - state.beta2) * g * g
        state.m[name] = m
        state.v[name] = v
        m_hat = m / (1.0 - state.beta1**t)
        v_hat = v / (1.0 - state.beta2**t)
        new_params[name] = value - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)
    return new_params, state


class Adam:
    """Stateful wrapper applying :func:`adam_step` to a dict of Tensors."""

    def __init__(self, params: dict[str, Tensor], lr: float = 1e-3,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.params = params
        self.state = AdamState(lr=lr, beta1=beta1, beta2=beta2, eps=eps)

    def step(self) -> None:
        values = {n: p.data for n, p in self.params.items()}
        grads = {
            n: (p.grad if p.grad is not None else np.zeros_like(p.data))
            for n, p in self.params.items()
        }
        new_values, _ = adam_step(values, grads, self.state)
        for name, p in self.params.items():
            p.data = new_values[name]

    def zero_grad(self) -> None:
        for p in self.params.values():
            p.grad = None
