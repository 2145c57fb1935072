"""Elman simple recurrent network: forward pass, truncated backprop, text I/O."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

CONTEXT_RESET = 0.5
PARAMS = ("W_ih", "W_ch", "W_ho", "b_h", "b_o")


def sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * x))


@dataclass
class TrainConfig:
    learning_rate: float = 0.25
    momentum: float = 0.9
    epochs: int = 200
    seed: int = 0
    init_scale: float = 0.3

    def __post_init__(self):
        if not self.learning_rate >= 0:
            raise ValueError("learning_rate must be non-negative")
        if not 0 <= self.momentum < 1:
            raise ValueError("momentum must lie in [0, 1)")
        if self.epochs < 1:
            raise ValueError("epochs must be positive")
        if not self.init_scale > 0:
            raise ValueError("init_scale must be positive")


class SrnModel:
    """One Elman network. ``context`` holds the previous hidden state."""

    def __init__(self, n_in: int, n_hid: int, n_out: int):
        if min(n_in, n_hid, n_out) < 1:
            raise ValueError("layer sizes must be positive")
        self.n_in, self.n_hid, self.n_out = n_in, n_hid, n_out
        self.W_ih = np.zeros((n_hid, n_in))
        self.W_ch = np.zeros((n_hid, n_hid))
        self.W_ho = np.zeros((n_out, n_hid))
        self.b_h = np.zeros(n_hid)
        self.b_o = np.zeros(n_out)
        self.context = np.full(n_hid, CONTEXT_RESET)

    @classmethod
    def initialized(cls, n_in: int, n_hid: int, n_out: int,
                    rng: np.random.Generator, init_scale: float = 0.3) -> "SrnModel":
        m = cls(n_in, n_hid, n_out)
        for name in PARAMS:
            arr = getattr(m, name)
            setattr(m, name, rng.uniform(-init_scale, init_scale, size=arr.shape))
        return m

    @property
    def sizes(self) -> tuple[int, int, int]:
        return self.n_in, self.n_hid, self.n_out

    def __repr__(self) -> str:
        return "SrnModel(%d, %d, %d)" % self.sizes

    def copy(self) -> "SrnModel":
        m = SrnModel(*self.sizes)
        for name in PARAMS + ("context",):
            setattr(m, name, getattr(self, name).copy())
        return m

    def params(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in PARAMS}

    def reset_context(self) -> "SrnModel":
        self.context = np.full(self.n_hid, CONTEXT_RESET)
        return self

    def _check_input(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n_in,):
            raise ValueError(f"input has shape {x.shape}, expected ({self.n_in},)")
        if not np.all(np.isfinite(x)):
            raise ValueError("input contains non-finite values")
        return x

    def activate(self, x, context=None) -> tuple[np.ndarray, np.ndarray]:
        """Hidden and output activations without touching the stored context."""
        c = self.context if context is None else context
        hidden = sigmoid(self.W_ih @ x + self.W_ch @ c + self.b_h)
        output = sigmoid(self.W_ho @ hidden + self.b_o)
        return hidden, output

    def forward(self, x) -> np.ndarray:
        x = self._check_input(x)
        hidden, output = self.activate(x)
        self.context = hidden
        return output


def step_loss(model: SrnModel, x, target, context) -> float:
    """Half sum of squared errors for one step from a given context."""
    _, out = model.activate(np.asarray(x, float), np.asarray(context, float))
    return 0.5 * float(np.sum((out - target) ** 2))


def step_gradients(model: SrnModel, x, target, context=None):
    """Analytic gradients of ``step_loss``; the context is a constant input."""
    c = model.context if context is None else np.asarray(context, float)
    hidden, out = model.activate(x, c)
    d_out = (out - target) * out * (1.0 - out)
    d_hid = (model.W_ho.T @ d_out) * hidden * (1.0 - hidden)
    grads = {
        "W_ih": np.outer(d_hid, x),
        "W_ch": np.outer(d_hid, c),
        "W_ho": np.outer(d_out, hidden),
        "b_h": d_hid,
        "b_o": d_out,
    }
    return grads, hidden, out


def numeric_gradients(model: SrnModel, x, target, context, eps: float = 1e-5):
    """Central finite differences of ``step_loss`` for every parameter."""
    grads = {}
    for name in PARAMS:
        arr = getattr(model, name)
        g = np.zeros_like(arr)
        for idx in np.ndindex(arr.shape):
            saved = arr[idx]
            arr[idx] = saved + eps
            plus = step_loss(model, x, target, context)
            arr[idx] = saved - eps
            minus = step_loss(model, x, target, context)
            arr[idx] = saved
            g[idx] = (plus - minus) / (2 * eps)
        grads[name] = g
    return grads


class Momentum:
    """Velocity buffers for one model, kept across calls to ``sgd_step``."""

    def __init__(self, model: SrnModel):
        self.velocity = {name: np.zeros_like(arr) for name, arr in model.params().items()}


def sgd_step(model: SrnModel, x, target, config: TrainConfig, momentum: Momentum) -> float:
    """One online update; advances the context. Returns the pre-update step MSE."""
    x = model._check_input(x)
    target = np.asarray(target, dtype=float)
    if target.shape != (model.n_out,):
        raise ValueError(f"target has shape {target.shape}, expected ({model.n_out},)")
    grads, hidden, out = step_gradients(model, x, target)
    for name, g in grads.items():
        v = momentum.velocity[name]
        v *= config.momentum
        v -= config.learning_rate * g
        getattr(model, name)[...] += v
    model.context = hidden
    return float(np.mean((out - target) ** 2))


def sequence_mse(model: SrnModel, pairs: Sequence[tuple]) -> float:
    """Mean per-step MSE over a sequence, starting from a reset context."""
    c = np.full(model.n_hid, CONTEXT_RESET)
    errs = []
    for x, t in pairs:
        c, out = model.activate(np.asarray(x, float), c)
        errs.append(np.mean((out - np.asarray(t, float)) ** 2))
    return float(np.mean(errs)) if errs else 0.0


def train_sequence(model: SrnModel, pairs: Sequence[tuple], config: TrainConfig,
                   momentum: Momentum | None = None) -> tuple[SrnModel, float]:
    """One pass over ``pairs`` with an update per step, then re-score the sequence."""
    for _, t in pairs:
        if np.any(np.asarray(t) < 0) or np.any(np.asarray(t) > 1):
            raise ValueError("targets must lie in [0, 1]")
    momentum = momentum or Momentum(model)
    model.reset_context()
    for x, t in pairs:
        sgd_step(model, x, t, config, momentum)
    model.reset_context()
    return model, sequence_mse(model, pairs)


# -- serialization ---------------------------------------------------------

class ModelFormatError(ValueError):
    pass


def dumps(model: SrnModel) -> str:
    lines = ["SRN %d %d %d" % model.sizes]
    for name in PARAMS:
        arr = getattr(model, name)
        lines.append(name.upper())
        rows = arr if arr.ndim == 2 else arr[None, :]
        lines.extend(" ".join(repr(float(v)) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def loads(text: str) -> SrnModel:
    lines = text.splitlines()
    if not lines:
        raise ModelFormatError("line 1: empty model file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "SRN":
        raise ModelFormatError("line 1: expected header 'SRN n_in n_hid n_out'")
    try:
        sizes = [int(v) for v in head[1:]]
        model = SrnModel(*sizes)
    except ValueError as exc:
        raise ModelFormatError(f"line 1: bad layer sizes ({exc})") from None
    lineno = 1
    for name in PARAMS:
        arr = getattr(model, name)
        n_rows = arr.shape[0] if arr.ndim == 2 else 1
        n_cols = arr.shape[-1]
        if lineno >= len(lines):
            raise ModelFormatError(f"line {lineno + 1}: missing section {name.upper()}")
        if lines[lineno].strip() != name.upper():
            raise ModelFormatError(
                f"line {lineno + 1}: expected section {name.upper()}, got {lines[lineno].strip()!r}")
        lineno += 1
        rows = []
        for _ in range(n_rows):
            if lineno >= len(lines):
                raise ModelFormatError(f"line {lineno + 1}: truncated section {name.upper()}")
            try:
                row = [float(v) for v in lines[lineno].split()]
            except ValueError:
                raise ModelFormatError(f"line {lineno + 1}: non-numeric value") from None
            if len(row) != n_cols:
                raise ModelFormatError(
                    f"line {lineno + 1}: expected {n_cols} values, got {len(row)}")
            if not all(np.isfinite(row)):
                raise ModelFormatError(f"line {lineno + 1}: non-finite value")
            rows.append(row)
            lineno += 1
        arr[...] = np.array(rows).reshape(arr.shape)
    if any(line.strip() for line in lines[lineno:]):
        raise ModelFormatError(f"line {lineno + 1}: trailing content")
    return model


def save(model: SrnModel, path: str | Path) -> None:
    Path(path).write_text(dumps(model), encoding="utf-8")


def load(path: str | Path) -> SrnModel:
    path = Path(path)
    try:
        return loads(path.read_text(encoding="utf-8"))
    except ModelFormatError as exc:
        raise ModelFormatError(f"{path}: {exc}") from None


def relative_error(a: np.ndarray, b: np.ndarray, floor: float = 1e-8) -> np.ndarray:
    return np.abs(a - b) / np.maximum(np.maximum(np.abs(a), np.abs(b)), floor)


def gradient_check(model: SrnModel, x, target, context, eps: float = 1e-5) -> float:
    """Largest relative error between analytic and finite-difference gradients."""
    analytic, _, _ = step_gradients(model, np.asarray(x, float), np.asarray(target, float), context)
    numeric = numeric_gradients(model, x, target, context, eps)
    return max(float(relative_error(analytic[k], numeric[k]).max()) for k in PARAMS)

