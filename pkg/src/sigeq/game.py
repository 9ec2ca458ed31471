"""Game description, trajectories, and the two quadratic cost functionals.

A :class:`GameSpec` is the single configuration object consumed by every
solver: horizon, bias, power penalty, optional discount, a source model, and
(for signaling games) an additive Gaussian channel.  Cheap talk is the
channel-free case with y_k = x_k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ShapeError
from .sources import ChannelModel, GaussMarkovSource, ScalarSource


def _vector(a, name: str) -> np.ndarray:
    v = np.atleast_1d(np.asarray(a, dtype=float))
    if v.ndim != 1:
        raise ShapeError(f"{name} must be a vector, got shape {v.shape}")
    v = np.array(v)
    v.setflags(write=False)
    return v


@dataclass(frozen=True)
class GameSpec:
    """Multi-stage quadratic game configuration.

    Encoder stage cost: ||m_k - u_k - bias||^2 + power_penalty * ||x_k||^2
    (the power term applies only when a channel is present).
    Decoder stage cost: ||m_k - u_k||^2.  Stage costs are weighted by
    discount^k; no discount means weight one.
    """

    horizon: int
    bias: np.ndarray
    power_penalty: float = 0.0
    discount: float | None = None
    source: ScalarSource | GaussMarkovSource = None
    channel: ChannelModel | None = None

    def __post_init__(self):
        if self.horizon < 1:
            raise ArgumentError("horizon must be >= 1")
        if self.power_penalty < 0.0:
            raise ArgumentError("power_penalty must be >= 0")
        if self.discount is not None and not (0.0 < self.discount < 1.0):
            raise ArgumentError("discount must lie in (0, 1)")
        if self.source is None:
            raise ArgumentError("a source model is required")
        object.__setattr__(self, "bias", _vector(self.bias, "bias"))
        if self.bias.shape[0] != self.n:
            raise ShapeError(
                f"bias has length {self.bias.shape[0]} but the source dimension is {self.n}"
            )
        if isinstance(self.source, GaussMarkovSource) and not self.source.stationary_noise:
            if self.horizon >= 2 and len(self.source.noise_cov) < self.horizon - 1:
                raise ShapeError(
                    f"horizon {self.horizon} needs {self.horizon - 1} process-noise "
                    f"covariances, got {len(self.source.noise_cov)}"
                )
        if self.channel is not None and not self.channel.stationary:
            if len(self.channel.noise_cov) < self.horizon:
                raise ShapeError(
                    f"horizon {self.horizon} needs {self.horizon} channel-noise "
                    f"covariances, got {len(self.channel.noise_cov)}"
                )

    # Dimensions ----------------------------------------------------------

    @property
    def n(self) -> int:
        if isinstance(self.source, GaussMarkovSource):
            return self.source.n
        return 1

    @property
    def p(self) -> int:
        """Dimension of the transmitted signal (channel dimension, or the
        source dimension for cheap talk)."""
        if self.channel is not None:
            return self.channel.p
        return self.n

    @property
    def is_cheap_talk(self) -> bool:
        return self.channel is None

    @property
    def is_scalar(self) -> bool:
        return self.n == 1 and self.p == 1

    def stage_weights(self) -> np.ndarray:
        beta = 1.0 if self.discount is None else self.discount
        return beta ** np.arange(self.horizon)

    # Scalar Gauss-Markov accessors ----------------------------------------

    def _scalar_gm(self) -> GaussMarkovSource:
        if not isinstance(self.source, GaussMarkovSource) or not self.source.is_scalar:
            raise ArgumentError("operation requires a scalar Gauss-Markov source")
        return self.source

    @property
    def g(self) -> float:
        return self._scalar_gm().g

    def sigma2_m(self, k: int) -> float:
        return self._scalar_gm().stage_var(k)

    def sigma2_w(self, k: int) -> float:
        if self.channel is None:
            raise ArgumentError("no channel in a cheap-talk game")
        return self.channel.noise_var_at(k)


@dataclass(frozen=True)
class Trajectory:
    """One realized play: per-stage source, signal, channel output, action."""

    m: np.ndarray
    x: np.ndarray
    y: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        arrays = {}
        for name in ("m", "x", "y", "u"):
            a = np.atleast_2d(np.asarray(getattr(self, name), dtype=float))
            arrays[name] = a
            object.__setattr__(self, name, a)
        lengths = {a.shape[0] for a in arrays.values()}
        if len(lengths) != 1:
            raise ShapeError(f"per-stage arrays disagree on horizon: {sorted(lengths)}")

    @property
    def horizon(self) -> int:
        return self.m.shape[0]


def _check_traj(traj: Trajectory, spec: GameSpec) -> None:
    if traj.horizon != spec.horizon:
        raise ShapeError(f"trajectory horizon {traj.horizon} != spec horizon {spec.horizon}")
    if traj.m.shape[1] != spec.n or traj.u.shape[1] != spec.n:
        raise ShapeError("m/u dimension does not match the source dimension")
    if traj.x.shape[1] != spec.p or traj.y.shape[1] != spec.p:
        raise ShapeError("x/y dimension does not match the signal dimension")


def batched_costs(spec: GameSpec, m: np.ndarray, x: np.ndarray, u: np.ndarray):
    """Encoder and decoder costs for stacked trajectories.

    Arrays have shape (batch, horizon, dim).  Returns (J_e, J_d) of shape
    (batch,).
    """
    w = spec.stage_weights()
    err_d = np.sum((m - u) ** 2, axis=2)
    err_e = np.sum((m - u - spec.bias) ** 2, axis=2)
    if not spec.is_cheap_talk:
        err_e = err_e + spec.power_penalty * np.sum(x ** 2, axis=2)
    return err_e @ w, err_d @ w


def eval_encoder_cost(traj: Trajectory, spec: GameSpec) -> float:
    """Realized encoder cost sum_k w_k (||m_k - u_k - b||^2 + lam ||x_k||^2)."""
    _check_traj(traj, spec)
    je, _ = batched_costs(spec, traj.m[None], traj.x[None], traj.u[None])
    return float(je[0])


def eval_decoder_cost(traj: Trajectory, spec: GameSpec) -> float:
    """Realized decoder cost sum_k w_k ||m_k - u_k||^2."""
    _check_traj(traj, spec)
    _, jd = batched_costs(spec, traj.m[None], traj.x[None], traj.u[None])
    return float(jd[0])


def sample_trajectory(spec: GameSpec, encoder, decoder, seed: int, index: int = 0) -> Trajectory:
    """Simulate one play of the game; deterministic given (seed, index)."""
    from ._sim import simulate_batch

    batch = simulate_batch(spec, encoder, decoder, samples=1, seed=seed, start=index)
    return Trajectory(m=batch.m[0], x=batch.x[0], y=batch.y[0], u=batch.u[0])
