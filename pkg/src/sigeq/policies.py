"""Encoder and decoder policies with a batched stage interface.

Encoders implement ``emit(k, m_hist, y_hist) -> x_k`` where ``m_hist`` has
shape (batch, k+1, n) and ``y_hist`` has shape (batch, k, p): exactly the
encoder's information set (all sources so far plus past channel outputs via
noiseless feedback).  Decoders implement ``act(k, y_hist) -> u_k`` with
``y_hist`` of shape (batch, k+1, p): channel outputs up to and including the
current stage.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError


class ZeroEncoder:
    """Transmits nothing (the encoder half of a babbling profile)."""

    def __init__(self, dim: int):
        self.dim = dim

    def emit(self, k, m_hist, y_hist):
        return np.zeros((m_hist.shape[0], self.dim))


class IdentityEncoder:
    """Transmits the current source value unchanged."""

    def emit(self, k, m_hist, y_hist):
        return m_hist[:, -1, :]


class IdentityDecoder:
    """Acts with the received signal itself (fully-revealing cheap talk)."""

    def act(self, k, y_hist):
        return y_hist[:, -1, :]


class ConstantDecoder:
    """Plays a fixed per-stage action (babbling decoder: the prior mean)."""

    def __init__(self, actions):
        self.actions = np.atleast_2d(np.asarray(actions, dtype=float))

    def act(self, k, y_hist):
        u = self.actions[k]
        return np.broadcast_to(u, (y_hist.shape[0], u.shape[0])).copy()


class QuantizerEncoder:
    """Maps the current scalar source value to its bin's representative
    action; a point on a boundary belongs to the left bin."""

    def __init__(self, policy):
        self.boundaries = np.asarray(policy.boundaries, dtype=float)
        self.actions = np.asarray(policy.actions, dtype=float)

    def emit(self, k, m_hist, y_hist):
        m = m_hist[:, -1, 0]
        idx = np.searchsorted(self.boundaries, m, side="left")
        return self.actions[idx][:, None]


class AffineEncoder:
    """x_k = sum_i A[k][i] m_i + sum_i B[k][i] y_i + C[k]."""

    def __init__(self, stack):
        self.stack = stack

    def emit(self, k, m_hist, y_hist):
        st = self.stack
        x = np.broadcast_to(st.C[k], (m_hist.shape[0], st.C[k].shape[0])).copy()
        for i, A in enumerate(st.A[k]):
            x += m_hist[:, i, :] @ A.T
        for i, B in enumerate(st.B[k]):
            x += y_hist[:, i, :] @ B.T
        return x


class AffineDecoder:
    """u_k = sum_i D[k][i] y_i + E[k]."""

    def __init__(self, stack):
        self.stack = stack

    def act(self, k, y_hist):
        st = self.stack
        u = np.broadcast_to(st.E[k], (y_hist.shape[0], st.E[k].shape[0])).copy()
        for i, D in enumerate(st.D[k]):
            u += y_hist[:, i, :] @ D.T
        return u


class _InnovationFilter:
    """Shared linear filter: m_hat_k = G m_hat_{k-1} + Gamma_k y_k.

    Both the innovation encoder and the posterior-mean decoder run this
    recursion on the channel outputs, so their beliefs agree by construction.
    """

    def __init__(self, G, gains):
        self.G = np.atleast_2d(np.asarray(G, dtype=float))
        self.gains = [np.atleast_2d(np.asarray(g, dtype=float)) for g in gains]

    def predict(self, y_hist: np.ndarray) -> np.ndarray:
        """E[m_k | y_(0..k-1)] where y_hist holds y_0..y_{k-1}."""
        batch = y_hist.shape[0]
        n = self.G.shape[0]
        m_hat = np.zeros((batch, n))
        k = y_hist.shape[1]
        for i in range(k):
            pred = m_hat @ self.G.T if i > 0 else np.zeros((batch, n))
            m_hat = pred + y_hist[:, i, :] @ self.gains[i].T
        if k == 0:
            return np.zeros((batch, n))
        return m_hat @ self.G.T

    def posterior(self, y_hist: np.ndarray) -> np.ndarray:
        """E[m_k | y_(0..k)] where y_hist holds y_0..y_k."""
        k = y_hist.shape[1] - 1
        pred = self.predict(y_hist[:, :k, :]) if k > 0 else np.zeros(
            (y_hist.shape[0], self.G.shape[0])
        )
        return pred + y_hist[:, k, :] @ self.gains[k].T


class InnovationEncoder:
    """Linear innovation encoder x_k = A_k (m_k - E[m_k | y_(0..k-1)])."""

    def __init__(self, G, encoder_gains, filter_gains):
        self.A = [np.atleast_2d(np.asarray(a, dtype=float)) for a in encoder_gains]
        self.filter = _InnovationFilter(G, filter_gains)

    def emit(self, k, m_hist, y_hist):
        if y_hist.shape[1] != k:
            raise ShapeError("encoder expects y history up to stage k-1")
        pred = self.filter.predict(y_hist) if k > 0 else np.zeros_like(m_hist[:, 0, :])
        innovation = m_hist[:, -1, :] - pred
        return innovation @ self.A[k].T


class PosteriorMeanDecoder:
    """MMSE decoder for the linear innovation encoder: u_k = E[m_k | y_(0..k)]."""

    def __init__(self, G, filter_gains):
        self.filter = _InnovationFilter(G, filter_gains)

    def act(self, k, y_hist):
        return self.filter.posterior(y_hist)
