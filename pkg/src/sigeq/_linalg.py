"""Small symmetric-matrix helpers with deterministic conventions."""

from __future__ import annotations

import warnings

import numpy as np

from .errors import ShapeError


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    m = np.atleast_2d(np.asarray(a, dtype=float))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {m.shape}")
    return m


def check_symmetric(m: np.ndarray, name: str, tol: float = 1e-12) -> None:
    if m.size and np.max(np.abs(m - m.T)) > tol:
        raise ShapeError(f"{name} is not symmetric within {tol}")


def check_psd(m: np.ndarray, name: str, floor: float = -1e-10) -> None:
    if np.min(np.linalg.eigvalsh(m)) < floor:
        raise ShapeError(f"{name} is not positive semidefinite")


def check_pd(m: np.ndarray, name: str) -> None:
    if np.min(np.linalg.eigvalsh(m)) <= 0.0:
        raise ShapeError(f"{name} is not positive definite")


def is_diagonal(m: np.ndarray, tol: float = 1e-12) -> bool:
    off = m - np.diag(np.diag(m))
    return float(np.max(np.abs(off), initial=0.0)) <= tol


def offdiag_mass(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - np.diag(np.diag(m))), initial=0.0))


def eigh_sorted(m: np.ndarray, ascending: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix with a fixed convention:
    eigenvalues sorted (ascending by default), each eigenvector scaled so its
    largest-magnitude component is positive."""
    vals, vecs = np.linalg.eigh(m)
    if not ascending:
        vals = vals[::-1]
        vecs = vecs[:, ::-1]
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        pivot = int(np.argmax(np.abs(col)))
        if col[pivot] < 0:
            vecs[:, j] = -col
    return vals, vecs


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Symmetric PSD square root; negative eigenvalues are clamped to zero."""
    vals, vecs = np.linalg.eigh(m)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.T


def psd_inv_sqrt(m: np.ndarray, rel_tol: float = 1e-12, warn_label: str | None = None) -> np.ndarray:
    """Inverse symmetric square root; near-zero modes are pseudo-inverted."""
    vals, vecs = np.linalg.eigh(m)
    vals = np.clip(vals, 0.0, None)
    cutoff = rel_tol * max(float(vals.max(initial=0.0)), 1.0)
    inv = np.zeros_like(vals)
    keep = vals > cutoff
    inv[keep] = 1.0 / np.sqrt(vals[keep])
    if warn_label and not np.all(keep):
        warnings.warn(
            f"{warn_label}: singular covariance, using pseudo-inverse square root",
            RuntimeWarning,
            stacklevel=2,
        )
    return (vecs * inv) @ vecs.T
