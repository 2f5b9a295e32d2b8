"""Small dense linear-algebra helpers shared across the package."""

from __future__ import annotations

import numpy as np


def opnorm(m: np.ndarray) -> float:
    """Operator (spectral) norm of a matrix."""
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(np.atleast_2d(m), 2))


def hermitian_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def min_eig_hermitian(m: np.ndarray) -> float:
    """Smallest eigenvalue of a (numerically) Hermitian matrix."""
    if m.shape[0] == 0:
        return 0.0
    return float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])


def psd_sqrt(m: np.ndarray, clamp: float = 1e-12):
    """Square root of a PSD matrix via eigendecomposition.

    Eigenvalues below ``clamp`` (relative to the largest) are set to zero,
    so nearly-singular defect operators do not produce NaNs.  Returns
    ``(root, factor, rank)`` where ``root = factor.conj().T @ factor`` is the
    full square root and ``factor`` has shape (rank, dim), i.e. only the
    numerically nonzero directions.
    """
    h = 0.5 * (m + m.conj().T)
    w, u = np.linalg.eigh(h)
    cutoff = clamp * max(float(w[-1]), 1.0) if w.size else 0.0
    keep = w > cutoff
    w = np.where(keep, w, 0.0)
    factor = (np.sqrt(w[keep])[:, None] * u[:, keep].conj().T)
    root = u @ (np.sqrt(w)[:, None] * u.conj().T)
    return root, factor, int(np.count_nonzero(keep))


def kron_with_identity_right(m: np.ndarray, e: int) -> np.ndarray:
    """kron(m, I_e) without forming the identity."""
    if e == 1:
        return m
    return np.kron(m, np.eye(e, dtype=m.dtype))


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T
