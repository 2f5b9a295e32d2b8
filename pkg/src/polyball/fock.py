"""Finite truncations of tensor products of full Fock spaces.

The basis of a truncation is indexed by MultiWords: per factor all words of
length <= d_i in graded-lex order, factors combined row-major (factor 1
slowest).  Creation operators are the compressions P S P of the untruncated
ones; annihilation (the adjoint) is then exact everywhere, creation is exact
except on the top degree slice of its factor.  Word monomials S_a S_b* and
R_a R_b* are assembled as exact compressions of the corresponding infinite
operators, i.e. entrywise from word arithmetic, never as products of
truncated letters.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .words import (
    MultiWord,
    Side,
    Word,
    _strip_prefix,
    _strip_suffix,
    words_up_to,
)


class TruncationError(ValueError):
    """A word does not fit in the truncation."""


class FockTruncation:
    """Descriptor of a truncated tensor product of full Fock spaces."""

    def __init__(self, n: Sequence[int], degrees: Sequence[int]):
        if len(n) != len(degrees):
            raise ValueError("n and degrees must have the same length")
        if any(d < 0 for d in degrees):
            raise ValueError("degrees must be >= 0")
        self.n = tuple(int(x) for x in n)
        self.degrees = tuple(int(d) for d in degrees)
        self.k = len(self.n)
        self._factor_words: list[list[Word]] = [
            words_up_to(ni, di) for ni, di in zip(self.n, self.degrees)
        ]
        self._factor_index: list[dict[tuple[int, ...], int]] = [
            {w.letters: i for i, w in enumerate(ws)} for ws in self._factor_words
        ]
        self.factor_dims = tuple(len(ws) for ws in self._factor_words)
        self.dim = int(np.prod(self.factor_dims))
        self._strides = tuple(
            int(np.prod(self.factor_dims[i + 1 :])) for i in range(self.k)
        )
        # per-factor degree of each basis word, for window masks
        self._factor_degree = [
            np.array([len(w) for w in ws], dtype=np.int64) for ws in self._factor_words
        ]

    # -- indexing -----------------------------------------------------------

    def factor_words(self, i: int) -> list[Word]:
        return self._factor_words[i - 1]

    def factor_word_index(self, i: int, w: Word) -> int:
        try:
            return self._factor_index[i - 1][w.letters]
        except KeyError:
            raise TruncationError(f"word {w!r} exceeds degree cap in factor {i}")

    def basis_index(self, mw: MultiWord) -> int:
        if mw.n != self.n:
            raise TruncationError(f"multiword shape {mw.n} does not match {self.n}")
        flat = 0
        for i, w in enumerate(mw.parts, start=1):
            flat += self.factor_word_index(i, w) * self._strides[i - 1]
        return flat

    def basis_word(self, flat: int) -> MultiWord:
        parts = []
        for i in range(self.k):
            idx, flat = divmod(flat, self._strides[i])
            parts.append(self._factor_words[i][idx])
        return MultiWord(tuple(parts))

    def basis(self) -> list[MultiWord]:
        return [self.basis_word(i) for i in range(self.dim)]

    def admits(self, mw: MultiWord) -> bool:
        return mw.n == self.n and all(
            len(w) <= d for w, d in zip(mw.parts, self.degrees)
        )

    @property
    def vacuum_index(self) -> int:
        return 0

    # -- windows ------------------------------------------------------------

    def window_mask(self, budget: Sequence[int]) -> np.ndarray:
        """Boolean mask over the basis: per-factor degree <= d_i - budget_i."""
        if len(budget) != self.k:
            raise ValueError("budget length must equal number of factors")
        for b, d in zip(budget, self.degrees):
            if b < 0 or b > d:
                raise ValueError(f"budget {budget} exceeds degrees {self.degrees}")
        mask = np.ones(self.dim, dtype=bool)
        for i in range(self.k):
            ok = self._factor_degree[i] <= self.degrees[i] - budget[i]
            mask &= self._expand_factor_mask(i, ok)
        return mask

    def _expand_factor_mask(self, i: int, ok: np.ndarray) -> np.ndarray:
        shape = [1] * self.k
        shape[i] = self.factor_dims[i]
        return np.broadcast_to(ok.reshape(shape), self.factor_dims).ravel()

    def total_length_mask(self, max_total: int) -> np.ndarray:
        degs = np.zeros(self.factor_dims, dtype=np.int64)
        for i in range(self.k):
            shape = [1] * self.k
            shape[i] = self.factor_dims[i]
            degs = degs + self._factor_degree[i].reshape(shape)
        return (degs <= max_total).ravel()

    # -- per-factor letter maps ----------------------------------------------

    def factor_map(self, i: int, fn: Callable[[Word], Word | None]) -> np.ndarray:
        """Int map over factor-i basis words: target index, or -1 when fn
        returns None or a word beyond the cap."""
        ws = self._factor_words[i - 1]
        idx = self._factor_index[i - 1]
        out = np.full(len(ws), -1, dtype=np.int64)
        for s, w in enumerate(ws):
            t = fn(w)
            if t is not None and len(t) <= self.degrees[i - 1]:
                out[s] = idx[t.letters]
        return out

    def letter_map(self, side: Side, i: int, j: int) -> np.ndarray:
        """Map of the truncated creation letter on factor i."""
        if not 1 <= i <= self.k:
            raise ValueError(f"factor index {i} out of range")
        if not 1 <= j <= self.n[i - 1]:
            raise ValueError(f"generator index {j} out of range for factor {i}")
        g = Word((j,), self.n[i - 1])
        if side == "left":
            return self.factor_map(i, lambda w: g.concat(w))
        return self.factor_map(i, lambda w: w.concat(g))

    def product_map(self, factor_maps: Sequence[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
        """Combine per-factor index maps into flat (source, target) arrays."""
        grids = np.meshgrid(*[np.arange(d) for d in self.factor_dims], indexing="ij")
        valid = np.ones(self.factor_dims, dtype=bool)
        tgt_flat = np.zeros(self.factor_dims, dtype=np.int64)
        src_flat = np.zeros(self.factor_dims, dtype=np.int64)
        for i in range(self.k):
            t = factor_maps[i][grids[i]]
            valid &= t >= 0
            tgt_flat += np.maximum(t, 0) * self._strides[i]
            src_flat += grids[i].astype(np.int64) * self._strides[i]
        return src_flat[valid].ravel(), tgt_flat[valid].ravel()

    def __repr__(self) -> str:
        return f"FockTruncation(n={self.n}, degrees={self.degrees}, dim={self.dim})"


class FockVector:
    """Amplitudes over (basis index, coefficient index)."""

    def __init__(self, trunc: FockTruncation, amplitudes: np.ndarray):
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.ndim == 1:
            amplitudes = amplitudes[:, None]
        if amplitudes.shape[0] != trunc.dim:
            raise ValueError(
                f"amplitude rows {amplitudes.shape[0]} != truncation dim {trunc.dim}"
            )
        self.trunc = trunc
        self.amplitudes = amplitudes

    @property
    def coeff_dim(self) -> int:
        return self.amplitudes.shape[1]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @staticmethod
    def basis_vector(trunc: FockTruncation, mw: MultiWord, coeff_dim: int = 1, slot: int = 0):
        amp = np.zeros((trunc.dim, coeff_dim), dtype=complex)
        amp[trunc.basis_index(mw), slot] = 1.0
        return FockVector(trunc, amp)


class FockOperator:
    """Square matrix on (truncation x coefficient space), space index major."""

    def __init__(self, trunc: FockTruncation, matrix, coeff_dim: int = 1,
                 hermitian: bool | None = None, positive: bool | None = None):
        self.trunc = trunc
        self.coeff_dim = int(coeff_dim)
        self.matrix = matrix
        n = trunc.dim * self.coeff_dim
        if matrix.shape != (n, n):
            raise ValueError(f"matrix shape {matrix.shape} != ({n}, {n})")
        self.hermitian = hermitian
        self.positive = positive

    def dense(self) -> np.ndarray:
        m = self.matrix
        return m.toarray() if hasattr(m, "toarray") else np.asarray(m)

    def adjoint(self) -> "FockOperator":
        return FockOperator(self.trunc, self.dense().conj().T, self.coeff_dim)

    def norm(self) -> float:
        return float(np.linalg.norm(self.dense(), 2))

    def compressed(self, mask: np.ndarray) -> np.ndarray:
        """Dense matrix restricted to the window rows/columns (mask over the
        space index, tensored with the full coefficient space)."""
        full = np.repeat(mask, self.coeff_dim)
        m = self.dense()
        return m[np.ix_(full, full)]


# ---------------------------------------------------------------------------
# operations


def apply_creation(trunc: FockTruncation, side: Side, i: int, j: int,
                   adjoint: bool, v: FockVector) -> FockVector:
    """Matrix-free action of a truncated creation letter or its adjoint."""
    m = trunc.letter_map(side, i, j)
    c = v.coeff_dim
    a = v.amplitudes.reshape(*trunc.factor_dims, c)
    a = np.moveaxis(a, i - 1, 0)
    out = np.zeros_like(a)
    valid = m >= 0
    if adjoint:
        out[valid] = a[m[valid]]
    else:
        out[m[valid]] = a[valid]
    out = np.moveaxis(out, 0, i - 1).reshape(trunc.dim, c)
    return FockVector(trunc, out)


def creation_matrix(trunc: FockTruncation, side: Side, i: int, j: int,
                    adjoint: bool = False) -> np.ndarray:
    maps = [np.arange(d, dtype=np.int64) for d in trunc.factor_dims]
    maps[i - 1] = trunc.letter_map(side, i, j)
    src, dst = trunc.product_map(maps)
    m = np.zeros((trunc.dim, trunc.dim), dtype=complex)
    if adjoint:
        m[src, dst] = 1.0
    else:
        m[dst, src] = 1.0
    return m


def creation_tuple(trunc: FockTruncation, side: Side = "left", scale: float = 1.0):
    """All creation letters as matrices: out[i-1][j-1] = scale * creation."""
    return [
        [scale * creation_matrix(trunc, side, i, j) for j in range(1, ni + 1)]
        for i, ni in enumerate(trunc.n, start=1)
    ]


def monomial_indices(trunc: FockTruncation, a: MultiWord, b: MultiWord,
                     side: Side = "left") -> tuple[np.ndarray, np.ndarray]:
    """(source, target) basis indices of the exact compression of the word
    monomial: left side S_a S_b* (strip b as a head, prepend a), right side
    R_a R_b* (strip reversed b as a tail, append reversed a)."""
    if a.n != trunc.n or b.n != trunc.n:
        raise TruncationError("word shape does not match truncation")
    maps = []
    for i in range(1, trunc.k + 1):
        ai, bi = a.parts[i - 1], b.parts[i - 1]
        if side == "left":
            def fn(w, ai=ai, bi=bi):
                t = _strip_prefix(w, bi)
                return None if t is None else ai.concat(t)
        else:
            ar, br = ai.reverse(), bi.reverse()

            def fn(w, ar=ar, br=br):
                t = _strip_suffix(w, br)
                return None if t is None else t.concat(ar)
        maps.append(trunc.factor_map(i, fn))
    return trunc.product_map(maps)


def word_operator(trunc: FockTruncation, a: MultiWord, b: MultiWord,
                  coefficient: np.ndarray | None = None,
                  side: Side = "left") -> FockOperator:
    """coefficient (x) S_a S_b* as an explicit matrix (R-side on request).

    Assembled entrywise, so the result is the exact compression of the
    untruncated monomial; no intermediate-truncation artifacts.
    """
    if coefficient is None:
        coefficient = np.eye(1, dtype=complex)
    coefficient = np.asarray(coefficient, dtype=complex)
    e = coefficient.shape[0]
    src, dst = monomial_indices(trunc, a, b, side)
    n = trunc.dim * e
    if n > 4096:
        import scipy.sparse as sp

        # block-sparse: entry (dst*e + r, src*e + c) = coefficient[r, c]
        r_idx = np.repeat(dst, e * e) * e + np.tile(np.repeat(np.arange(e), e), len(dst))
        c_idx = np.repeat(src, e * e) * e + np.tile(np.tile(np.arange(e), e), len(src))
        vals = np.tile(coefficient.ravel(), len(src))
        m = sp.coo_matrix((vals, (r_idx, c_idx)), shape=(n, n)).tocsr()
        return FockOperator(trunc, m, e)
    m = np.zeros((n, n), dtype=complex)
    m4 = m.reshape(trunc.dim, e, trunc.dim, e)
    m4[dst, :, src, :] = coefficient
    return FockOperator(trunc, m, e)


class ExactWindow:
    """Predicate marking basis words on which raising each factor-i degree by
    up to budget[i] incurs no compression loss."""

    def __init__(self, trunc: FockTruncation, budget: Sequence[int]):
        self.trunc = trunc
        self.budget = tuple(int(b) for b in budget)
        self.mask = trunc.window_mask(self.budget)

    def __call__(self, mw: MultiWord) -> bool:
        return all(
            len(w) <= d - b
            for w, d, b in zip(mw.parts, self.trunc.degrees, self.budget)
        )


def exact_window(trunc: FockTruncation, raise_budget: Sequence[int]) -> ExactWindow:
    return ExactWindow(trunc, raise_budget)
