"""Polyball membership, Berezin kernels and transforms, the Cauchy-type
resolvent operator, and the pluriharmonic Poisson kernel.

Conventions.  A point is a k-tuple of operator rows X[i] = (X[i][1], ...,
X[i][n_i]) on a common space of dimension h; entries of different rows must
commute.  All operators on tensor products are laid out with the main space
major and the coefficient space minor, matching ``fock.FockOperator``.

Truncated series report explicit geometric tail bounds computed from the row
norms; when the point is jointly nilpotent the series are finite and the
bounds collapse to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _linalg as la
from .fock import FockOperator, FockTruncation, creation_matrix
from .words import (
    MultiWord,
    Side,
    Word,
    _strip_prefix,
    _strip_suffix,
    lambda_pairs_within_degrees,
)


class DivergenceError(ValueError):
    """A truncated series cannot meet the requested tolerance."""


class SingularResolventError(np.linalg.LinAlgError):
    def __init__(self, min_singular: float):
        super().__init__(f"resolvent factor is singular (min singular value {min_singular:.3e})")
        self.min_singular = min_singular


class PolyballPoint:
    """k-tuple of commuting-across-factors operator rows on C^h."""

    def __init__(self, X: Sequence[Sequence[np.ndarray]]):
        self.X = [[np.asarray(m, dtype=complex) for m in row] for row in X]
        if not self.X or any(not row for row in self.X):
            raise ValueError("point needs at least one entry per factor")
        h = self.X[0][0].shape[0]
        for row in self.X:
            for m in row:
                if m.shape != (h, h):
                    raise ValueError("all entries must be square of equal size")
        self.h_dim = h
        self.k = len(self.X)
        self.n = tuple(len(row) for row in self.X)
        self._word_cache: list[dict[tuple[int, ...], np.ndarray]] = [
            {(): np.eye(h, dtype=complex)} for _ in range(self.k)
        ]

    @classmethod
    def from_scalars(cls, values: Sequence[Sequence[complex]]) -> "PolyballPoint":
        return cls([[np.array([[v]], dtype=complex) for v in row] for row in values])

    def entry(self, i: int, j: int) -> np.ndarray:
        return self.X[i - 1][j - 1]

    def scaled(self, r: float) -> "PolyballPoint":
        return PolyballPoint([[r * m for m in row] for row in self.X])

    def factor_word(self, i: int, w: Word) -> np.ndarray:
        """X_{i,w} = X_{i,j1} ... X_{i,jp}, cached."""
        cache = self._word_cache[i - 1]
        letters = w.letters
        if letters not in cache:
            cache[letters] = self.entry(i, letters[0]) @ self.factor_word(
                i, Word(letters[1:], w.n)
            )
        return cache[letters]

    def monomial(self, mw: MultiWord) -> np.ndarray:
        """X_mw: product of the per-factor word operators, factor order."""
        if mw.n != self.n:
            raise ValueError(f"multiword shape {mw.n} does not match point shape {self.n}")
        out = np.eye(self.h_dim, dtype=complex)
        for i, w in enumerate(mw.parts, start=1):
            if not w.is_identity:
                out = out @ self.factor_word(i, w)
        return out

    def row_norms(self) -> list[float]:
        return [
            math.sqrt(la.opnorm(sum(m @ m.conj().T for m in row)))
            for row in self.X
        ]

    def cross_commutation_defect(self) -> float:
        worst = 0.0
        for i in range(self.k):
            for i2 in range(i + 1, self.k):
                for a in self.X[i]:
                    for b in self.X[i2]:
                        worst = max(worst, float(np.max(np.abs(a @ b - b @ a))))
        return worst

    def is_jointly_nilpotent(self, tol: float = 1e-300) -> bool:
        """True when long enough products of entries all vanish."""
        y = np.eye(self.h_dim, dtype=complex)
        for _ in range(self.h_dim):
            y = sum(m @ y @ m.conj().T for row in self.X for m in row)
            if la.opnorm(y) <= tol:
                return True
        return la.opnorm(y) <= tol


def creation_point(trunc: FockTruncation, r: float = 1.0, side: Side = "left") -> PolyballPoint:
    """The truncated creation tuple r*S (or r*R) as a polyball point."""
    return PolyballPoint(
        [
            [r * creation_matrix(trunc, side, i, j) for j in range(1, ni + 1)]
            for i, ni in enumerate(trunc.n, start=1)
        ]
    )


# ---------------------------------------------------------------------------
# defect and membership


def phi_map(row: Sequence[np.ndarray], y: np.ndarray) -> np.ndarray:
    """The completely positive map Y -> sum_j X_j Y X_j*."""
    return sum(m @ y @ m.conj().T for m in row)


def defect(X: PolyballPoint) -> np.ndarray:
    """Delta_X(I): alternating composition of id - Phi over the factors."""
    y = np.eye(X.h_dim, dtype=complex)
    for row in reversed(X.X):
        y = y - phi_map(row, y)
    return y


@dataclass
class MembershipReport:
    member: bool
    row_norms: list[float]
    defect_min_eig: float
    commutation_defect: float


def in_polyball(X: PolyballPoint, margin: float = 0.0,
                commutation_tol: float = 1e-10) -> MembershipReport:
    rn = X.row_norms()
    dmin = la.min_eig_hermitian(defect(X))
    cd = X.cross_commutation_defect()
    member = all(r < 1.0 - margin for r in rn) and dmin > margin and cd <= commutation_tol
    return MembershipReport(member, rn, dmin, cd)


@dataclass
class SpectralRadiusReport:
    value: float
    estimates: list[float]

    @property
    def last_two(self) -> tuple[float, float]:
        tail = [e for e in self.estimates if e > 0.0][-2:]
        while len(tail) < 2:
            tail.append(0.0)
        return (tail[0], tail[1])


def spectral_radius(X: PolyballPoint, max_p: int = 8) -> SpectralRadiusReport:
    """Joint spectral radius along the diagonal shell sequence p_i = p.

    For each p computes || Phi_1^p(...Phi_k^p(I)) ||^(1/(2kp)), which equals
    the norm of the sum of X_a X_a* over all multiwords with |a_i| = p.
    """
    if max_p < 2:
        raise ValueError("max_p must be >= 2")
    ests = []
    for p in range(1, max_p + 1):
        y = np.eye(X.h_dim, dtype=complex)
        for row in reversed(X.X):
            for _ in range(p):
                y = phi_map(row, y)
        nrm = la.opnorm(y)
        ests.append(nrm ** (1.0 / (2.0 * p * X.k)) if nrm > 0 else 0.0)
    return SpectralRadiusReport(max(ests), ests)


# ---------------------------------------------------------------------------
# Berezin kernel and transform


@dataclass
class BerezinKernelMatrix:
    matrix: np.ndarray          # (trunc.dim * defect_rank, h_dim)
    trunc: FockTruncation
    defect_rank: int
    h_dim: int
    tail_bound: float

    def as_tensor(self) -> np.ndarray:
        return self.matrix.reshape(self.trunc.dim, self.defect_rank, self.h_dim)


def _kernel_tail_bound(X: PolyballPoint, trunc: FockTruncation, dnorm: float) -> float:
    if X.is_jointly_nilpotent():
        # finite series once degrees cover the nilpotency index
        if all(d + 1 >= X.h_dim for d in trunc.degrees):
            return 0.0
    rho2 = [r * r for r in X.row_norms()]
    if any(r2 >= 1.0 for r2 in rho2):
        raise DivergenceError(f"row norms {X.row_norms()} outside the open ball")
    full = math.prod(1.0 / (1.0 - r2) for r2 in rho2)
    kept = math.prod(
        (1.0 - r2 ** (d + 1)) / (1.0 - r2) for r2, d in zip(rho2, trunc.degrees)
    )
    return math.sqrt(max(dnorm * (full - kept), 0.0))


def berezin_kernel(X: PolyballPoint, trunc: FockTruncation,
                   clamp: float = 1e-12) -> BerezinKernelMatrix:
    """K_X h = sum_b  e_b (x) Delta^(1/2) X_b* h, truncated at the box.

    The tail bound caps the norm of the dropped rows; it is zero for jointly
    nilpotent points once the degrees cover the nilpotency index.
    """
    if X.n != trunc.n:
        raise ValueError("point and truncation have different factor shapes")
    delta = defect(X)
    _, factor, rank = la.psd_sqrt(delta, clamp)
    rank = max(rank, 1)
    if factor.shape[0] == 0:
        factor = np.zeros((1, X.h_dim), dtype=complex)
    tail = _kernel_tail_bound(X, trunc, la.opnorm(delta))
    mat = np.zeros((trunc.dim * rank, X.h_dim), dtype=complex)
    for f in range(trunc.dim):
        b = trunc.basis_word(f)
        mat[f * rank : (f + 1) * rank, :] = factor @ X.monomial(b).conj().T
    return BerezinKernelMatrix(mat, trunc, rank, X.h_dim, tail)


def berezin_transform(g: FockOperator | np.ndarray, X: PolyballPoint,
                      trunc: FockTruncation | None = None,
                      kernel: BerezinKernelMatrix | None = None) -> np.ndarray:
    """K_X* (g (x) I) K_X; the extended form when g carries a coefficient
    space (output is then laid out h-major, coefficient minor)."""
    if isinstance(g, FockOperator):
        trunc = g.trunc
        e = g.coeff_dim
        gm = g.dense()
    else:
        if trunc is None:
            raise ValueError("trunc required when g is a plain matrix")
        gm = np.asarray(g, dtype=complex)
        e = gm.shape[0] // trunc.dim
    if kernel is None:
        kernel = berezin_kernel(X, trunc)
    k3 = kernel.as_tensor()
    if e == 1:
        return np.einsum("adx,ab,bdy->xy", k3.conj(), gm, k3, optimize=True)
    t4 = gm.reshape(trunc.dim, e, trunc.dim, e)
    out = np.einsum("pdx,piqj,qdy->xiyj", k3.conj(), t4, k3, optimize=True)
    he = X.h_dim * e
    return out.reshape(he, he)


# ---------------------------------------------------------------------------
# Cauchy-type operator and Poisson kernel


@dataclass
class CauchyResult:
    matrix: np.ndarray
    min_singular: float


def _min_singular(factor: np.ndarray, lu_piv) -> float:
    """Smallest singular value; exact for small matrices, inverse power
    iteration on the LU factors otherwise."""
    import scipy.linalg as sla

    dim = factor.shape[0]
    if dim <= 600:
        return float(np.linalg.svd(factor, compute_uv=False)[-1])
    x = np.ones(dim, dtype=complex) + 1e-3 * np.arange(dim)
    x /= np.linalg.norm(x)
    growth = 1.0
    for _ in range(12):
        x = sla.lu_solve(lu_piv, x)
        x = sla.lu_solve(lu_piv, x, trans=2)
        growth = float(np.linalg.norm(x))
        x /= growth
    return growth ** -0.5


def cauchy_operator(V: Sequence[Sequence[np.ndarray]], X: PolyballPoint,
                    singular_tol: float = 1e-12) -> CauchyResult:
    """(I (x) Delta_X(I)^(1/2)) prod_i (I - sum_j V_ij (x) X_ij*)^(-1).

    The resolvents are computed by LU solves, never by Neumann summation.
    """
    import scipy.linalg as sla

    if len(V) != X.k or any(len(row) != ni for row, ni in zip(V, X.n)):
        raise ValueError("V and X have different factor shapes")
    m = np.asarray(V[0][0]).shape[0]
    h = X.h_dim
    dim = m * h
    acc = np.eye(dim, dtype=complex)
    min_sv = math.inf
    for i in reversed(range(X.k)):
        a = sum(
            np.kron(np.asarray(V[i][j], dtype=complex), X.X[i][j].conj().T)
            for j in range(X.n[i])
        )
        factor = np.eye(dim, dtype=complex) - a
        try:
            lu_piv = sla.lu_factor(factor)
        except np.linalg.LinAlgError:
            raise SingularResolventError(0.0)
        sv = _min_singular(factor, lu_piv)
        min_sv = min(min_sv, sv)
        if sv <= singular_tol:
            raise SingularResolventError(sv)
        acc = sla.lu_solve(lu_piv, acc)
    root, _, _ = la.psd_sqrt(defect(X))
    out = np.kron(np.eye(m, dtype=complex), root) @ acc
    return CauchyResult(out, min_sv)


@dataclass
class PoissonKernelResult:
    op: FockOperator
    tail_bound: float
    factorization_bound: float


def _lambda_tail(rho: Sequence[float], degrees: Sequence[int]) -> float:
    full = math.prod((1.0 + r) / (1.0 - r) for r in rho)
    kept = math.prod(
        1.0 + 2.0 * sum(r ** p for p in range(1, d + 1))
        for r, d in zip(rho, degrees)
    )
    return full - kept


def poisson_kernel(X: PolyballPoint, trunc: FockTruncation,
                   side: Side = "right",
                   require_tail: float | None = None) -> PoissonKernelResult:
    """Pluriharmonic Poisson kernel sum over index pairs within the box.

    Each term pairs the reversed-word annihilation/creation monomial in the
    chosen universal tuple (right by default) with the X-monomial; terms are
    assembled as exact compressions.  Self-adjoint; PSD up to the reported
    tail.  The factorization bound additionally covers the discrepancy
    against the resolvent-product factorization.
    """
    if X.n != trunc.n:
        raise ValueError("point and truncation have different factor shapes")
    rho = X.row_norms()
    dnorm = la.opnorm(defect(X))
    nilpotent_exact = X.is_jointly_nilpotent() and all(
        d + 1 >= X.h_dim for d in trunc.degrees
    )
    if nilpotent_exact:
        # the index-pair sum is finite and fully inside the box
        tail = 0.0
    elif any(r >= 1.0 for r in rho):
        raise DivergenceError(f"row norms {rho} outside the open ball")
    else:
        tail = _lambda_tail(rho, trunc.degrees)
    if all(r < 1.0 for r in rho):
        # covers the resolvent-side truncation defect as well (Gram columns
        # of the dropped creation shells)
        fact_bound = tail + dnorm * (math.prod(1.0 / (1.0 - r) for r in rho) - 1.0) ** 2
    else:
        fact_bound = math.inf
    if require_tail is not None and tail > require_tail:
        raise DivergenceError(
            f"tail bound {tail:.3e} exceeds requested tolerance {require_tail:.3e}"
        )
    h = X.h_dim
    out = np.zeros((trunc.dim * h, trunc.dim * h), dtype=complex)
    out4 = out.reshape(trunc.dim, h, trunc.dim, h)
    for a, b in lambda_pairs_within_degrees(trunc.n, trunc.degrees):
        src, dst = _poisson_monomial_indices(trunc, a, b, side)
        if src.size == 0:
            continue
        xm = X.monomial(a) @ X.monomial(b).conj().T
        out4[dst, :, src, :] += xm[None, :, :]
    op = FockOperator(trunc, out, coeff_dim=h, hermitian=True)
    return PoissonKernelResult(op, tail, fact_bound)


def _poisson_monomial_indices(trunc: FockTruncation, a: MultiWord, b: MultiWord,
                              side: Side = "right"):
    """Exact compression indices of the universal-tuple monomial paired with
    (a, b): right side R_{a~}* R_{b~} (append b, strip tail a), left side the
    mirror S_{a~}* S_{b~} acting by prepending/stripping heads."""
    maps = []
    for i in range(1, trunc.k + 1):
        ai, bi = a.parts[i - 1], b.parts[i - 1]
        if side == "right":
            def fn(w, ai=ai, bi=bi):
                return _strip_suffix(w.concat(bi), ai)
        else:
            ar, br = ai.reverse(), bi.reverse()

            def fn(w, ar=ar, br=br):
                return _strip_prefix(br.concat(w), ar)
        maps.append(trunc.factor_map(i, fn))
    return trunc.product_map(maps)
