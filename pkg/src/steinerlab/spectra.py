"""Signed adjacency and upper Laplacian operators on (d-1)-forms.

Skew-symmetric forms on oriented (d-1)-faces have an orthonormal basis
indexed by one chosen orientation per face (sorted representative, sign +1).
In that basis the adjacency operator picks up a sign per orientation-
compatible adjacency, and the upper Laplacian is degree-diagonal minus
adjacency.  The trivial kernel of the Laplacian is the coboundary image
from (d-2)-forms, whose dimension is computed as an exact integer rank.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, gcd

import numpy as np

from .complexes import Face, PureComplex, all_faces, facets_of

__all__ = [
    "FormBasis",
    "SpectralSummary",
    "adjacency_matrix",
    "laplacian_matrix",
    "eigenvalues",
    "trivial_zero_count",
    "esd",
    "moments",
    "spectral_summary",
    "signed_trace",
    "exact_rank",
]

SYMMETRY_RTOL = 1e-12
ZERO_RTOL = 1e-8
AMBIGUOUS_FACTOR = 1e3
EXACT_RANK_MAX_COLS = 5000
SIGNED_TRACE_MAX_LENGTH = 10


@dataclass(frozen=True)
class FormBasis:
    """Ordered positively oriented (d-1)-faces indexing the form space."""

    faces: tuple[Face, ...]

    @classmethod
    def from_complex(cls, X: PureComplex) -> "FormBasis":
        return cls(tuple(X.facet_iter()))

    def index(self) -> dict[Face, int]:
        return {face: i for i, face in enumerate(self.faces)}

    def __len__(self) -> int:
        return len(self.faces)


def adjacency_matrix(X: PureComplex, basis: FormBasis | None = None) -> np.ndarray:
    """Matrix of the signed adjacency operator on the chosen form basis.

    Each d-face tau and facet pair (i, j) contributes (-1)**(i+j+1) to the
    entry of the two facets: the sign is +1 exactly when the orientation of
    facet j induced alongside +facet i is the negative representative.  For
    d = 1 this is the ordinary graph adjacency matrix.
    """
    basis = basis or FormBasis.from_complex(X)
    index = basis.index()
    m = len(basis)
    A = np.zeros((m, m))
    for tau in X.d_faces:
        facets = facets_of(tau)
        for i in range(len(facets)):
            for j in range(i + 1, len(facets)):
                val = 1.0 if (i + j) % 2 == 1 else -1.0
                a, b = index[facets[i]], index[facets[j]]
                A[a, b] += val
                A[b, a] += val
    return A


def laplacian_matrix(X: PureComplex, basis: FormBasis | None = None) -> np.ndarray:
    """Upper Laplacian deg(sigma) f(sigma) - sum of adjacent values; PSD."""
    basis = basis or FormBasis.from_complex(X)
    A = adjacency_matrix(X, basis)
    D = np.diag([float(X.degree(face)) for face in basis.faces])
    return D - A


def eigenvalues(M: np.ndarray) -> np.ndarray:
    """Full ascending spectrum of a symmetric matrix (dense LAPACK solve)."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    scale = max(1.0, float(np.abs(M).max()) if M.size else 0.0)
    asymmetry = float(np.abs(M - M.T).max()) if M.size else 0.0
    if asymmetry > SYMMETRY_RTOL * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    return np.linalg.eigvalsh(M)


def exact_rank(rows: list[list[int]]) -> int:
    """Rank over the rationals of an integer matrix, by fraction-free elimination.

    Incremental row reduction with cross-multiplication and gcd normalization;
    no floating point is involved, so the result is exact.
    """
    basis: list[tuple[int, list[int]]] = []  # (pivot column, normalized row)
    rank = 0
    for row in rows:
        row = list(row)
        for pivot_col, pivot_row in basis:
            coeff = row[pivot_col]
            if coeff:
                lead = pivot_row[pivot_col]
                for c in range(len(row)):
                    row[c] = row[c] * lead - coeff * pivot_row[c]
        lead_col = next((c for c, v in enumerate(row) if v), None)
        if lead_col is None:
            continue
        g = 0
        for v in row:
            g = gcd(g, abs(v))
        if g > 1:
            row = [v // g for v in row]
        basis.append((lead_col, row))
        basis.sort(key=lambda item: item[0])
        rank += 1
    return rank


def _coboundary_rows(n: int, d: int):
    """Rows of the coboundary matrix from (d-2)-forms of the complete skeleton.

    One row per (d-1)-face sigma; the column of the (d-2)-face omitting
    sigma's i-th vertex holds (-1)**i.  For d = 1 the single column is the
    empty face and every row is (1,).
    """
    cols = {face: idx for idx, face in enumerate(combinations(range(1, n + 1), d - 1))}
    width = len(cols)
    for sigma in all_faces(n, d - 1):
        row = [0] * width
        for i, sub in enumerate(facets_of(sigma)):
            row[cols[sub]] = 1 if i % 2 == 0 else -1
        yield row


@lru_cache(maxsize=None)
def _skeleton_coboundary_rank(n: int, d: int) -> int:
    n_cols = comb(n, d - 1)
    if n_cols <= EXACT_RANK_MAX_COLS:
        return exact_rank(list(_coboundary_rows(n, d)))
    M = np.array(list(_coboundary_rows(n, d)), dtype=float)
    svals = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(svals > ZERO_RTOL * svals[0]))


def trivial_zero_count(X: PureComplex) -> int:
    """Dimension of the trivial Laplacian kernel (coboundary image from below).

    For the complete (d-1)-skeleton this equals C(n-1, d-1); it is computed
    as an exact rank because it gates the spanning-tree product.
    """
    return _skeleton_coboundary_rank(X.n, X.d)


@dataclass(frozen=True)
class SpectralSummary:
    """Eigenvalues, trivial-zero count, moments and histogram of a spectrum."""

    eigenvalues: np.ndarray
    moments: tuple[float, ...]
    hist_edges: np.ndarray
    hist_masses: np.ndarray
    trivial_zero_count: int | None = None


def moments(M: np.ndarray, lmax: int) -> list[float]:
    """Spectral moments (1/m) tr(M^l) for l = 0..lmax, from the eigenvalues."""
    eigs = eigenvalues(M)
    return [float(np.mean(eigs**ell)) for ell in range(lmax + 1)]


def _summary_from_eigs(
    eigs: np.ndarray, bins: int, lmax: int, trivial_zeros: int | None
) -> SpectralSummary:
    mom = tuple(float(np.mean(eigs**ell)) for ell in range(lmax + 1))
    lo, hi = float(eigs.min()), float(eigs.max())
    if hi <= lo:
        hi = lo + 1.0
    masses, edges = np.histogram(eigs, bins=bins, range=(lo, hi))
    return SpectralSummary(
        eigenvalues=eigs,
        moments=mom,
        hist_edges=edges,
        hist_masses=masses / len(eigs),
        trivial_zero_count=trivial_zeros,
    )


def esd(M: np.ndarray, bins: int = 40, lmax: int = 8) -> SpectralSummary:
    """Empirical spectral distribution of a symmetric matrix."""
    return _summary_from_eigs(eigenvalues(M), bins, lmax, None)


def spectral_summary(
    X: PureComplex, operator: str = "laplacian", bins: int = 40, lmax: int = 8
) -> SpectralSummary:
    """ESD of the complex's Laplacian or adjacency, with trivial-zero accounting."""
    if operator == "laplacian":
        M = laplacian_matrix(X)
    elif operator == "adjacency":
        M = adjacency_matrix(X)
    else:
        raise ValueError(f"unknown operator {operator!r}")
    return _summary_from_eigs(eigenvalues(M), bins, lmax, trivial_zero_count(X))


def zero_threshold(eigs: np.ndarray) -> float:
    """Classification threshold for numerical zeros, scaled to the top eigenvalue."""
    top = float(eigs[-1]) if len(eigs) else 0.0
    return ZERO_RTOL * max(1.0, top)


def warn_ambiguous_zeros(eigs: np.ndarray) -> None:
    """Warn when eigenvalues land in the gray zone just above the zero cutoff."""
    eps = zero_threshold(eigs)
    gray = np.sum((eigs > eps) & (eigs < AMBIGUOUS_FACTOR * eps))
    if gray:
        warnings.warn(
            f"{gray} eigenvalue(s) in the ambiguous zone ({eps:.3e}, {AMBIGUOUS_FACTOR * eps:.3e}); "
            "zero classification may be unreliable",
            RuntimeWarning,
            stacklevel=3,
        )


def _oriented_adjacency_ids(X: PureComplex) -> tuple[list[Face], list[list[int]]]:
    """Integer-id adjacency lists of the oriented line-graph.

    Faces with positive degree get ids 2*i (sign +1) and 2*i + 1 (sign -1);
    for d = 1 only the even ids are populated.
    """
    faces = sorted(X.degree_index)
    index = {face: i for i, face in enumerate(faces)}
    nbrs: list[list[int]] = [[] for _ in range(2 * len(faces))]
    for tau in X.d_faces:
        facets = facets_of(tau)
        for i, fi in enumerate(facets):
            a = 2 * index[fi]
            for j, fj in enumerate(facets):
                if i == j:
                    continue
                b = 2 * index[fj]
                if X.d == 1:
                    nbrs[a].append(b)
                elif (i + j) % 2 == 1:
                    nbrs[a].append(b)  # +1 neighbor of +1
                    nbrs[a + 1].append(b + 1)
                else:
                    nbrs[a].append(b + 1)
                    nbrs[a + 1].append(b)
    return faces, nbrs


def signed_trace(X: PureComplex, length: int) -> int:
    """Exact integer tr(A^l) via signed closed-walk counts on the oriented line-graph.

    Sums phi_l(sigma+, sigma+) - phi_l(sigma+, sigma-) over one orientation
    per face; walk counting is combinatorial, so the result carries no
    floating error.
    """
    if length < 0:
        raise ValueError("walk length must be >= 0")
    if length > SIGNED_TRACE_MAX_LENGTH:
        raise ValueError(
            f"length {length} exceeds guard {SIGNED_TRACE_MAX_LENGTH} (growth is (dk)^l)"
        )
    if length == 0:
        return comb(X.n, X.d)
    faces, nbrs = _oriented_adjacency_ids(X)
    total = 0
    for i in range(len(faces)):
        start = 2 * i
        state: dict[int, int] = {start: 1}
        for _ in range(length):
            nxt: dict[int, int] = {}
            for node, count in state.items():
                for nb in nbrs[node]:
                    nxt[nb] = nxt.get(nb, 0) + count
            state = nxt
        total += state.get(start, 0) - (state.get(start + 1, 0) if X.d > 1 else 0)
    return total
