"""Truncated operators on the Fock basis.

An element of the left algebra is determined by its noncommutative symbol
sum_w a_w L_w (the Fourier coefficients a_w = (X xi_1, xi_w)).  Operators are
realized on the basis {xi_w : |w| <= N} in one of two ways:

* symbol-backed: the symbol is kept and columns are produced lazily by word
  concatenation; this works at any truncation level, including ones whose
  basis could never be materialized,
* matrix-backed: an explicit (dense or sparse) compression matrix, needed for
  SVD-style diagnostics and for operators that are not given by a symbol.

Every operator carries its exactness frontier: the largest level m such that
the action on vectors supported in levels <= m agrees with the untruncated
operator.  Identities are only asserted on that region, since overflow past
level N silently corrupts products and adjoints outside it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .fock import FockVector
from .words import BasisCapExceeded, BasisIndexer, Word, concat, enumerate_words, strip_prefix, strip_suffix

DENSE_CAP = 4096

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class FreeSeries:
    """Sparse noncommutative power series sum_w a_w over words in letters 1..n."""

    n: int
    coeffs: dict[Word, complex] = field(default_factory=dict)

    def __post_init__(self):
        for w, c in self.coeffs.items():
            if w.max_letter() > self.n:
                raise ValueError(f"word {w!r} uses letters beyond alphabet {self.n}")
            if c == 0:
                raise ValueError("zero coefficients should be dropped before construction")

    @staticmethod
    def make(n: int, coeffs: dict[Word, complex]) -> "FreeSeries":
        return FreeSeries(n, {w: complex(c) for w, c in coeffs.items() if c != 0})

    @staticmethod
    def zero(n: int) -> "FreeSeries":
        return FreeSeries(n, {})

    @staticmethod
    def one(n: int) -> "FreeSeries":
        return FreeSeries(n, {Word(): 1.0 + 0.0j})

    @staticmethod
    def delta(n: int, w: Word, c: complex = 1.0) -> "FreeSeries":
        return FreeSeries.make(n, {w: c})

    def coeff(self, w: Word) -> complex:
        return self.coeffs.get(w, 0.0 + 0.0j)

    def degree(self) -> int:
        """Largest word length in the support (0 for the zero series)."""
        return max((len(w) for w in self.coeffs), default=0)

    def support(self) -> list[Word]:
        return sorted(self.coeffs, key=lambda w: (len(w), w.letters))

    def l2_norm(self) -> float:
        return float(np.sqrt(sum(abs(c) ** 2 for c in self.coeffs.values())))

    def sup_abs(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def truncate(self, max_degree: int) -> "FreeSeries":
        return FreeSeries(self.n, {w: c for w, c in self.coeffs.items() if len(w) <= max_degree})

    def scale(self, a: complex) -> "FreeSeries":
        return FreeSeries.make(self.n, {w: a * c for w, c in self.coeffs.items()})

    def add(self, other: "FreeSeries") -> "FreeSeries":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0.0) + c
        return FreeSeries.make(self.n, out)

    def mul(self, other: "FreeSeries", max_degree: Optional[int] = None) -> "FreeSeries":
        """Free convolution: (st)_w = sum over factorizations w = uv of s_u t_v."""
        out: dict[Word, complex] = {}
        for u, a in self.coeffs.items():
            for v, b in other.coeffs.items():
                if max_degree is not None and len(u) + len(v) > max_degree:
                    continue
                w = concat(u, v)
                out[w] = out.get(w, 0.0) + a * b
        return FreeSeries.make(self.n, out)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other.scale(-1.0))

    def __mul__(self, other):
        if isinstance(other, FreeSeries):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def to_records(self) -> list[dict]:
        return [
            {"word": str(w), "re": c.real, "im": c.imag}
            for w, c in sorted(self.coeffs.items(), key=lambda it: (len(it[0]), it[0].letters))
        ]

    @staticmethod
    def from_records(n: int, records: list[dict]) -> "FreeSeries":
        return FreeSeries.make(
            n, {Word.parse(r["word"]): complex(r["re"], r["im"]) for r in records}
        )


class TruncOp:
    """Operator on the truncated basis, symbol-backed or matrix-backed."""

    def __init__(self, n: int, N: int, *, symbol: Optional[FreeSeries] = None,
                 side: Optional[str] = None, matrix=None, frontier: Optional[int] = None):
        if (symbol is None) == (matrix is None):
            raise ValueError("exactly one of symbol or matrix must be given")
        if symbol is not None and side not in (LEFT, RIGHT):
            raise ValueError("symbol-backed operator needs side 'left' or 'right'")
        self.n = n
        self.N = N
        self.symbol = symbol
        self.side = side if symbol is not None else None
        self._matrix = matrix
        if frontier is None:
            frontier = N - symbol.degree() if symbol is not None else N
        self.frontier = min(frontier, N)
        self._indexer: Optional[BasisIndexer] = None

    # -- representation ----------------------------------------------------

    @property
    def is_symbolic(self) -> bool:
        return self.symbol is not None

    def indexer(self) -> BasisIndexer:
        if self._indexer is None:
            self._indexer = BasisIndexer(self.n, self.N)
        return self._indexer

    @property
    def matrix(self):
        """Compression matrix; materialized on first use (may hit the basis cap)."""
        if self._matrix is None:
            self._matrix = _materialize(self.symbol, self.side, self.n, self.N, self.indexer())
        return self._matrix

    def dense(self) -> np.ndarray:
        m = self.matrix
        if sp.issparse(m):
            if m.shape[0] > DENSE_CAP:
                raise BasisCapExceeded(
                    f"dense diagnostics limited to basis <= {DENSE_CAP}, have {m.shape[0]}"
                )
            return m.toarray()
        return m

    # -- vector action ------------------------------------------------------

    def apply(self, xi: FockVector) -> FockVector:
        if (xi.n, xi.N) != (self.n, self.N):
            raise ValueError("vector lives in a different truncated space")
        if self.is_symbolic:
            out: dict[Word, complex] = {}
            for v, c in xi.coeffs.items():
                for w, a in self.symbol.coeffs.items():
                    if len(w) + len(v) > self.N:
                        continue
                    t = concat(w, v) if self.side == LEFT else concat(v, w)
                    out[t] = out.get(t, 0.0) + a * c
            return FockVector.make(self.n, self.N, out)
        idx = self.indexer()
        return FockVector.from_dense(np.asarray(self.matrix @ xi.to_dense(idx)).ravel(), idx)

    def apply_adjoint(self, xi: FockVector) -> FockVector:
        if (xi.n, xi.N) != (self.n, self.N):
            raise ValueError("vector lives in a different truncated space")
        if self.is_symbolic:
            strip = strip_prefix if self.side == LEFT else strip_suffix
            out: dict[Word, complex] = {}
            for v, c in xi.coeffs.items():
                for w, a in self.symbol.coeffs.items():
                    t = strip(v, w)
                    if t is not None:
                        out[t] = out.get(t, 0.0) + a.conjugate() * c
            return FockVector.make(self.n, self.N, out)
        idx = self.indexer()
        m = self.matrix
        mh = m.conj().T if not sp.issparse(m) else m.conjugate().transpose()
        return FockVector.from_dense(np.asarray(mh @ xi.to_dense(idx)).ravel(), idx)

    # -- arithmetic ----------------------------------------------------------

    def _same_space(self, other: "TruncOp") -> None:
        if (self.n, self.N) != (other.n, other.N):
            raise ValueError("operator truncations do not match")

    def __add__(self, other: "TruncOp") -> "TruncOp":
        self._same_space(other)
        if self.is_symbolic and other.is_symbolic and self.side == other.side:
            s = self.symbol.add(other.symbol)
            return TruncOp(self.n, self.N, symbol=s, side=self.side)
        return TruncOp(self.n, self.N, matrix=self.matrix + other.matrix,
                       frontier=min(self.frontier, other.frontier))

    def __sub__(self, other: "TruncOp") -> "TruncOp":
        return self + other.scale(-1.0)

    def scale(self, a: complex) -> "TruncOp":
        if self.is_symbolic:
            return TruncOp(self.n, self.N, symbol=self.symbol.scale(a), side=self.side,
                           frontier=self.frontier)
        return TruncOp(self.n, self.N, matrix=self.matrix * a, frontier=self.frontier)

    def __rmul__(self, a) -> "TruncOp":
        return self.scale(a)


def _materialize(symbol: FreeSeries, side: str, n: int, N: int, idx: BasisIndexer):
    size = idx.size
    dense = size <= DENSE_CAP
    if dense:
        m = np.zeros((size, size), dtype=complex)
    else:
        rows, cols, vals = [], [], []
    for w, a in symbol.coeffs.items():
        d = len(w)
        # columns at levels > N - d overflow and stay zero
        for j in range(idx.level_offset(N - d + 1)):
            v = idx.word_at(j)
            t = concat(w, v) if side == LEFT else concat(v, w)
            i = idx.index_of(t)
            if dense:
                m[i, j] += a
            else:
                rows.append(i)
                cols.append(j)
                vals.append(a)
    if dense:
        return m
    return sp.csr_matrix((vals, (rows, cols)), shape=(size, size), dtype=complex)


# -- constructors ------------------------------------------------------------


def creation_op(side: str, w: Word, n: int, N: int) -> TruncOp:
    """L_w (xi_v -> xi_{wv}) or R_w (xi_v -> xi_{vw}); overflow past level N drops."""
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if len(w) > N:
        raise ValueError(f"|w| = {len(w)} exceeds truncation {N}")
    return TruncOp(n, N, symbol=FreeSeries.delta(n, w), side=side)


def series_to_op(s: FreeSeries, n: int, N: int, side: str = LEFT) -> TruncOp:
    """Realize the symbol s on the truncated basis; frontier = N - deg(s)."""
    if s.n != n:
        raise ValueError("series alphabet does not match")
    if s.degree() > N:
        raise ValueError(f"symbol degree {s.degree()} exceeds truncation {N}")
    return TruncOp(n, N, symbol=s, side=side)


def identity_op(n: int, N: int) -> TruncOp:
    return series_to_op(FreeSeries.one(n), n, N)


def op_from_matrix(matrix, n: int, N: int, frontier: Optional[int] = None) -> TruncOp:
    return TruncOp(n, N, matrix=matrix, frontier=frontier)


# -- Fourier data -------------------------------------------------------------


def fourier_of(X: TruncOp, depth: int) -> FreeSeries:
    """Coefficients a_w = (X xi_1, xi_w) for |w| <= depth."""
    if depth > X.N:
        raise ValueError(f"depth {depth} exceeds truncation {X.N}")
    if X.is_symbolic:
        return X.symbol.truncate(depth)
    idx = X.indexer()
    m = X.matrix
    col = np.asarray(m[:, [0]].toarray()).ravel() if sp.issparse(m) else m[:, 0]
    upto = idx.level_offset(depth + 1)
    coeffs = {}
    for i in range(upto):
        if col[i] != 0:
            coeffs[idx.word_at(i)] = complex(col[i])
    return FreeSeries(X.n, coeffs)


def decompose_at(s: FreeSeries, k: int) -> tuple[dict[Word, complex], dict[Word, FreeSeries]]:
    """Graded splitting at level k.

    Returns the scalars {a_w : |w| < k} and the corner series {X_w : |w| = k}
    with (X_w)_v = a_{wv}, so that sum_{|w|<k} a_w L_w + sum_{|w|=k} L_w X_w
    rebuilds s exactly (words partition by their length-k prefix).
    """
    if k < 1:
        raise ValueError("need k >= 1")
    scalars: dict[Word, complex] = {}
    corner_coeffs: dict[Word, dict[Word, complex]] = {w: {} for w in enumerate_words(s.n, k)}
    for t, a in s.coeffs.items():
        if len(t) < k:
            scalars[t] = a
        else:
            w = Word(t.letters[:k])
            v = Word(t.letters[k:])
            corner_coeffs[w][v] = a
    corners = {w: FreeSeries(s.n, cs) for w, cs in corner_coeffs.items()}
    return scalars, corners


def recompose(n: int, k: int, scalars: dict[Word, complex], corners: dict[Word, FreeSeries]) -> FreeSeries:
    """Inverse of decompose_at: sum scalars plus prefixed corner series."""
    out = FreeSeries.make(n, scalars)
    for w, Xw in corners.items():
        out = out.add(FreeSeries.delta(n, w).mul(Xw))
    return out


# -- algebraic operations ------------------------------------------------------


def adjoint(X: TruncOp) -> TruncOp:
    """Conjugate transpose of the compression.

    For a symbol-backed operator the adjoint only lowers levels, so its
    compression is exact on every stored level (frontier N).
    """
    m = X.matrix
    mh = m.conj().T.copy() if not sp.issparse(m) else m.conjugate().transpose().tocsr()
    return TruncOp(X.n, X.N, matrix=mh, frontier=X.N if X.is_symbolic else X.frontier)


def compose(X: TruncOp, Y: TruncOp) -> TruncOp:
    """X then Y on the right (matrix product X @ Y, i.e. Y acts first)."""
    X._same_space(Y)
    if X.is_symbolic and Y.is_symbolic and X.side == Y.side:
        # L_u L_v = L_{uv} while R_u R_v = R_{vu}
        prod = X.symbol.mul(Y.symbol, max_degree=X.N) if X.side == LEFT \
            else Y.symbol.mul(X.symbol, max_degree=X.N)
        frontier = max(X.N - (X.symbol.degree() + Y.symbol.degree()), -1)
        return TruncOp(X.n, X.N, symbol=prod, side=X.side, frontier=frontier)
    return TruncOp(X.n, X.N, matrix=X.matrix @ Y.matrix,
                   frontier=min(X.frontier, Y.frontier))


# -- diagnostics ----------------------------------------------------------------


def _spectral_norm(m) -> float:
    if sp.issparse(m):
        if m.shape[0] <= DENSE_CAP:
            m = m.toarray()
        else:
            if m.nnz == 0:
                return 0.0
            try:
                s = spla.svds(m.astype(complex), k=1, return_singular_vectors=False)
                return float(s[0])
            except Exception:
                # power iteration on m^H m as a fallback
                rng = np.random.default_rng(0)
                x = rng.standard_normal(m.shape[1]) + 1j * rng.standard_normal(m.shape[1])
                x /= np.linalg.norm(x)
                val = 0.0
                for _ in range(200):
                    y = m.conjugate().transpose() @ (m @ x)
                    nrm = np.linalg.norm(y)
                    if nrm == 0:
                        return 0.0
                    x = y / nrm
                    val = nrm
                return float(np.sqrt(val))
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def op_norm(X: TruncOp) -> float:
    """Largest singular value of the compression (a lower bound for the
    norm of the untruncated operator, labelled 'compression norm' in reports)."""
    return _spectral_norm(X.matrix)


def numerical_rank(m: np.ndarray, tol: float = 1e-9, floor: float = 1e-12) -> int:
    """Count singular values >= tol * sigma_max.

    The absolute floor stops a numerically-zero matrix (sigma_max at roundoff
    scale) from ranking its own noise; in-scope matrices carry O(1) singular
    values with wide gaps.
    """
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] <= floor:
        return 0
    return int(np.sum(s >= max(tol * s[0], floor)))


def commutant_residual(X: TruncOp) -> float:
    """max_i of the spectral norm of (X R_i - R_i X) restricted to input
    levels <= frontier - 1; vanishes exactly when X is the compression of a
    left-symbol operator, within the exact region."""
    if X.frontier < 1:
        return 0.0
    idx = X.indexer()
    cols = idx.level_offset(X.frontier)
    worst = 0.0
    for i in range(1, X.n + 1):
        R = creation_op(RIGHT, Word((i,)), X.n, X.N).matrix
        D = X.matrix @ R - R @ X.matrix
        D = D[:, :cols]
        worst = max(worst, _spectral_norm(D))
    return worst


def adjoint_power_orbit(L: TruncOp, xi: FockVector, kmax: int, tol: float = 1e-9) -> list[float]:
    """The sequence ||(L*)^k xi|| for k = 0..kmax.

    Adjoints of symbol operators never raise levels, so the orbit is exact at
    any truncation holding xi.  Inputs whose compression norm exceeds 1 are
    flagged with a warning but still computed; the decay mechanism only needs
    |a_0| < 1.
    """
    try:
        nrm = op_norm(L)
    except BasisCapExceeded:
        nrm = None
    if nrm is not None and nrm > 1 + tol:
        warnings.warn(
            f"operator has compression norm {nrm:.6f} > 1; orbit computed anyway",
            stacklevel=2,
        )
    vals = [xi.norm()]
    vec = xi
    for _ in range(kmax):
        vec = L.apply_adjoint(vec)
        vals.append(vec.norm())
    return vals


def cesaro_sum(s: FreeSeries, k: int) -> FreeSeries:
    """Fejer-weighted truncation sum_{|v|<k} (1 - |v|/k) a_v."""
    if k < 1:
        raise ValueError("need k >= 1")
    return FreeSeries.make(
        s.n, {v: (1.0 - len(v) / k) * a for v, a in s.coeffs.items() if len(v) < k}
    )


def defect_ranks(L: TruncOp, tol: float = 1e-9) -> tuple[int, int]:
    """(rank(I - L L*), rank(I - L* L)) by singular values >= tol * sigma_max."""
    m = L.dense()
    eye = np.eye(m.shape[0], dtype=complex)
    return (
        numerical_rank(eye - m @ m.conj().T, tol),
        numerical_rank(eye - m.conj().T @ m, tol),
    )


def range_complement_level_dims(L: TruncOp, k: int, tol: float = 1e-9) -> int:
    """Level-k dimension of the range complement: n^k - rank(P_k L P_{<k}).

    Requires (L xi_1, xi_1) = 0 so that the range graded by levels comes only
    from strictly lower levels.
    """
    if not 1 <= k <= L.frontier:
        raise ValueError(f"need 1 <= k <= frontier ({L.frontier}), got {k}")
    m = L.dense()
    if abs(m[0, 0]) > tol:
        raise ValueError(f"(L xi_1, xi_1) = {m[0, 0]:.3e} is not 0; hypothesis violated")
    idx = L.indexer()
    block = m[idx.level_slice(k), : idx.level_offset(k)]
    return L.n**k - numerical_rank(block, tol)
