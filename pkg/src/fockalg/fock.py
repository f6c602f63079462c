"""Vectors of the truncated Fock space: sparse maps word -> complex coefficient.

The span of {xi_w : |w| <= N} carries the inner product in which the basis
words are orthonormal.  Vectors are stored sparsely since the constructions
of interest have very few nonzero coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .words import BasisIndexer, Word


@dataclass(frozen=True)
class FockVector:
    """Finitely supported vector sum_w c_w xi_w with |w| <= N.

    Treated as immutable; operations return new vectors.
    """

    n: int
    N: int
    coeffs: dict[Word, complex] = field(default_factory=dict)

    def __post_init__(self):
        for w, c in self.coeffs.items():
            if len(w) > self.N:
                raise ValueError(f"word {w!r} longer than truncation {self.N}")
            if w.max_letter() > self.n:
                raise ValueError(f"word {w!r} uses letters beyond alphabet {self.n}")
            if c == 0:
                raise ValueError("zero coefficients should be dropped before construction")

    @staticmethod
    def make(n: int, N: int, coeffs: dict[Word, complex]) -> "FockVector":
        return FockVector(n, N, {w: complex(c) for w, c in coeffs.items() if c != 0})

    @staticmethod
    def basis(n: int, N: int, w: Word) -> "FockVector":
        return FockVector(n, N, {w: 1.0 + 0.0j})

    def coeff(self, w: Word) -> complex:
        return self.coeffs.get(w, 0.0 + 0.0j)

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(c) ** 2 for c in self.coeffs.values())))

    def scale(self, a: complex) -> "FockVector":
        return FockVector.make(self.n, self.N, {w: a * c for w, c in self.coeffs.items()})

    def add(self, other: "FockVector") -> "FockVector":
        _check_space(self, other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0.0) + c
        return FockVector.make(self.n, self.N, out)

    def sub(self, other: "FockVector") -> "FockVector":
        return self.add(other.scale(-1.0))

    def to_dense(self, indexer: BasisIndexer | None = None) -> np.ndarray:
        idx = indexer or BasisIndexer(self.n, self.N)
        vec = np.zeros(idx.size, dtype=complex)
        for w, c in self.coeffs.items():
            vec[idx.index_of(w)] = c
        return vec

    @staticmethod
    def from_dense(vec: np.ndarray, indexer: BasisIndexer) -> "FockVector":
        coeffs = {}
        for i in np.nonzero(vec)[0]:
            coeffs[indexer.word_at(int(i))] = complex(vec[i])
        return FockVector(indexer.n, indexer.N, coeffs)

    def to_records(self) -> list[dict]:
        """Interchange form: one {word, re, im} record per nonzero coefficient."""
        return [
            {"word": str(w), "re": c.real, "im": c.imag}
            for w, c in sorted(self.coeffs.items(), key=lambda it: (len(it[0]), it[0].letters))
        ]

    @staticmethod
    def from_records(n: int, N: int, records: list[dict]) -> "FockVector":
        return FockVector.make(
            n, N, {Word.parse(r["word"]): complex(r["re"], r["im"]) for r in records}
        )


def _check_space(xi: FockVector, eta: FockVector) -> None:
    if (xi.n, xi.N) != (eta.n, eta.N):
        raise ValueError(f"space mismatch: ({xi.n},{xi.N}) vs ({eta.n},{eta.N})")


def inner(xi: FockVector, eta: FockVector) -> complex:
    """sum_w xi_w * conj(eta_w); conjugate-linear in the second argument."""
    _check_space(xi, eta)
    total = 0.0 + 0.0j
    for w, c in xi.coeffs.items():
        d = eta.coeffs.get(w)
        if d is not None:
            total += c * d.conjugate()
    return total


def project_level(xi: FockVector, k: int) -> FockVector:
    """P_k: keep exactly the length-k coefficients."""
    if not 0 <= k <= xi.N:
        raise ValueError(f"level {k} outside 0..{xi.N}")
    return FockVector(xi.n, xi.N, {w: c for w, c in xi.coeffs.items() if len(w) == k})


def random_vector(n: int, N: int, seed: int) -> FockVector:
    """Deterministic pseudo-random unit vector supported on the full basis."""
    idx = BasisIndexer(n, N)
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal(idx.size) + 1j * rng.standard_normal(idx.size)
    raw /= np.linalg.norm(raw)
    return FockVector(n, N, {idx.word_at(i): complex(raw[i]) for i in range(idx.size)})
