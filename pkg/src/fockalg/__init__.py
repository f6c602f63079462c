"""Numerical toolkit for the truncated Fock space over the free semigroup:
word combinatorics, sparse Fock vectors, symbol/matrix operator compressions,
a scalar series engine, functional calculus, and reproducible experiments."""

from .words import BasisCapExceeded, BasisIndexer, Word, concat, enumerate_words, reverse, strip_prefix, strip_suffix, word
from .fock import FockVector, inner, project_level, random_vector
from .operators import (
    FreeSeries,
    TruncOp,
    adjoint,
    adjoint_power_orbit,
    cesaro_sum,
    commutant_residual,
    compose,
    creation_op,
    decompose_at,
    defect_ranks,
    fourier_of,
    identity_op,
    op_from_matrix,
    op_norm,
    range_complement_level_dims,
    recompose,
    series_to_op,
)
from .hardy import ScalarSeries, boundary_modulus, harmonic_series, partial_sum_sup, reciprocal
from .calculus import (
    CalculusContext,
    apply_series,
    factorization_residual,
    h2_times_isometry,
    irreducibility_hypothesis,
    range_orthogonality,
    remark_pair,
    search_ball_factorizations,
    verify_factorization,
)
from .report import Report
from . import experiments

__version__ = "0.1.0"
