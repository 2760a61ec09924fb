"""Certify Ramanujan (tempered) primes for GL(3) automorphic data.

The main entry points are re-exported here; see the submodules for the
full surface.
"""

from .adjoint import (
    AdjointClass8,
    RamanujanCertificate,
    Reason,
    Verdict,
    adjoint_class,
    adjoint_coefficient,
    adjoint_coefficients,
    certify_prime,
    local_factor_adjoint,
    local_factor_rankin,
    local_zeta,
)
from .archimedean import (
    ArchAdjointSet,
    ArchParams,
    adjoint_gamma_factor,
    arch_adjoint_set,
    gamma_R,
    pole_order_at_zero,
    random_arch_params,
)
from .dirichlet import (
    LogDirichletSeries,
    build_adjoint_log_series,
    evaluate_incomplete,
    positive_type_scan,
    witness_report,
)
from .errors import *  # noqa: F401,F403
from .exact import GaussianRational
from .ingest import (
    GL3Corpus,
    NewformRecord,
    delta_newform,
    delta_qexpansion,
    lift_newform,
    parse_corpus,
    serialize_corpus,
    sym_square_datum,
)
from .satake import (
    HeckeLocalDatum,
    NonTemperedShape,
    Temperedness,
    UnitaryClass3,
    class_of,
    classify,
    datum_from_class,
    elementary_symmetrics,
    power_traces,
    random_class,
    roots_oracle,
    trace_bound_certificate,
    trace_squared_formula,
)

__version__ = "0.1.0"
