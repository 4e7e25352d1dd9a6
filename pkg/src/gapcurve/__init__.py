"""gapcurve: exact gap functions, singularity classification, and projections
of rational normal curves.

The package computes, in exact arithmetic over the rationals or an odd prime
field:

* gap functions of subspaces and subalgebras of products of truncated power
  series rings, with semigroup membership, standardness, and the singularity
  degree;
* the complete classification of multibranch curve singularities of degree
  at most three (21 types), from either a local ring or a generating linear
  system;
* the full analysis of a linear projection of a rational normal curve:
  basepoint check, ramification clusters, per-cluster singularity types, and
  the genus bound;
* Schubert-stratum data and samplers producing centers that realize a
  prescribed singularity configuration.
"""

from .classify import (
    LocalModel,
    SingularityType,
    classify_ring,
    classify_vector_space,
    concrete_type,
    enumerate_types,
    local_model,
    resolve_ambiguity,
)
from .curve import (
    CurvePoint,
    ExpansionCurveModel,
    Multifiltration,
    RationalNormalCurve,
    multifiltration_dim,
    osc_subspace,
)
from .errors import (
    ClassificationError,
    GapcurveError,
    HypothesisViolationError,
    IndeterminateOverFieldError,
    IrrationalRamificationError,
    MissingUnitError,
    NotStabilizedError,
    StabilizationCapError,
    ValidationError,
)
from .fields import GF, QQ, PrimeField, RationalField, field_from_name
from .gaps import (
    ALGEBRA_CLOSED,
    VECTOR_SPACE,
    GapFunction,
    SemigroupView,
    close_algebra,
    degree,
    gap_eval,
    is_standard,
    key_lemma_holds,
    marked_in_semigroup,
)
from .project import (
    ProjectionCenter,
    ProjectionReport,
    analyze,
    analyze_at_points,
    check_center,
    find_ramification,
    verify_genus_bound,
)
from .schubert import (
    Partition,
    SchubertSpec,
    configuration_codim,
    sample_center,
    sample_configuration,
    stratum_spec,
)
from .series import (
    INF,
    Ambient,
    SeriesSubspace,
    TruncatedSeries,
    quotient_dim,
    series_mul,
    span_reduce,
    valuation,
)

__version__ = "0.1.0"
