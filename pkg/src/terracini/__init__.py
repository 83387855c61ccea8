"""Exact verification of Terracini loci of plane and low-dimensional point sets.

All arithmetic is over a prime field F_p with p around 2^60, or over the dual
numbers F_p[eps] for first-order derivatives.  Nothing is floating point.
"""

from .arith import Dual, FieldContext, field_context, random_primes
from .fatpoints import (
    CohomologyReport,
    PointConfiguration,
    cohomology,
    is_minimally_terracini,
    is_terracini,
    prefix_cohomology,
)
from .families import FamilySample, FamilySpec, catalog, get_family, sample
from .dim_est import JacobianReport, check_inequalities, jacobian_rank, spread_estimate
from .plane_curves import (
    SingularLocusReport,
    general_nodal_member,
    is_node,
    net_discriminant_sample,
    severi_differential_rank,
    singular_locus,
)
from .polyring import HomogPoly

__all__ = [
    "CohomologyReport", "Dual", "FamilySample", "FamilySpec", "FieldContext", "HomogPoly", "JacobianReport",
    "PointConfiguration", "SingularLocusReport", "catalog", "check_inequalities", "cohomology", "field_context",
    "general_nodal_member", "get_family", "is_minimally_terracini", "is_node", "is_terracini", "jacobian_rank",
    "net_discriminant_sample", "prefix_cohomology", "random_primes", "sample", "severi_differential_rank",
    "singular_locus", "spread_estimate",
]
