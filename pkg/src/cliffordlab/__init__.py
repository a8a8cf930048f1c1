"""cliffordlab: a desk-scale workbench for finite Clifford semigroups.

Structure analysis of finite semigroups, strong-semilattice assembly and
decomposition, explicit series/isometric metrics with rigorous truncation
bounds, finite-topology openness equivalences, and numerical probes of
chart models around an idempotent.
"""

from .core import (
    Classification,
    CliffordDecomposition,
    FiniteSemigroup,
    bonding_maps,
    classify,
    green_j_classes,
    is_trivial_clifford,
    validate_semigroup,
)
from .errors import SchemaError, WorkbenchError
from .metrics import (
    BowmanMetricData,
    Point,
    YeagerMetricData,
    bowman_data_from_spec,
    bowman_distance,
    disjoint_union_distance,
    flat_bowman_data,
    metric_axiom_suite,
    yeager_distance,
)
from .order import (
    FinitePoset,
    flat_model,
    is_basis,
    lawson_basic,
    validate_poset,
    way_below_all,
    way_below_by_definition,
)
from .semilattice import (
    StrongSemilatticeSpec,
    assemble,
    decompose,
    direct_product,
    eta_injectivity,
    iso_equivalent,
    validate_spec,
)
from .topology import (
    FiniteTopology,
    TopologicalSemigroupModel,
    all_topologies,
    continuity_check,
    prop34_equivalences,
    validate_topology,
)
from .charts import (
    ChartModel,
    additive_model,
    affine_model,
    differentiability_probe,
    fixed_point_scan,
    min_plus_model,
    polynomial_model,
    rigidity_report,
)

__version__ = "0.1.0"

__all__ = [
    "BowmanMetricData",
    "ChartModel",
    "Classification",
    "CliffordDecomposition",
    "FinitePoset",
    "FiniteSemigroup",
    "FiniteTopology",
    "Point",
    "SchemaError",
    "StrongSemilatticeSpec",
    "TopologicalSemigroupModel",
    "WorkbenchError",
    "YeagerMetricData",
    "additive_model",
    "affine_model",
    "all_topologies",
    "assemble",
    "bonding_maps",
    "bowman_data_from_spec",
    "bowman_distance",
    "classify",
    "continuity_check",
    "decompose",
    "differentiability_probe",
    "direct_product",
    "disjoint_union_distance",
    "eta_injectivity",
    "fixed_point_scan",
    "flat_bowman_data",
    "flat_model",
    "green_j_classes",
    "is_basis",
    "is_trivial_clifford",
    "iso_equivalent",
    "lawson_basic",
    "metric_axiom_suite",
    "min_plus_model",
    "polynomial_model",
    "prop34_equivalences",
    "rigidity_report",
    "validate_poset",
    "validate_semigroup",
    "validate_spec",
    "validate_topology",
    "way_below_all",
    "way_below_by_definition",
    "yeager_distance",
]
