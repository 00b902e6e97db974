"""Constructive topology of locally standard (Z2)^n-actions.

Orbit spaces are stratified simplicial complexes with facet colorings and
bundle cocycles; the glue-back construction rebuilds the acted-on space
as a Delta-complex with an explicit action, and everything downstream
(homology, fixed sets, surgery, theorem checks) is exact.
"""

from .buildm import (
    BuildError,
    BuiltManifold,
    build,
    components,
    euler_characteristic_predicted,
    fixed_subcomplex,
    orbit_quotient,
)
from .catalog import CatalogError, default_build, expected_profiles, make
from .coloring import (
    Cocycle,
    Coloring,
    ColoringError,
    enumerate_bundle_classes,
    enumerate_colorings,
    normalize_cocycle,
    validate_cocycle,
    validate_coloring,
    weakly_equivalent,
)
from .complexes import (
    ComplexError,
    PreFace,
    StratifiedComplex,
    ValidationReport,
    facially_isomorphic,
)
from .delta import DeltaComplex
from .exact import IntMatrix, smith_normal_form
from .gf2 import (
    Gf2Error,
    Gf2Matrix,
    GroupElement,
    Subgroup,
    enumerate_glnq2,
    gf2_rank,
    subgroup_span,
)
from .homology import (
    HomologyProfile,
    full_profile,
    homology,
    induced_map,
    lefschetz_number,
    orientation_action,
    separation_components,
)
from .surgery import (
    Excision,
    Matching,
    SurgeryError,
    cut_and_paste,
    equivariant_connected_sum,
    fill_hole,
    unfill_hole,
)
from .theorems import (
    TheoremReport,
    check_borel,
    check_component_counts,
    check_kobayashi,
    check_lefschetz_all,
    check_surface_euler,
    classify_boundary,
    enumerate_sphere_patterns,
    run_suite,
)

__version__ = "0.1.0"
