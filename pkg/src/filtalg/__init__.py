"""Filtered noncommutative algebras of finite type.

Presentations over Q with degree-capped rewriting, associated graded and
Rees algebras, the two-filtrations construction, Ore searches, and
Gelfand-Kirillov and canonical dimensions.
"""

from .ncalg import (
    NCPoly,
    MonomialOrder,
    Presentation,
    RewriteSystem,
    AlgebraError,
    CapExceeded,
    NonOrientableRelation,
    complete_to_cap,
    normal_form,
    format_poly,
)
from .dsl import parse_presentation, parse_poly, print_presentation, ParseError
from .filtration import (
    Filtration,
    GradedDims,
    gr_presentation,
    gr_dims,
    rees_presentation,
    specialize,
    lift_rees_filtration_dims,
    deg_and_symbol,
)
from .constructors import (
    weyl,
    sl2,
    u_lie,
    LieData,
    AlgebroidData,
    u_lie_algebroid,
    skew_poly,
    tensor,
    opposite,
    enveloping,
    polynomial_ring,
)
from .twofilt import derive_split, extract_structure, compute_exponents, build_G, run_twofilt
from .commalg import (
    PolyRing,
    CPoly,
    CModule,
    buchberger,
    hilbert_function,
    growth_degree,
    free_resolution,
    ext_modules,
    cdim_commutative,
    CanonicalComplexSpec,
)
from .dimension import ModulePresentation, module_filtration_dims, gkdim_module, cdim_filtered
from .localization import (
    OreQuery,
    Witness,
    ObstructionCertified,
    Inconclusive,
    ore_witness_search,
    verify_witness,
    mu_obstruction,
    differential_filtration_check,
    diagonal_support_check,
)

__version__ = "0.1.0"
