"""Finite categories and arity-truncated symmetric multicategories.

Everything is finite and explicit: composition, identities, and symmetric
group actions are stored as lookup tables, so every law is checkable and
every construction is an ordinary function on small dictionaries.
"""

from .core import (
    Budget,
    BudgetExceededError,
    FiniteCategory,
    Functor,
    Graph,
    MultiFunctor,
    MultiGraph,
    MultiGraphMap,
    Signature,
    TruncatedSymMulticat,
    ValidationReport,
    Violation,
    build_category,
    build_multicat,
    check_token,
    compose_functors,
    compose_multifunctors,
    enumerate_functors,
    enumerate_graph_maps,
    enumerate_multifunctors,
    find_isomorphism,
    find_multicat_isomorphism,
    fresh_token,
    full_subcategory,
    functor_violations,
    id_token,
    identity_functor,
    identity_multifunctor,
    is_id_token,
    is_locally_bijective,
    multifunctor_violations,
    rename_category,
    rename_multicat,
    sig1,
    validate_category,
    validate_multicat,
    validate_multigraph,
)
from .constructions import (
    FreeCategoryResult,
    FreeMulticatResult,
    cell_multigraph,
    com_multicat,
    counit_E,
    discrete,
    e_lower,
    e_on_functor,
    e_raise,
    embed_E,
    extend_u,
    extension_map,
    factor_cofibration_style,
    factor_through_image,
    forget_sym,
    free_category,
    free_multifunctor,
    free_symmulticat,
    indiscrete,
    interval_graph,
    is_composite_free,
    restrict_u,
    restriction_map,
    sym,
    sym_map,
    tensor,
    truncate,
    underlying_1,
    underlying_functor,
    underlying_multigraph,
)
from .colimits import (
    CoendProblem,
    CoendResult,
    PushoutConstructionError,
    PushoutResult,
    bounded_pushout_oracle,
    coend_set,
    is_isomorphic_over_cocone,
    pushout_cat_ff,
    pushout_multicat_along_E,
    pushout_multicat_e_square,
    verify_pushout,
)
from .karoubi import (
    KarResult,
    idempotents,
    idempotents_split,
    is_morita_equivalence,
    is_morita_multi_equivalence,
    kar_category,
    kar_functor,
    kar_multicat,
    kar_multifunctor,
)
from .modelcheck import (
    GeneratingSet,
    LiftingProblem,
    check_61_premises,
    generating_I,
    generating_J,
    has_lifting,
    is_cofibration,
    is_equivalence,
    is_essentially_surjective,
    is_full_faithful,
    is_isofibration,
    is_multi_equivalence,
    is_multi_fibration,
    is_trivial_fibration,
    isos_of,
    rlp,
)
from . import perms, samplers, trees

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
