"""quantcat: quantale-enriched categories, Hausdorff liftings, and their
coalgebras at finite scale."""

from .errors import (
    CapExceeded,
    ConsistencyError,
    DescriptorError,
    IterationGuard,
    QuantcatError,
)
from .quantale import (
    INF,
    AssumptionReport,
    LawEntry,
    Quantale,
    check_assumptions,
    check_quantale_laws,
    totally_below,
)
from .vcat import (
    VCategory,
    VFunctor,
    VRelation,
    as_vcategory,
    check_vcategory,
    check_vfunctor,
    compose,
    discrete,
    dual,
    fibre_join,
    from_order,
    identity_functor,
    indiscrete,
    initial_structure,
    internal_hom,
    is_initial_cone,
    is_separated,
    is_vcategory,
    is_vfunctor,
    metric_line,
    restrict,
    separated_reflection,
    symmetrize,
    tensor,
    terminal,
    underlying_order,
    vfunctors_between,
)
from .hausdorff import (
    EmbeddingVerdict,
    HObject,
    cantor_check,
    down_closure,
    enumerate_increasing,
    generic_powerset_lift,
    hausdorff_distance,
    hausdorff_map,
    hausdorff_object,
    lax_powerset_extension,
    monad_mult,
    monad_unit,
    powerset_lift,
    strict_less,
    strict_up,
    symmetric_hausdorff,
    up_closure,
)
from .coalg import (
    ChainLevel,
    Coalgebra,
    Const,
    HComp,
    Id,
    Prod,
    Sum,
    behavior_map,
    behavioral_distance,
    check_coalgebra,
    equalizer,
    eval_mor,
    eval_obj,
    final_chain,
    initial_lift_coalgebra,
    is_coalg_hom,
)
from .omega import (
    INFINITY,
    ExtNat,
    anamorphism,
    embed_I,
    is_omega_hom,
    is_priestley_finite,
    omega_structure,
    truncation,
    verify_chain_commutation,
)

__version__ = "0.1.0"
