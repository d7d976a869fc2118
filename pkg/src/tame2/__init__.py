"""tame2: exact arithmetic and tameness certificates for plane polynomial
automorphisms over commutative rings."""

from .autmap import (
    AffineShift,
    AutoMap,
    Certificate,
    ElementaryX,
    ElementaryY,
    LinearFactor,
    apply_factor_list,
    embed_factor,
    embed_map,
    invert_factor_list,
    nagata,
    simplify_factors,
    try_invert,
    verify_certificate,
)
from .charp import (
    DEFAULT_BOUNDS,
    Inconclusive,
    NoObstruction,
    NotTame,
    ObstructionWitness,
    SearchBounds,
    Tame,
    decide_tameness,
    normalize,
    obstruction_check,
    search_sum_of_powers,
)
from .phih import (
    Potential,
    PowerTerm,
    SumOfPowersForm,
    conjugate_phi,
    factor_phi_monomial,
    find_potential,
    lift_decompose,
    monomial_to_powers,
    phi_of,
)
from .poly import JacobianMatrix, Poly2, jacobian_det, poly_layer, poly_place
from .ring import (
    GF,
    QQ,
    ZZ,
    Hom,
    PrimeField,
    TruncatedRing,
    dual,
    embed_hom,
    is_dual,
    is_prime,
    reduce_hom,
    truncated,
)
from .tame_field import (
    ReductionTrace,
    jvdk_decompose,
    jvdk_decompose_traced,
    sa_to_ea_factors,
    sl2_to_elementary,
)

__version__ = "0.1.0"
