"""Exact computations with commutative monoids: canonical quotients and
completions, integer-lattice group structure, and extensional commutativity
checks for composed constructions."""

__version__ = "0.1.0"

from .core import (  # noqa: F401
    AffineMonoid,
    CategoryFlags,
    CayleyMonoid,
    DerivedMonoid,
    EqResult,
    FpMonoid,
    MonoidValue,
    ProductMonoid,
    TriState,
    affine,
    builtin_catalog,
    check_prop_2_1,
    cyclic,
    flat,
    fp,
    is_cancellative,
    is_divisible,
    is_uniquely_divisible,
    nsum,
    product,
    trivial,
    truncated,
)
from .elements import Element  # noqa: F401
from .embeddings import (  # noqa: F401
    LITERAL,
    SATURATED,
    CanonicalMap,
    Congruence,
    RelationMode,
    check_theorem,
    cut_scalar_mul,
    divisible_hull,
    formal_difference,
    modulate,
    negate,
    regularize,
    scalar_mul,
    unique_quotient,
)
from .diagram import (  # noqa: F401
    CategoryId,
    FormalExpr,
    PathReport,
    TYPING_TABLE,
    apply_path,
    compare_paths,
    enumerate_paths,
    full_diagram_check,
)
from .lattice import (  # noqa: F401
    AbelianGroupStructure,
    IntMatrix,
    grothendieck_group_fp,
    hermite_normal_form,
    smith_normal_form,
    subgroup_membership,
)
from .presentations import Presentation, parse_presentation  # noqa: F401
