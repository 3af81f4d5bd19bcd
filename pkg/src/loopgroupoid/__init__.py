"""Finite groupoids, inertia groupoids, group cohomology and loop transgression.

Everything is exact: groups and groupoids are explicit tables, U(1) values
are exponents mod m, and linear algebra runs over the integers.
"""

from .cohomology import (
    CohomologyGroup,
    DiscreteTorsion,
    GroupCocycle2,
    build_cocycle,
    class_trivial_in_U1,
    coboundary,
    cocycle_basis,
    discrete_torsion,
    h2,
    is_coboundary,
    is_cocycle,
    normalize,
)
from .core import (
    FiniteGroup,
    FiniteGroupoid,
    GAction,
    GroupoidMorphism,
    action_from_generator_images,
    action_groupoid,
    build_action,
    build_group_from_permutations,
    build_group_from_table,
    connected_components,
    delooping,
    disjoint_union,
    isotropy,
    skeleton,
    validate_groupoid,
    validate_morphism,
)
from .errors import (
    CapExceeded,
    DecisionTimeout,
    DimensionCapExceeded,
    EquivalenceFailure,
    IncompatibleGroup,
    InvalidAction,
    InvalidCocycle,
    LoopGroupoidError,
    MorphismViolation,
    NonAssociative,
    NoIdentity,
    NoInverse,
    NotLatinSquare,
    OrderCapExceeded,
    SchemaError,
    ValidationError,
    VerificationFailure,
)
from .gerbe import (
    GroupoidGerbe,
    InnerLocalSystem,
    Transgression,
    gerbe_from_group_cocycle,
    inner_local_system,
    transgress,
    validate_gerbe,
    verify_coboundary_invariance,
)
from .inertia import (
    centralizer,
    conjugacy_classes,
    hom_Z_groupoid,
    inertia_groupoid,
    twisted_sectors,
    verify_sector_equivalence,
)
from .morita import MoritaCertificate, groups_isomorphic, is_morita_morphism, morita_equivalent
from .smith import IntegerMatrix, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CohomologyGroup",
    "DecisionTimeout",
    "DimensionCapExceeded",
    "DiscreteTorsion",
    "EquivalenceFailure",
    "FiniteGroup",
    "FiniteGroupoid",
    "GAction",
    "GroupCocycle2",
    "GroupoidGerbe",
    "GroupoidMorphism",
    "IncompatibleGroup",
    "InnerLocalSystem",
    "IntegerMatrix",
    "InvalidAction",
    "InvalidCocycle",
    "LoopGroupoidError",
    "MoritaCertificate",
    "MorphismViolation",
    "NoIdentity",
    "NoInverse",
    "NonAssociative",
    "NotLatinSquare",
    "OrderCapExceeded",
    "SchemaError",
    "Transgression",
    "ValidationError",
    "VerificationFailure",
    "__version__",
    "action_from_generator_images",
    "action_groupoid",
    "build_action",
    "build_cocycle",
    "build_group_from_permutations",
    "build_group_from_table",
    "centralizer",
    "class_trivial_in_U1",
    "coboundary",
    "cocycle_basis",
    "conjugacy_classes",
    "connected_components",
    "delooping",
    "discrete_torsion",
    "disjoint_union",
    "gerbe_from_group_cocycle",
    "groups_isomorphic",
    "h2",
    "hom_Z_groupoid",
    "inertia_groupoid",
    "inner_local_system",
    "is_coboundary",
    "is_cocycle",
    "is_morita_morphism",
    "isotropy",
    "morita_equivalent",
    "normalize",
    "skeleton",
    "smith_normal_form",
    "transgress",
    "twisted_sectors",
    "validate_gerbe",
    "validate_groupoid",
    "validate_morphism",
    "verify_coboundary_invariance",
    "verify_sector_equivalence",
]
