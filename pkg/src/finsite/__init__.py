"""Finite-site calculus: sieves, Grothendieck topologies and topos-theoretic verdicts
computed exhaustively over small categories."""

from .errors import (
    AssociativityViolation,
    CategoryError,
    CategoryMismatch,
    CodomainMismatch,
    DomCodMismatch,
    ElementNotFound,
    FinSiteError,
    IdentityViolation,
    MissingComposite,
    NotASieve,
    NotClosed,
    NotDense,
    ObjectNotInSubcategory,
    ParentMismatch,
    ParseError,
    PresheafError,
    TooLarge,
    TopologyAxiomError,
    WrongCodomain,
)
from .fincat import (
    FiniteCategory,
    fixture,
    fixtures,
    full_subcategory,
    is_groupoid,
    load_category,
    opposite,
    satisfies_right_ore,
    validate_category,
)
from .presheaf import (
    Presheaf,
    Subpresheaf,
    close_subobject,
    closed_sub_not,
    densifying_topology,
    element_sieve,
    enumerate_subpresheaves,
    is_dense_mono,
    sub_implies,
    sub_join,
    sub_meet,
    sub_not,
    yoneda,
)
from .reduct import (
    ReducedSite,
    booleanization,
    demorganization,
    extend_topology,
    is_boolean,
    is_de_morgan,
    reduced_subcategory,
    restrict_topology,
)
from .sieve import (
    Sieve,
    enumerate_sieves,
    generate_sieve,
    pullback_sieve,
    sieve_implies,
    sieve_intersection,
    sieve_not,
    sieve_not_not,
    sieve_union,
)
from .topology import (
    GrothendieckTopology,
    close_sieve,
    de_morgan_topology,
    dense_topology,
    effective_epimorphic,
    enumerate_topologies,
    generate_topology,
    is_closed,
    is_subcanonical,
    topology_join,
    topology_leq,
    trivial_topology,
    universally_effective_epimorphic,
)

__version__ = "0.1.0"

__all__ = [
    "AssociativityViolation",
    "CategoryError",
    "CategoryMismatch",
    "CodomainMismatch",
    "DomCodMismatch",
    "ElementNotFound",
    "FinSiteError",
    "FiniteCategory",
    "GrothendieckTopology",
    "IdentityViolation",
    "MissingComposite",
    "NotASieve",
    "NotClosed",
    "NotDense",
    "ObjectNotInSubcategory",
    "ParentMismatch",
    "ParseError",
    "Presheaf",
    "PresheafError",
    "ReducedSite",
    "Sieve",
    "Subpresheaf",
    "TooLarge",
    "TopologyAxiomError",
    "WrongCodomain",
    "booleanization",
    "close_sieve",
    "close_subobject",
    "closed_sub_not",
    "de_morgan_topology",
    "demorganization",
    "dense_topology",
    "densifying_topology",
    "effective_epimorphic",
    "element_sieve",
    "enumerate_sieves",
    "enumerate_subpresheaves",
    "enumerate_topologies",
    "extend_topology",
    "fixture",
    "fixtures",
    "full_subcategory",
    "generate_sieve",
    "generate_topology",
    "is_boolean",
    "is_closed",
    "is_de_morgan",
    "is_dense_mono",
    "is_groupoid",
    "is_subcanonical",
    "load_category",
    "opposite",
    "pullback_sieve",
    "reduced_subcategory",
    "restrict_topology",
    "satisfies_right_ore",
    "sieve_implies",
    "sieve_intersection",
    "sieve_not",
    "sieve_not_not",
    "sieve_union",
    "sub_implies",
    "sub_join",
    "sub_meet",
    "sub_not",
    "topology_join",
    "topology_leq",
    "trivial_topology",
    "universally_effective_epimorphic",
    "validate_category",
    "yoneda",
    "__version__",
]
