"""Finite relational representations of residuated semigroups via Galois
closure, and bounded representability games for join semilattice-ordered
semigroups."""

from .algebra import (
    FinitePoset,
    JoinSemilatticeSemigroup,
    Plus,
    ResiduatedSemigroup,
    Semi,
    ValidationReport,
    Var,
    derive_residuals,
    down_cone,
    eval_term,
    order_from_join,
    up_close,
    validate_jsl,
    validate_poset,
    validate_residuated_semigroup,
)
from .completion import (
    build_quantale,
    check_quantic_nucleus,
    closed_sets,
    dm_embed,
    galois_closure,
    lower_bounds,
    quantale_residuals,
    upper_bounds,
)
from .enumeration import enumerate_algebras
from .relational import (
    FiniteBase,
    Rel,
    Representation,
    check_generators,
    hat,
    minimize_generators,
    rel_compose,
    rel_lres,
    rel_rres,
    represent,
    verify_representation,
)

__version__ = "0.1.0"
