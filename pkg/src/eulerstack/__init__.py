"""Exact calculus of constructible functions on stratified stacks.

Stacks are finite lists of strata, each with a coarse Euler characteristic
and a constant stabilizer group.  On top of that the package computes naive,
weighted, stack and orbifold Euler characteristics, pushes functions forward
and pulls them back along morphisms, builds fibre products over finite
stabilizers, and evaluates the orbifold Euler characteristic of finite
G-sets.  All arithmetic is exact.
"""

from .cartesian import CartesianSquare, CommutationReport, fiber_product, verify_commutation
from .errors import *  # noqa: F401,F403
from .groupcat import (
    GL,
    INFINITY,
    TRIVIAL,
    Finite,
    FiniteGroup,
    GroupExpr,
    GroupHom,
    Product,
    Torus,
    Trivial,
    Unipotent,
    UserTable,
    Weight,
    all_homs,
    conjugacy_classes,
    cyclic,
    dihedral,
    direct_product,
    double_cosets,
    euler_char_group,
    finite,
    finite_group_from_table,
    gl,
    hom_kernel_quotient,
    orbifold_weight,
    product,
    symmetric,
    torus,
    trivial_group,
    unipotent,
    weight_value,
)
from .orbifold import FiniteGSet, check_dhvw, natural_action, quotient_stack, stringy_euler, trivial_action
from .pushpull import (
    Lean,
    MapRecord,
    RemainderRecord,
    Rich,
    StackMorphism,
    check_conservation,
    compose,
    identity_morphism,
    m_phi,
    pullback,
    pushforward_lcf,
    pushforward_naive,
    pushforward_stack,
    pushforward_weighted,
    validate_morphism,
)
from .strata import (
    ConstructibleFn,
    ConstructibleSet,
    StratifiedStack,
    Stratum,
    affine_space,
    cf_pointwise,
    chi_naive,
    chi_naive_weighted,
    chi_orbifold,
    chi_stack,
    chi_weighted,
    point,
    product_stack,
    projective_space,
    quotient_point,
    set_ops,
)

__version__ = "0.1.0"
