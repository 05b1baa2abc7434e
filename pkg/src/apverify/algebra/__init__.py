"""Exact arithmetic kernel: rationals, finite fields, polynomials, integer lattices."""

from .fields import (
    QQ,
    DomainError,
    ExtensionField,
    FqElement,
    GF,
    PrimeField,
    default_modulus,
    fq_sqrt,
    is_irreducible_mod_p,
    parse_rational,
    rational_str,
)
from .lattice import (
    IntegerLattice,
    determinant,
    determinantal_divisors,
    hnf,
    hnf_with_transform,
    invariant_factors,
    left_kernel,
    matmul,
    smith_normal_form,
)
from .polynomial import (
    ZERO_DEGREE,
    Polynomial,
    count_real_roots,
    discriminant,
    poly_arith,
    poly_gcd,
    poly_xgcd,
    resultant,
    sturm_sequence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
