"""Exact colored series for positive torus links.

The reduced series of T(m, n) with one component colored k and the rest
colored 1 is computed by a memoized state recursion over permutations and
bit strings, entirely in exact integer arithmetic.  Companion checkers
compare the engine against closed forms, a Q = 1 power law across colors,
and per-term affine exponent models.
"""

from .ring import (
    A,
    InexactDivision,
    LaurentPoly,
    ONE,
    Q,
    StructuredRational,
    T,
    ZeroPolynomial,
    poly_equal_up_to_monomial,
)
from .perm import Perm, compose, identity, inverse_rotation, rotation, truncate_last
from .recursion import (
    MemoTable,
    RecState,
    evaluate,
    evaluate_q1,
    leaf_q_powers,
    load_table,
    rule_select,
    save_table,
    trace_evaluate,
)
from .torus import (
    InfiniteDimension,
    PoincareSeries,
    TorusInput,
    UnknotFactor,
    UnsupportedInput,
    color_correction,
    reduced_poincare,
    reduced_q1,
    shuffle_strings,
    total_dimension,
    unknot_factor,
    unreduced_poincare,
)
from .conjectures import (
    AffineExponentModel,
    AffineTerm,
    CheckInstance,
    CheckReport,
    InsufficientSamples,
    closed_form_t2even,
    closed_form_t2odd,
    closed_form_t33,
    colorshift_check,
    detect_affine_exponents,
    growth_check,
)

__version__ = "0.1.0"
