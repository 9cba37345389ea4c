"""Exact-arithmetic engine for quantum cluster seeds.

Seeds carry a compatible pair (exchange matrix, multiplier form) over the
rationals; elements live in the associated quantum torus with coefficients in
Z[q^{1/m}, q^{-1/m}].  Everything is exact: no floats anywhere.
"""

from .amalgam import Amalgamation, amalgamate, embed_part, inject, to_ambient, to_glued
from .cgvectors import (
    CGState,
    c_matrix_via_principal,
    cg_along_path,
    check_sign_coherence,
    g_tilde,
    init_state,
    step,
)
from .certify import (
    Node,
    Verdict,
    certify_by_transport,
    enumerate_seeds,
    frozen_sufficient,
    gmatrix_criterion,
    is_universally_monomial,
)
from .errors import (
    ConstructionFailed,
    DegenerateExchange,
    FrozenMutation,
    HypothesisViolated,
    InvalidFolding,
    InvalidGluing,
    NotAPolynomial,
    NotDivisible,
    NotInvariant,
    NotLaurent,
    NotSubtractionFree,
    QClusterError,
    SeedMismatch,
    TermLimitExceeded,
)
from .folding import (
    FoldingSpec,
    check_invariant,
    elementary_symmetric,
    embed_folded,
    fold,
    make_folding,
    orbit_mutate,
    project_invariant,
    symmetric_mutation_check,
)
from .seeds import (
    Seed,
    make_seed,
    mutate_path,
    mutate_seed,
    principal_extension,
    quiver_edges,
    seed_from_eps,
    transpose_seed,
)
from .torus import (
    QElement,
    binomial,
    coefficient_class,
    exact_div_binomial,
    generator,
    monomial,
    one,
    prod,
    q_scalar,
    specialize_q1,
    weyl_monomial,
    zero,
)
from .transport import (
    Ratio,
    TrackedElement,
    classical_pullback,
    classical_transport,
    principal_weight,
    pullback_element,
    pullback_generator,
    ratio_step,
    ratio_tropicalize,
    transport,
    transport_step,
    tropicalize,
)

__version__ = "0.1.0"
