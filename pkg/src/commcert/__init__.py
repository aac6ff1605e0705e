"""Exact certificates for writing ring elements as sums of products of
pairs of commutators, with an independent verifier, a finite-ring
brute-force explorer, and a free-algebra identity checker.
"""

from .cert import (
    Certificate,
    PairProduct,
    SingleCommutator,
    VerificationResult,
    Witness,
    commutator,
    make_certificate,
    pair_count,
    single_count,
    verify,
)
from .errors import (
    CommCertError,
    CounterexampleFound,
    EmptySum,
    IdentityFailed,
    InadmissibleInput,
    InvalidWitness,
    NoncommutativeCoefficients,
    NotACommutator,
    OutOfDomain,
    RingMismatch,
    ShapeMismatch,
    SizeTooSmall,
    SpecFormatError,
    UnknownStructure,
)
from .explore import (
    FiniteRing,
    brute_report,
    char2_lie_ideal_check,
    commutativity_report,
    commutator_set,
    pair_product_set,
    parse_finite_ring,
    radical_power_check,
    xi_exact,
)
from .freealg import FreePoly, bracket, identity_suite, reduce
from .matrices import (
    DirectSum,
    DirectSumSpace,
    Matrix,
    MatrixSpace,
    ScalarSpace,
    direct_sum,
)
from .mdecomp import (
    decompose,
    decompose_direct_sum,
    quaternion_decompose,
)
from .rewrite import (
    UnitExpansion,
    UnitWitness,
    expand_product_bracket,
    expand_sandwich,
    mixed_decompose,
    split_left_multiplier,
    unit_expansion_decompose,
    unit_witness_for,
    xi3_decompose,
    xi_upper_bounds,
)
from .rings import (
    GF,
    INTEGERS,
    QUATERNIONS,
    RATIONALS,
    Scalar,
    Zmod,
    polynomials_over,
)
from .witness import WitnessTriple, witness_triple

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CommCertError",
    "CounterexampleFound",
    "DirectSum",
    "DirectSumSpace",
    "EmptySum",
    "FiniteRing",
    "FreePoly",
    "GF",
    "IdentityFailed",
    "INTEGERS",
    "InadmissibleInput",
    "InvalidWitness",
    "Matrix",
    "MatrixSpace",
    "NoncommutativeCoefficients",
    "NotACommutator",
    "OutOfDomain",
    "PairProduct",
    "QUATERNIONS",
    "RATIONALS",
    "RingMismatch",
    "Scalar",
    "ScalarSpace",
    "ShapeMismatch",
    "SingleCommutator",
    "SizeTooSmall",
    "SpecFormatError",
    "UnitExpansion",
    "UnitWitness",
    "UnknownStructure",
    "VerificationResult",
    "Witness",
    "WitnessTriple",
    "Zmod",
    "brute_report",
    "bracket",
    "char2_lie_ideal_check",
    "commutativity_report",
    "commutator",
    "commutator_set",
    "decompose",
    "decompose_direct_sum",
    "direct_sum",
    "expand_product_bracket",
    "expand_sandwich",
    "identity_suite",
    "make_certificate",
    "mixed_decompose",
    "pair_count",
    "pair_product_set",
    "parse_finite_ring",
    "polynomials_over",
    "quaternion_decompose",
    "radical_power_check",
    "reduce",
    "single_count",
    "split_left_multiplier",
    "unit_expansion_decompose",
    "unit_witness_for",
    "verify",
    "witness_triple",
    "xi3_decompose",
    "xi_exact",
    "xi_upper_bounds",
]
