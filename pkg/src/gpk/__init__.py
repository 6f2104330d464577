"""Generalised phase kick-back: Deutsch-Jozsa and Bernstein-Vazirani generalisations
on an ideal statevector simulator, with classical ground truth."""

from .boolean_oracle import (
    Balanced,
    BooleanFunction,
    Constant,
    Neither,
    classical_bv_solver,
    classical_dj_solver,
    classify_promise,
    random_affine_instance,
    random_promise_instance,
)
from .errors import (
    BadIndex,
    GpkError,
    LengthMismatch,
    NotABasis,
    NotABitDrop,
    NotAffine,
    NotDeterministic,
    PromiseViolated,
    TooLarge,
    TruthTableParseError,
    WrongShape,
)
from .f2_algebra import BitString, F2LinearSystem, F2Matrix, dot, is_basis, mat_vec, solve_f2, xor
from .gpk_core import (
    Backend,
    Verdict,
    detect_dropped_bit,
    gpk_final_amplitudes,
    gpk_run,
    solve_bv,
    solve_classic_dj,
    solve_generalized_bv,
    solve_generalized_dj,
    solve_modified_bv,
    translation_invariance_check,
)

__version__ = "0.1.0"

__all__ = [
    "Backend",
    "BadIndex",
    "Balanced",
    "BitString",
    "BooleanFunction",
    "Constant",
    "F2LinearSystem",
    "F2Matrix",
    "GpkError",
    "LengthMismatch",
    "Neither",
    "NotABasis",
    "NotABitDrop",
    "NotAffine",
    "NotDeterministic",
    "PromiseViolated",
    "TooLarge",
    "TruthTableParseError",
    "Verdict",
    "WrongShape",
    "classical_bv_solver",
    "classical_dj_solver",
    "classify_promise",
    "detect_dropped_bit",
    "dot",
    "gpk_final_amplitudes",
    "gpk_run",
    "is_basis",
    "mat_vec",
    "random_affine_instance",
    "random_promise_instance",
    "solve_bv",
    "solve_classic_dj",
    "solve_f2",
    "solve_generalized_bv",
    "solve_generalized_dj",
    "solve_modified_bv",
    "translation_invariance_check",
    "xor",
]
