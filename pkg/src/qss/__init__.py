"""Sharing classical secrets with CSS codes.

A linear code C over F_q that contains its dual, with n = 2k - 1, encodes a
secret i in F_q as the uniform superposition over the coset i*g + C^perp.
Each qudit is one share. The minimal authorized sets are the supports of the
minimal codewords of C outside C^perp, and a set recovers the secret by
accumulating a weighted sum of its shares into an ancilla.
"""

from .access import (
    AccessStructure,
    compare_structures,
    full_oracle_structure,
    gamma_from_minimal_codewords,
    is_authorized_oracle,
    is_unauthorized_oracle,
)
from .codes import (
    Codeword,
    LinearCode,
    code_from_generator,
    contains,
    covers,
    dual,
    enumerate_codewords,
    min_weight_outside_dual,
    minimal_codewords_outside_dual,
)
from .css import ErrorClass, PauliWord, QssScheme, build_scheme, check_pairwise_products, classify_error, stabilizer_matrix
from .gf import FieldElement, FieldSpec, arith, dot, make_field, trace
from .qsim import StateVector, apply_pauli, basis_state, cnot_gate, encode_secret, inner, matrix_element, mult_gate, recover

__all__ = [
    "AccessStructure", "Codeword", "ErrorClass", "FieldElement", "FieldSpec", "LinearCode", "PauliWord",
    "QssScheme", "StateVector", "apply_pauli", "arith", "basis_state", "build_scheme", "check_pairwise_products",
    "classify_error", "cnot_gate", "code_from_generator", "compare_structures", "contains", "covers", "dot", "dual",
    "encode_secret", "enumerate_codewords", "full_oracle_structure", "gamma_from_minimal_codewords", "inner",
    "is_authorized_oracle", "is_unauthorized_oracle", "make_field", "matrix_element", "min_weight_outside_dual",
    "minimal_codewords_outside_dual", "mult_gate", "recover", "stabilizer_matrix", "trace",
]
