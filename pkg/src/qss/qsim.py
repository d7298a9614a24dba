"""Dense statevector simulation of qudits labelled by F_q.

Basis index convention: the vector x in F_q^n sits at index sum_t x_t q^(n-1-t),
so the leftmost qudit is most significant. Gates are basis permutations or
diagonal phases and return new state vectors.
"""

from __future__ import annotations

import functools
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .codes import Codeword, codeword_array, contains, in_dual_rows
from .css import PauliWord, QssScheme
from .errors import (
    BadEntry,
    DimensionMismatch,
    DimensionTooLarge,
    LengthMismatch,
    NonDeterministicAncilla,
    NotAuthorizedWitness,
    SameWire,
    ZeroMultiplier,
)
from .gf import FieldElement, FieldSpec

EPS = 1e-9
DEFAULT_MAX_DIM = 1 << 22


@dataclass
class StateVector:
    spec: FieldSpec
    num_qudits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.spec.q**self.num_qudits,):
            raise DimensionMismatch(
                f"{self.num_qudits} qudits over {self.spec!r} need {self.spec.q ** self.num_qudits} amplitudes"
            )

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def nonzero(self, eps: float = EPS) -> list[tuple[tuple[int, ...], complex]]:
        """Basis labels carrying amplitude above ``eps``, in index order."""
        digits = basis_digits(self.spec.q, self.num_qudits)
        idx = np.nonzero(np.abs(self.amplitudes) > eps)[0]
        return [(tuple(int(v) for v in digits[i]), complex(self.amplitudes[i])) for i in idx]


@functools.lru_cache(maxsize=32)
def basis_digits(q: int, n: int) -> np.ndarray:
    """Row i holds the base-q digits of index i, most significant first."""
    idx = np.arange(q**n, dtype=np.int64)
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    digits = (idx[:, None] // powers[None, :]) % q
    digits.setflags(write=False)
    return digits


def _powers(q: int, n: int) -> np.ndarray:
    return q ** np.arange(n - 1, -1, -1, dtype=np.int64)


def _check_dim(spec: FieldSpec, n: int, max_dim: int | None) -> None:
    cap = DEFAULT_MAX_DIM if max_dim is None else max_dim
    if spec.q**n > cap:
        raise DimensionTooLarge(f"{spec.q}^{n} amplitudes exceed the cap of {cap}")


def basis_state(spec: FieldSpec, x: Sequence[int], max_dim: int | None = None) -> StateVector:
    x = [int(v) for v in x]
    if any(not 0 <= v < spec.q for v in x):
        raise BadEntry(f"basis label entries must lie in [0, {spec.q})")
    _check_dim(spec, len(x), max_dim)
    amps = np.zeros(spec.q ** len(x), dtype=np.complex128)
    amps[int(np.dot(x, _powers(spec.q, len(x))))] = 1.0
    return StateVector(spec, len(x), amps)


def pauli_action(spec: FieldSpec, n: int, a: Sequence[int], b: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Target indices and phases of X(a)Z(b): |x> -> phase[x] |target[x]>."""
    digits = basis_digits(spec.q, n)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    target = spec.add(digits, a[None, :]) @ _powers(spec.q, n)
    exponent = spec.trace(spec.mul(digits, b[None, :])).sum(axis=1) % spec.p
    phase = np.exp(2j * np.pi * exponent / spec.p)
    return target, phase


def _apply_action(amps: np.ndarray, target: np.ndarray, phase: np.ndarray) -> np.ndarray:
    out = np.empty_like(amps)
    out[target] = phase * amps
    return out


def apply_pauli(sv: StateVector, E: PauliWord) -> StateVector:
    """Apply X(a)Z(b): the trace phase of Z(b) first, then the shift by a."""
    if len(E) != sv.num_qudits:
        raise LengthMismatch(f"operator on {len(E)} qudits applied to {sv.num_qudits}")
    sv.spec.check_array(E.a)
    sv.spec.check_array(E.b)
    target, phase = pauli_action(sv.spec, sv.num_qudits, E.a, E.b)
    return StateVector(sv.spec, sv.num_qudits, _apply_action(sv.amplitudes, target, phase))


def _permute(sv: StateVector, new_digits: np.ndarray) -> StateVector:
    target = new_digits @ _powers(sv.spec.q, sv.num_qudits)
    out = np.empty_like(sv.amplitudes)
    out[target] = sv.amplitudes
    return StateVector(sv.spec, sv.num_qudits, out)


def _check_wire(sv: StateVector, wire: int) -> None:
    if not 0 <= wire < sv.num_qudits:
        raise BadEntry(f"qudit index {wire} out of range for {sv.num_qudits} qudits")


def mult_gate(sv: StateVector, qudit: int, c: FieldElement | int) -> StateVector:
    """M(c): |x> -> |c x> on one qudit (0-indexed)."""
    c = int(c)
    if c == 0:
        raise ZeroMultiplier("M(c) needs a nonzero multiplier")
    _check_wire(sv, qudit)
    digits = np.array(basis_digits(sv.spec.q, sv.num_qudits))
    digits[:, qudit] = sv.spec.mul(digits[:, qudit], sv.spec.check(c))
    return _permute(sv, digits)


def cnot_gate(sv: StateVector, ctrl: int, tgt: int) -> StateVector:
    """Generalized CNOT: |x>|y> -> |x>|x + y> (0-indexed wires)."""
    if ctrl == tgt:
        raise SameWire("control and target must differ")
    _check_wire(sv, ctrl)
    _check_wire(sv, tgt)
    digits = np.array(basis_digits(sv.spec.q, sv.num_qudits))
    digits[:, tgt] = sv.spec.add(digits[:, ctrl], digits[:, tgt])
    return _permute(sv, digits)


def coset_states(scheme: QssScheme) -> np.ndarray:
    """Basis labels of the dual code, one per row."""
    if scheme.dual_code is None:
        return np.zeros((1, scheme.n), dtype=np.int64)
    return codeword_array(scheme.dual_code)


def encode_secret(scheme: QssScheme, i: FieldElement | int, max_dim: int | None = None) -> StateVector:
    """Uniform superposition over the coset i*g + C^perp."""
    spec = scheme.spec
    _check_dim(spec, scheme.n, max_dim)
    i = spec.check(int(i))
    words = spec.add(coset_states(scheme), spec.mul(scheme.g.array(), i)[None, :])
    amps = np.zeros(spec.q**scheme.n, dtype=np.complex128)
    amps[words @ _powers(spec.q, scheme.n)] = 1.0 / np.sqrt(words.shape[0])
    return StateVector(spec, scheme.n, amps)


def inner(u: StateVector, v: StateVector) -> complex:
    """<u|v>."""
    if u.spec != v.spec or u.num_qudits != v.num_qudits:
        raise DimensionMismatch("states live on different spaces")
    return complex(np.vdot(u.amplitudes, v.amplitudes))


def matrix_element(u: StateVector, E: PauliWord, v: StateVector) -> complex:
    """<u| X(a)Z(b) |v>."""
    if u.spec != v.spec or u.num_qudits != v.num_qudits:
        raise DimensionMismatch("states live on different spaces")
    return complex(np.vdot(u.amplitudes, apply_pauli(v, E).amplitudes))


def append_ancilla(sv: StateVector) -> StateVector:
    """Tensor |0> onto the end (least significant qudit)."""
    q = sv.spec.q
    amps = np.zeros(sv.dim * q, dtype=np.complex128)
    amps[::q] = sv.amplitudes
    return StateVector(sv.spec, sv.num_qudits + 1, amps)


class Recovery(NamedTuple):
    secret: FieldElement
    post_state: StateVector
    ancilla_value: int
    ancilla_mass: float


def recover(
    scheme: QssScheme,
    sv: StateVector,
    c: Codeword | Sequence[int],
    eps: float = EPS,
    max_dim: int | None = None,
) -> Recovery:
    """Recover the secret from the shares in supp(c), for c in C \\ C^perp.

    Each share j with c_j != 0 is multiplied by c_j, added into a fresh
    ancilla, and multiplied back by c_j^-1, leaving c.x in the ancilla. For
    a code state with secret i that value is (alpha beta) i, where
    c = alpha g + s and alpha = (c.g) / beta.
    """
    spec = scheme.spec
    c = c if isinstance(c, Codeword) else Codeword.of(c)
    cvec = c.array()
    if len(c) != scheme.n or not contains(scheme.code, cvec) or in_dual_rows(scheme.code, cvec[None, :])[0]:
        raise NotAuthorizedWitness(f"{c} is not a codeword of C \\ C^perp")
    if sv.spec != spec or sv.num_qudits != scheme.n:
        raise DimensionMismatch(f"expected a state on {scheme.n} qudits over {spec!r}")
    _check_dim(spec, scheme.n + 1, max_dim)

    state = append_ancilla(sv)
    anc = scheme.n
    for j in c.support:
        cj = c.vector[j - 1]
        state = mult_gate(state, j - 1, cj)
        state = cnot_gate(state, j - 1, anc)
        state = mult_gate(state, j - 1, int(spec.inv(cj)))

    q = spec.q
    table = state.amplitudes.reshape(-1, q)
    masses = (np.abs(table) ** 2).sum(axis=0)
    value = int(np.argmax(masses))
    mass = float(masses[value])
    if mass < 1 - eps:
        raise NonDeterministicAncilla(f"ancilla distribution {np.round(masses, 12).tolist()} is not a point mass")

    alpha = spec(spec.vdot(cvec, scheme.g.vector)) / scheme.beta
    secret = (alpha * scheme.beta).inv() * value
    post = StateVector(spec, scheme.n, table[:, value] / np.sqrt(mass))
    return Recovery(secret, post, value, mass)


def share_parity(labels: Sequence[Sequence[int]], support: Sequence[int]) -> set[int]:
    """Parities of the given 1-indexed shares across binary basis labels."""
    return {sum(int(x[j - 1]) for j in support) % 2 for x in labels}
