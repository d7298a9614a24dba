import itertools

import numpy as np
import pytest

from conftest import EX11_E
from qss.codes import code_from_generator, codeword_array, dual, in_dual_rows, minimal_codewords_outside_dual
from qss.css import PauliWord, build_scheme, stabilizer_matrix
from qss.errors import BadEntry, DimensionTooLarge, NonDeterministicAncilla, NotAuthorizedWitness, SameWire, ZeroMultiplier
from qss.gf import make_field
from qss.qsim import (
    StateVector,
    apply_pauli,
    basis_state,
    cnot_gate,
    encode_secret,
    inner,
    matrix_element,
    mult_gate,
    recover,
    share_parity,
)

TOL = 1e-9


def dense_pauli(F, a, b):
    """Kronecker product of single-qudit X(a_t) Z(b_t) matrices."""
    omega = np.exp(2j * np.pi / F.p)
    out = np.ones((1, 1), dtype=complex)
    for at, bt in zip(a, b):
        M = np.zeros((F.q, F.q), dtype=complex)
        for x in range(F.q):
            M[int(F.add(x, at)), x] = omega ** int(F.trace(F.mul(bt, x)))
        out = np.kron(out, M)
    return out


def test_basis_states(F2, F3):
    assert basis_state(F2, [0, 0]).amplitudes.tolist() == [1, 0, 0, 0]
    assert basis_state(F3, [2]).amplitudes.tolist() == [0, 0, 1]
    assert np.argmax(np.abs(basis_state(F2, [1, 1]).amplitudes)) == 3
    with pytest.raises(BadEntry):
        basis_state(F2, [2])


def test_pauli_examples(F2, F3):
    assert np.allclose(apply_pauli(basis_state(F2, [0]), PauliWord.of([1], [0])).amplitudes, [0, 1])
    plus = StateVector(F2, 1, np.array([1, 1]) / np.sqrt(2))
    assert np.allclose(apply_pauli(plus, PauliWord.of([0], [1])).amplitudes, np.array([1, -1]) / np.sqrt(2))
    out = apply_pauli(basis_state(F3, [2]), PauliWord.of([0], [1]))
    assert np.isclose(out.amplitudes[2], np.exp(4j * np.pi / 3))


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2)])
def test_pauli_matches_dense_kronecker(p, m):
    F = make_field(p, m)
    rng = np.random.default_rng(7)
    n = 2
    psi = rng.normal(size=F.q**n) + 1j * rng.normal(size=F.q**n)
    psi /= np.linalg.norm(psi)
    sv = StateVector(F, n, psi)
    for a in itertools.product(range(F.q), repeat=n):
        for b in itertools.product(range(F.q), repeat=n):
            got = apply_pauli(sv, PauliWord(a, b)).amplitudes
            assert np.allclose(got, dense_pauli(F, a, b) @ psi, atol=1e-12)


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2)])
@pytest.mark.parametrize("n", [1, 2])
def test_commutation_phase_exhaustive(p, m, n):
    F = make_field(p, m)
    rng = np.random.default_rng(11)
    psi = rng.normal(size=F.q**n) + 1j * rng.normal(size=F.q**n)
    sv = StateVector(F, n, psi / np.linalg.norm(psi))
    zero = (0,) * n
    omega = np.exp(2j * np.pi / F.p)
    for a in itertools.product(range(F.q), repeat=n):
        for b in itertools.product(range(F.q), repeat=n):
            zx = apply_pauli(apply_pauli(sv, PauliWord(a, zero)), PauliWord(zero, b))
            xz = apply_pauli(sv, PauliWord(a, b))
            phase = omega ** int(F.trace(F.vdot(a, b)))
            assert np.allclose(zx.amplitudes, phase * xz.amplitudes, atol=1e-12)
            assert abs(xz.norm() - 1) < 1e-12


def test_mult_gate(F2, F3):
    sv = basis_state(F2, [1, 0])
    assert np.allclose(mult_gate(sv, 0, 1).amplitudes, sv.amplitudes)
    assert np.allclose(mult_gate(basis_state(F3, [1]), 0, 2).amplitudes, basis_state(F3, [2]).amplitudes)
    rng = np.random.default_rng(2)
    psi = rng.normal(size=9) + 0j
    sv = StateVector(F3, 2, psi / np.linalg.norm(psi))
    twice = mult_gate(mult_gate(sv, 1, 2), 1, 2)
    assert np.allclose(twice.amplitudes, sv.amplitudes)
    with pytest.raises(ZeroMultiplier):
        mult_gate(sv, 0, 0)


def test_cnot_gate(F2, F3):
    assert np.allclose(cnot_gate(basis_state(F2, [1, 0]), 0, 1).amplitudes, basis_state(F2, [1, 1]).amplitudes)
    for y in (0, 1):
        assert np.allclose(cnot_gate(basis_state(F2, [0, y]), 0, 1).amplitudes, basis_state(F2, [0, y]).amplitudes)
    assert np.allclose(cnot_gate(basis_state(F3, [2, 2]), 0, 1).amplitudes, basis_state(F3, [2, 1]).amplitudes)
    with pytest.raises(SameWire):
        cnot_gate(basis_state(F2, [0, 0]), 1, 1)


def test_encode_ex11(ex11_scheme):
    psi0 = encode_secret(ex11_scheme, 0)
    terms = psi0.nonzero()
    assert len(terms) == 32
    assert all(np.isclose(z, 1 / np.sqrt(32)) for _, z in terms)
    D = {tuple(w) for w in codeword_array(dual(ex11_scheme.code))}
    assert {x for x, _ in terms} == D
    shifted = {tuple((np.array(x) + EX11_E) % 2) for x in D}
    assert {x for x, _ in encode_secret(ex11_scheme, 1).nonzero()} == shifted
    assert abs(inner(psi0, encode_secret(ex11_scheme, 1))) < TOL
    with pytest.raises(DimensionTooLarge):
        encode_secret(ex11_scheme, 0, max_dim=1024)


def test_encode_zerosum(zerosum_scheme):
    terms = encode_secret(zerosum_scheme, 2).nonzero()
    F = zerosum_scheme.spec
    coset = {tuple(int(F.add(F.mul(2, g), t)) for g, t in zip((0, 1, 2), (c, c, c))) for c in range(3)}
    assert {x for x, _ in terms} == coset
    assert all(np.isclose(abs(z), 1 / np.sqrt(3)) for _, z in terms)


def _schemes(corpus, ex11_scheme):
    F4 = make_field(2, 2)
    gf4 = build_scheme(dual(code_from_generator(F4, [[1, 2, 3]])))
    return [*corpus.values(), ex11_scheme, gf4]


def test_orthonormal_and_stabilized(corpus, ex11_scheme):
    for scheme in _schemes(corpus, ex11_scheme):
        n = scheme.n
        states = [encode_secret(scheme, i) for i in range(scheme.q)]
        for i, j in itertools.product(range(scheme.q), repeat=2):
            assert abs(inner(states[i], states[j]) - (i == j)) < TOL
        for row in stabilizer_matrix(scheme):
            E = PauliWord.of(row[:n], row[n:])
            for psi in states:
                assert np.allclose(apply_pauli(psi, E).amplitudes, psi.amplitudes, atol=TOL)
                assert abs(matrix_element(psi, E, psi) - 1) < TOL


def test_matrix_element_logical_x(ex11_scheme):
    psi0, psi1 = encode_secret(ex11_scheme, 0), encode_secret(ex11_scheme, 1)
    assert abs(matrix_element(psi0, PauliWord.of(EX11_E), psi1) - 1) < TOL
    assert abs(matrix_element(psi0, PauliWord.identity(11), psi0) - 1) < TOL


def test_recover_zerosum_example(zerosum_scheme):
    F = zerosum_scheme.spec
    c = (1, 2, 0)
    # classical oracle: c . (x + i g) is the same value alpha beta i on the whole coset
    coset = [x for x, _ in encode_secret(zerosum_scheme, 1).nonzero()]
    assert {F.vdot(c, x) for x in coset} == {2}
    alpha = F.div(F.vdot(c, (0, 1, 2)), 2)
    assert alpha == 1
    result = recover(zerosum_scheme, encode_secret(zerosum_scheme, 1), c)
    assert int(result.secret) == 1 and result.ancilla_value == 2


def test_recover_every_outside_codeword(corpus, ex11_scheme):
    for scheme in _schemes(corpus, ex11_scheme):
        words = codeword_array(scheme.code)
        outside = words[~in_dual_rows(scheme.code, words)]
        if outside.shape[0] > 64:
            outside = outside[:: outside.shape[0] // 64]
        for i in range(scheme.q):
            psi = encode_secret(scheme, i)
            for c in outside:
                result = recover(scheme, psi, c)
                assert int(result.secret) == i
                assert result.ancilla_mass >= 1 - TOL
                assert abs(inner(psi, result.post_state)) ** 2 >= 1 - TOL


def test_recover_zero_secret_any_witness(ex11_scheme):
    psi = encode_secret(ex11_scheme, 0)
    for w in minimal_codewords_outside_dual(ex11_scheme.code):
        assert int(recover(ex11_scheme, psi, w).secret) == 0


def test_recover_errors(ex11_scheme, F2):
    psi = encode_secret(ex11_scheme, 1)
    with pytest.raises(NotAuthorizedWitness):
        recover(ex11_scheme, psi, [1, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0])  # a dual codeword
    mixed = StateVector(F2, 11, (encode_secret(ex11_scheme, 0).amplitudes + psi.amplitudes) / np.sqrt(2))
    with pytest.raises(NonDeterministicAncilla):
        recover(ex11_scheme, mixed, EX11_E)


def test_share_parity():
    assert share_parity([(1, 0, 1), (0, 1, 1)], [1, 3]) == {0, 1}
    assert share_parity([(1, 1, 0)], [1, 2]) == {0}
