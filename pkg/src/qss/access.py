"""Access structures: from minimal codewords, and from a brute-force oracle.

The oracle never looks at codewords. It prepares the encoded states
|psi_i> on a statevector and decides each party set T with the two
expectation-value tests over the Pauli basis:

* T is unauthorized iff <psi_i|F|psi_i> does not depend on i for every
  X(a)Z(b) supported inside T;
* T is authorized iff <psi_i|E|psi_j> = 0 for i != j and every X(a)Z(b)
  supported inside the complement of T.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .codes import codeword_array, in_dual_rows, minimal_codewords_outside_dual
from .css import ErrorClass, PauliWord, QssScheme, classify_arrays
from .errors import BadEntry, DimensionTooLarge, OperatorScanTooLarge, SizeMismatch
from .qsim import EPS, basis_digits, encode_secret

PartySet = tuple[int, ...]

OPERATOR_CAP = 4**8
ORACLE_MAX_DIM = 1 << 20


def party_set(parties: Iterable[int], n: int) -> PartySet:
    out = tuple(sorted({int(t) for t in parties}))
    if out and (out[0] < 1 or out[-1] > n):
        raise BadEntry(f"party positions must lie in [1, {n}], got {list(out)}")
    return out


def _order(sets: Iterable[PartySet]) -> list[PartySet]:
    return sorted(set(sets), key=lambda s: (len(s), s))


@dataclass
class AccessStructure:
    """Minimal authorized sets of an n-party scheme.

    ``multiplicity`` counts how many normalized minimal codewords share each
    support; oracle-derived structures record 1 for every set.
    """

    n: int
    gamma_min: list[PartySet]
    source: str
    multiplicity: dict[PartySet, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.gamma_min = _order(party_set(s, self.n) for s in self.gamma_min)
        if not self.multiplicity:
            self.multiplicity = {s: 1 for s in self.gamma_min}

    def is_authorized(self, T: Iterable[int]) -> bool:
        T = set(T)
        return any(set(s) <= T for s in self.gamma_min)

    def is_antichain(self) -> bool:
        sets = [set(s) for s in self.gamma_min]
        return not any(a < b for a in sets for b in sets)

    def size_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(len(s) for s in self.gamma_min).items()))


def gamma_from_minimal_codewords(scheme: QssScheme) -> AccessStructure:
    """Supports of the minimal codewords of C \\ C^perp."""
    words = minimal_codewords_outside_dual(scheme.code)
    counts = Counter(w.support for w in words)
    structure = AccessStructure(scheme.n, list(counts), "codewords", dict(counts))
    if not structure.is_antichain():
        raise AssertionError("minimal codeword supports are not an antichain")  # pragma: no cover
    return structure


################################################################################
# oracle


@dataclass
class OracleVerdict:
    """Result of one expectation-value scan; falsy when the condition fails."""

    holds: bool
    operators_checked: int
    witness: PauliWord | None = None
    pair: tuple[int, int] | None = None
    values: tuple[complex, complex] | None = None

    def __bool__(self) -> bool:
        return self.holds


class _Oracle:
    """Encoded states of one scheme plus cached per-position tables."""

    def __init__(self, scheme: QssScheme, max_dim: int | None, force: bool) -> None:
        spec = scheme.spec
        cap = ORACLE_MAX_DIM if max_dim is None else max_dim
        if spec.q**scheme.n > cap and not force:
            raise DimensionTooLarge(f"oracle statevector {spec.q}^{scheme.n} exceeds {cap}")
        self.scheme = scheme
        self.spec = spec
        self.n = scheme.n
        self.states = np.stack([encode_secret(scheme, i, max_dim=spec.q**scheme.n).amplitudes for i in range(spec.q)])
        self.digits = basis_digits(spec.q, scheme.n)
        self.powers = spec.q ** np.arange(scheme.n - 1, -1, -1, dtype=np.int64)

    def _check_count(self, size: int, cap: int | None, force: bool) -> None:
        cap = OPERATOR_CAP if cap is None else cap
        count = self.spec.q ** (2 * size)
        if count > cap and not force:
            raise OperatorScanTooLarge(f"{count} operators on {size} parties exceed the cap of {cap}")

    def _local_words(self, positions: PartySet) -> np.ndarray:
        """All q^|T| local value patterns on the given positions."""
        size = len(positions)
        words = list(itertools.product(range(self.spec.q), repeat=size))
        return np.array(words, dtype=np.int64).reshape(self.spec.q**size, size)

    def _phase_matrix(self, positions: PartySet, patterns: np.ndarray) -> np.ndarray:
        """phases[b, x] = omega^tr(b . x) restricted to ``positions``."""
        spec = self.spec
        cols = [t - 1 for t in positions]
        exponent = np.zeros((patterns.shape[0], self.digits.shape[0]), dtype=np.int64)
        for k, col in enumerate(cols):
            exponent += spec.trace(spec.mul(patterns[:, k, None], self.digits[None, :, col]))
        return np.exp(2j * np.pi * (exponent % spec.p) / spec.p)

    def _target(self, positions: PartySet, shift: np.ndarray) -> np.ndarray:
        digits = np.array(self.digits)
        for k, t in enumerate(positions):
            digits[:, t - 1] = self.spec.add(digits[:, t - 1], int(shift[k]))
        return digits @ self.powers

    def _word(self, positions: PartySet, a_local: np.ndarray, b_local: np.ndarray) -> PauliWord:
        a = [0] * self.n
        b = [0] * self.n
        for k, t in enumerate(positions):
            a[t - 1] = int(a_local[k])
            b[t - 1] = int(b_local[k])
        return PauliWord.of(a, b)

    def scan(self, positions: PartySet, diagonal: bool, eps: float) -> OracleVerdict:
        """Diagonal: <psi_i|F|psi_i> constant in i. Off-diagonal: <psi_i|E|psi_j> = 0."""
        patterns = self._local_words(positions)
        phases = self._phase_matrix(positions, patterns)
        psi = self.states
        q = self.spec.q
        checked = 0
        for a_local in patterns:
            target = self._target(positions, a_local)
            # <psi_i| X(a)Z(b) |psi_j> = sum_x conj(psi_i[target[x]]) phase_b[x] psi_j[x]
            shifted = np.conj(psi[:, target])
            if diagonal:
                values = (shifted * psi) @ phases.T  # (q, #b)
                bad = np.abs(values - values[0][None, :]) >= eps
                checked += phases.shape[0]
                if bad.any():
                    i, bi = np.argwhere(bad)[0]
                    return OracleVerdict(False, checked, self._word(positions, a_local, patterns[bi]), (0, int(i)),
                                         (complex(values[0, bi]), complex(values[i, bi])))
            else:
                values = (shifted[:, None, :] * psi[None, :, :]).reshape(q * q, -1) @ phases.T
                values = values.reshape(q, q, -1)
                off = ~np.eye(q, dtype=bool)
                bad = (np.abs(values) >= eps) & off[:, :, None]
                checked += phases.shape[0]
                if bad.any():
                    i, j, bi = np.argwhere(bad)[0]
                    return OracleVerdict(False, checked, self._word(positions, a_local, patterns[bi]),
                                         (int(i), int(j)), (complex(values[i, j, bi]), complex(values[j, i, bi])))
        return OracleVerdict(True, checked)

    def unauthorized(self, T: PartySet, eps: float, t_cap: int | None, force: bool) -> OracleVerdict:
        self._check_count(len(T), t_cap, force)
        return self.scan(T, diagonal=True, eps=eps)

    def authorized(self, T: PartySet, eps: float, t_cap: int | None, force: bool) -> OracleVerdict:
        rest = tuple(t for t in range(1, self.n + 1) if t not in T)
        self._check_count(len(rest), t_cap, force)
        return self.scan(rest, diagonal=False, eps=eps)


def is_unauthorized_oracle(
    scheme: QssScheme,
    T: Iterable[int],
    eps: float = EPS,
    t_cap: int | None = None,
    force: bool = False,
    max_dim: int | None = None,
) -> OracleVerdict:
    """True iff no Pauli operator inside T tells the encoded states apart."""
    oracle = _Oracle(scheme, max_dim, force)
    return oracle.unauthorized(party_set(T, scheme.n), eps, t_cap, force)


def is_authorized_oracle(
    scheme: QssScheme,
    T: Iterable[int],
    eps: float = EPS,
    t_cap: int | None = None,
    force: bool = False,
    max_dim: int | None = None,
) -> OracleVerdict:
    """True iff no Pauli operator on the complement of T links distinct encoded states."""
    oracle = _Oracle(scheme, max_dim, force)
    return oracle.authorized(party_set(T, scheme.n), eps, t_cap, force)


@dataclass
class OracleReport:
    subsets_scanned: int = 0
    authorized: list[PartySet] = field(default_factory=list)
    dichotomy_violations: list[PartySet] = field(default_factory=list)
    monotonicity_violations: list[tuple[PartySet, PartySet]] = field(default_factory=list)
    complement_conflicts: list[PartySet] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.dichotomy_violations or self.monotonicity_violations or self.complement_conflicts)


def full_oracle_structure(
    scheme: QssScheme,
    eps: float = EPS,
    t_cap: int | None = None,
    force: bool = False,
    max_dim: int | None = None,
) -> tuple[AccessStructure, OracleReport]:
    """Classify all 2^n party sets with the oracle and extract the minimal authorized ones."""
    oracle = _Oracle(scheme, max_dim, force)
    n = scheme.n
    report = OracleReport()
    status: dict[PartySet, bool] = {}
    for size in range(n + 1):
        for T in itertools.combinations(range(1, n + 1), size):
            auth = bool(oracle.authorized(T, eps, t_cap, force))
            unauth = bool(oracle.unauthorized(T, eps, t_cap, force))
            if auth == unauth:
                report.dichotomy_violations.append(T)
            status[T] = auth
            report.subsets_scanned += 1

    for T, auth in status.items():
        for j in range(1, n + 1):
            if j in T:
                continue
            bigger = tuple(sorted(T + (j,)))
            if auth and not status[bigger]:
                report.monotonicity_violations.append((T, bigger))
        if auth:
            complement = tuple(t for t in range(1, n + 1) if t not in T)
            if status[complement]:
                report.complement_conflicts.append(T)

    report.authorized = _order(T for T, auth in status.items() if auth)
    minimal = [T for T in report.authorized if not any(status[T[:i] + T[i + 1 :]] for i in range(len(T)))]
    return AccessStructure(n, minimal, "oracle"), report


@dataclass
class StructureDiff:
    only_in_first: list[PartySet]
    only_in_second: list[PartySet]

    @property
    def agree(self) -> bool:
        return not (self.only_in_first or self.only_in_second)


def compare_structures(first: AccessStructure, second: AccessStructure) -> StructureDiff:
    if first.n != second.n:
        raise SizeMismatch(f"structures on {first.n} and {second.n} parties")
    a, b = set(first.gamma_min), set(second.gamma_min)
    return StructureDiff(_order(a - b), _order(b - a))


################################################################################
# algebraic checks


@dataclass
class DetectabilityReport:
    subsets_checked: int = 0
    words_checked: int = 0
    violations: list[tuple[PartySet, PauliWord, ErrorClass]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _words_within(q: int, n: int, positions: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    size = 2 * len(positions)
    local = np.array(list(itertools.product(range(q), repeat=size)), dtype=np.int64).reshape(q**size, size)
    A = np.zeros((local.shape[0], n), dtype=np.int64)
    B = np.zeros_like(A)
    cols = [t - 1 for t in positions]
    A[:, cols] = local[:, : len(positions)]
    B[:, cols] = local[:, len(positions) :]
    return A, B


def proper_subset_detectability(scheme: QssScheme, max_size: int = 4) -> DetectabilityReport:
    """Every nonidentity (a|b) inside a proper subset of a minimal support must be Detectable."""
    report = DetectabilityReport()
    seen: set[PartySet] = set()
    for word in minimal_codewords_outside_dual(scheme.code):
        supp = word.support
        for size in range(1, min(len(supp) - 1, max_size) + 1):
            for T in itertools.combinations(supp, size):
                if T in seen:
                    continue
                seen.add(T)
                A, B = _words_within(scheme.q, scheme.n, T)
                classes = classify_arrays(scheme, A, B)
                report.subsets_checked += 1
                report.words_checked += len(classes)
                identity = ~(A.any(axis=1) | B.any(axis=1))
                for idx in np.nonzero((classes != ErrorClass.DETECTABLE) & ~identity)[0]:
                    report.violations.append((T, PauliWord.of(A[idx], B[idx]), classes[idx]))
    return report


def min_weight_supports(scheme: QssScheme) -> list[PartySet]:
    """Supports of the minimum-weight words of C \\ C^perp."""
    words = codeword_array(scheme.code)
    outside = words[~in_dual_rows(scheme.code, words)]
    weights = (outside != 0).sum(axis=1)
    lightest = outside[weights == weights.min()]
    return _order(tuple(int(t) + 1 for t in np.nonzero(row)[0]) for row in lightest)
