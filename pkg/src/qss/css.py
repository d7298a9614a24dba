"""CSS secret-sharing schemes built from a code C that contains its dual.

A scheme encodes one qudit, so ``dim C - dim C^perp = 1`` and ``n = 2k - 1``.
The secret ``i`` is carried by the coset ``i*g + C^perp`` for a fixed
``g`` in ``C \\ C^perp``; ``beta = g.g`` is nonzero for every valid scheme.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .codes import (
    Codeword,
    LinearCode,
    codeword_array,
    contains,
    dual,
    contains_rows,
    format_vector,
    in_dual_rows,
    min_nonzero_weight,
    min_weight_outside_dual,
    normalize_rows,
    require_css_pair,
)
from .errors import BadG, EnumerationTooLarge, ImpureCode, LengthMismatch, NotCss, ValidationError, WrongDimension
from .gf import FieldElement, FieldSpec

# exhaustive pair checks stop here; larger sets need sampling
PAIR_CHECK_CAP = 1 << 24


@dataclass(frozen=True)
class PauliWord:
    """The error operator X(a)Z(b), stored as the pair (a|b)."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise LengthMismatch(f"X part has length {len(self.a)}, Z part {len(self.b)}")

    @classmethod
    def of(cls, a: Sequence[int], b: Sequence[int] | None = None) -> PauliWord:
        a = tuple(int(v) for v in a)
        b = tuple(int(v) for v in b) if b is not None else (0,) * len(a)
        return cls(a, b)

    @classmethod
    def identity(cls, n: int) -> PauliWord:
        return cls((0,) * n, (0,) * n)

    def __len__(self) -> int:
        return len(self.a)

    @property
    def support(self) -> tuple[int, ...]:
        """1-indexed positions t with (a_t, b_t) != (0, 0)."""
        return tuple(t + 1 for t, (x, z) in enumerate(zip(self.a, self.b)) if x or z)

    def __str__(self) -> str:
        return f"({format_vector(self.a)}|{format_vector(self.b)})"


class ErrorClass(enum.Enum):
    DETECTABLE = "Detectable"
    STABILIZER = "StabilizerElement"
    UNDETECTABLE = "UndetectableLogical"


@dataclass(frozen=True, eq=False)
class QssScheme:
    code: LinearCode
    dual_code: LinearCode | None
    g: Codeword
    beta: FieldElement
    d: int
    pure: bool

    @property
    def spec(self) -> FieldSpec:
        return self.code.spec

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def q(self) -> int:
        return self.code.spec.q

    def __repr__(self) -> str:
        return f"QssScheme([[{self.n},1,{self.d}]]_{self.q}, g={self.g}, beta={self.beta}, pure={self.pure})"


def _default_g(code: LinearCode) -> Codeword:
    words = codeword_array(code)
    outside = normalize_rows(code.spec, words[~in_dual_rows(code, words)])
    order = np.lexsort(outside.T[::-1])
    return Codeword.of(outside[order[0]])


def build_scheme(code: LinearCode, g: Sequence[int] | None = None, allow_impure: bool = False) -> QssScheme:
    """Validate the CSS pair and fix the coset representative ``g``.

    Without an explicit ``g`` the lexicographically smallest normalized
    codeword of C \\ C^perp is used.
    """
    require_css_pair(code)
    if not all(contains(code, h) for h in code.H):
        raise NotCss(f"a parity check row of {code!r} is not a codeword")
    if code.n != 2 * code.k - 1:
        raise WrongDimension(f"need n = 2k - 1 for one encoded qudit, got n={code.n}, k={code.k}")

    d = min_weight_outside_dual(code)
    dual_code = None
    if code.H.shape[0]:
        dual_code = dual(code)
        pure = min_nonzero_weight(dual_code) >= d
    else:
        pure = True
    if not pure and not allow_impure:
        raise ImpureCode(f"the dual of {code!r} has nonzero words lighter than d={d}")

    spec = code.spec
    if g is None:
        gword = _default_g(code)
    else:
        gvec = np.asarray([int(v) for v in g], dtype=np.int64)
        if gvec.shape != (code.n,) or gvec.min() < 0 or gvec.max() >= spec.q:
            raise BadG(f"g must be {code.n} entries in [0, {spec.q})")
        if not contains(code, gvec) or in_dual_rows(code, gvec[None, :])[0]:
            raise BadG(f"g = {Codeword.of(gvec)} is not in C \\ C^perp")
        gword = Codeword.of(gvec)

    beta = spec(spec.vdot(gword.vector, gword.vector))
    if not beta:
        # impossible for a valid pair; guards against arithmetic bugs
        raise ValidationError(f"g.g = 0 for g = {gword}")
    return QssScheme(code, dual_code, gword, beta, d, pure)


def stabilizer_matrix(scheme: QssScheme) -> np.ndarray:
    """Block diagonal [[H, 0], [0, H]] acting on (a|b)."""
    H = scheme.code.H
    r, n = H.shape
    S = np.zeros((2 * r, 2 * n), dtype=np.int64)
    S[:r, :n] = H
    S[r:, n:] = H
    return S


def classify_arrays(scheme: QssScheme, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Vectorized classification; returns an object array of ErrorClass values."""
    code = scheme.code
    a_in_c, b_in_c = contains_rows(code, A), contains_rows(code, B)
    a_in_dual, b_in_dual = in_dual_rows(code, A), in_dual_rows(code, B)
    out = np.full(A.shape[0], ErrorClass.DETECTABLE, dtype=object)
    out[a_in_c & b_in_c] = ErrorClass.UNDETECTABLE
    out[a_in_dual & b_in_dual] = ErrorClass.STABILIZER
    return out


def classify_error(scheme: QssScheme, E: PauliWord) -> ErrorClass:
    if len(E) != scheme.n:
        raise LengthMismatch(f"expected an operator on {scheme.n} qudits, got {len(E)}")
    scheme.spec.check_array(E.a)
    scheme.spec.check_array(E.b)
    A = np.array([E.a], dtype=np.int64)
    B = np.array([E.b], dtype=np.int64)
    return classify_arrays(scheme, A, B)[0]


@dataclass
class DotProductReport:
    """Outcome of the pairwise x.y != 0 check over C \\ C^perp."""

    passed: bool
    pairs_checked: int
    exhaustive: bool
    d_odd: bool | None = None
    witness: tuple[Codeword, Codeword, int] | None = None
    notes: list[str] = field(default_factory=list)


def check_pairwise_products(
    scheme: QssScheme, samples: int | None = None, rng: np.random.Generator | None = None
) -> DotProductReport:
    """Check that any two words of C \\ C^perp have nonzero dot product.

    Over F_2 every such product must equal 1 and d must be odd. ``samples=None``
    checks every ordered pair.
    """
    spec = scheme.spec
    words = codeword_array(scheme.code)
    outside = words[~in_dual_rows(scheme.code, words)]
    binary = spec.q == 2
    d_odd = scheme.d % 2 == 1 if binary else None

    if samples is None:
        if outside.shape[0] ** 2 > PAIR_CHECK_CAP:
            raise EnumerationTooLarge(f"{outside.shape[0]}^2 pairs exceed {PAIR_CHECK_CAP}; pass samples")
        X, Y = outside, outside
        products = spec.matmul(X, Y.T)
        bad = np.argwhere(products != 1) if binary else np.argwhere(products == 0)
        checked = products.size
        pick = (lambda i, j: (X[i], Y[j], int(products[i, j]))) if bad.size else None
    else:
        rng = rng or np.random.default_rng(0)
        i_idx = rng.integers(0, outside.shape[0], samples)
        j_idx = rng.integers(0, outside.shape[0], samples)
        X, Y = outside[i_idx], outside[j_idx]
        values = np.array([spec.vdot(x, y) for x, y in zip(X, Y)], dtype=np.int64)
        bad_rows = np.nonzero(values != 1)[0] if binary else np.nonzero(values == 0)[0]
        bad = np.stack([bad_rows, bad_rows], axis=1)
        checked = samples
        pick = (lambda i, j: (X[i], Y[i], int(values[i]))) if bad.size else None

    report = DotProductReport(passed=bad.size == 0 and d_odd is not False, pairs_checked=checked,
                              exhaustive=samples is None, d_odd=d_odd)
    if pick is not None:
        x, y, value = pick(*bad[0])
        report.witness = (Codeword.of(x), Codeword.of(y), value)
        report.notes.append(f"{Codeword.of(x)} . {Codeword.of(y)} = {value}")
    if d_odd is False:
        report.notes.append(f"binary scheme with even d = {scheme.d}")
    return report
