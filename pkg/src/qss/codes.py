"""Linear codes over F_q: canonical forms, duals, enumeration and minimal codewords."""

from __future__ import annotations

import functools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import BadEntry, EnumerationTooLarge, LengthMismatch, NotCss, ZeroCode
from .gf import FieldSpec

ENUMERATION_CAP = 1 << 24
# subset-sum table over all 2^n supports is used up to this length
_SOS_MAX_N = 20


@dataclass(frozen=True)
class Codeword:
    """A vector of field values with its Hamming support (1-indexed positions)."""

    vector: tuple[int, ...]

    @classmethod
    def of(cls, values: Sequence[int] | np.ndarray) -> Codeword:
        return cls(tuple(int(v) for v in values))

    def __len__(self) -> int:
        return len(self.vector)

    @property
    def weight(self) -> int:
        return sum(1 for v in self.vector if v)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, v in enumerate(self.vector) if v)

    def array(self) -> np.ndarray:
        return np.array(self.vector, dtype=np.int64)

    def __str__(self) -> str:
        return format_vector(self.vector)


def format_vector(values: Sequence[int]) -> str:
    values = [int(v) for v in values]
    if all(v < 10 for v in values):
        return "".join(str(v) for v in values)
    return ",".join(str(v) for v in values)


def sort_key(word: Codeword) -> tuple[int, tuple[int, ...]]:
    return word.weight, word.support


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A linear [n, k] code with generator ``G`` in RREF and parity check ``H``.

    ``H`` generates the dual code, so ``G @ H.T == 0`` and a vector lies in the
    code iff its syndrome under ``H`` vanishes.
    """

    spec: FieldSpec
    G: np.ndarray
    H: np.ndarray

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def k(self) -> int:
        return self.G.shape[0]

    @property
    def size(self) -> int:
        return self.spec.q**self.k

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.spec!r})"

    def same_codewords(self, other: LinearCode) -> bool:
        if self.spec != other.spec or self.n != other.n or self.k != other.k:
            return False
        return all(contains(self, row) for row in other.G)

    @functools.cached_property
    def _cache(self) -> dict:
        return {}


def code_from_generator(spec: FieldSpec, rows) -> LinearCode:
    """Build a code from any spanning rows; dependent rows are dropped."""
    M = np.asarray(rows, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] == 0 or M.shape[1] == 0:
        raise BadEntry("generator must be a nonempty matrix")
    M = spec.check_array(M)
    G, _ = spec.rref(M)
    if G.shape[0] == 0:
        raise ZeroCode("the rows span the zero code")
    H = spec.nullspace(G)
    if H.shape[0]:
        H, _ = spec.rref(H)
    return LinearCode(spec, G, H)


def dual(code: LinearCode) -> LinearCode:
    if code.H.shape[0] == 0:
        raise ZeroCode("the dual of the full space is the zero code")
    return code_from_generator(code.spec, code.H)


def contains(code: LinearCode, v) -> bool:
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (code.n,):
        raise LengthMismatch(f"expected a vector of length {code.n}, got shape {v.shape}")
    code.spec.check_array(v)
    if code.H.shape[0] == 0:
        return True
    return not code.spec.matmul(code.H, v).any()


def contains_rows(code: LinearCode, V: np.ndarray) -> np.ndarray:
    """Vectorized membership for the rows of ``V``."""
    V = np.asarray(V, dtype=np.int64)
    if code.H.shape[0] == 0:
        return np.ones(V.shape[0], dtype=bool)
    return ~code.spec.matmul(V, code.H.T).any(axis=1)


def in_dual_rows(code: LinearCode, V: np.ndarray) -> np.ndarray:
    """Rows of ``V`` lying in the dual of ``code`` (orthogonal to every row of G)."""
    return ~code.spec.matmul(np.asarray(V, dtype=np.int64), code.G.T).any(axis=1)


def _check_cap(code: LinearCode, cap: int | None) -> None:
    cap = ENUMERATION_CAP if cap is None else cap
    if code.size > cap:
        raise EnumerationTooLarge(f"{code!r} has {code.size} codewords, cap is {cap}")


def _messages(q: int, k: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


def codeword_array(code: LinearCode, cap: int | None = None) -> np.ndarray:
    """All q^k codewords as rows, in message order (message digits most significant first)."""
    _check_cap(code, cap)
    key = "words"
    if key not in code._cache:
        words = code.spec.matmul(_messages(code.spec.q, code.k, 0, code.size), code.G)
        words.setflags(write=False)
        code._cache[key] = words
    return code._cache[key]


def enumerate_codewords(code: LinearCode, cap: int | None = None, chunk: int = 4096) -> Iterator[Codeword]:
    _check_cap(code, cap)
    for start in range(0, code.size, chunk):
        stop = min(code.size, start + chunk)
        block = code.spec.matmul(_messages(code.spec.q, code.k, start, stop), code.G)
        for row in block:
            yield Codeword.of(row)


def covers(x: Codeword, y: Codeword) -> bool:
    """True iff supp(y) is contained in supp(x)."""
    if len(x) != len(y):
        raise LengthMismatch(f"lengths {len(x)} and {len(y)} differ")
    return set(y.support) <= set(x.support)


def normalize_rows(spec: FieldSpec, V: np.ndarray) -> np.ndarray:
    """Scale every nonzero row so its leftmost nonzero entry is 1."""
    V = np.asarray(V, dtype=np.int64)
    nonzero = V != 0
    has = nonzero.any(axis=1)
    lead = V[np.arange(V.shape[0]), nonzero.argmax(axis=1)]
    scale = np.ones_like(lead)
    scale[has] = spec.inv(lead[has])
    return spec.mul(V, scale[:, None])


def support_masks(V: np.ndarray) -> np.ndarray:
    """Bit i-1 set iff position i is nonzero."""
    n = V.shape[1]
    if n > 62:
        raise EnumerationTooLarge("support masks are limited to n <= 62")
    return (np.asarray(V) != 0).astype(np.int64) @ (np.int64(1) << np.arange(n, dtype=np.int64))


def _subset_counts(masks: np.ndarray, counts: np.ndarray, queries: np.ndarray, n: int) -> np.ndarray:
    """For each query mask, the total count over masks contained in it."""
    if n <= _SOS_MAX_N:
        f = np.zeros(1 << n, dtype=np.int64)
        np.add.at(f, masks, counts)
        idx = np.arange(1 << n)
        for bit in range(n):
            has = (idx >> bit) & 1 == 1
            f[has] += f[idx[has] ^ (1 << bit)]
        return f[queries]
    return np.array([counts[(masks & ~qm) == 0].sum() for qm in queries], dtype=np.int64)


def require_css_pair(code: LinearCode) -> None:
    """Raise NotCss unless the dual of ``code`` is contained in ``code``."""
    if code.H.shape[0] and code.spec.matmul(code.H, code.H.T).any():
        raise NotCss(f"the dual of {code!r} is not contained in it")


def minimal_codewords_outside_dual(code: LinearCode, cap: int | None = None) -> list[Codeword]:
    """Minimal codewords of C that do not lie in the dual of C.

    A codeword is minimal when the only codewords it covers are its own scalar
    multiples and zero. Each one is scaled so its leftmost nonzero entry is 1;
    the result is sorted by (weight, support).
    """
    require_css_pair(code)
    words = codeword_array(code, cap)
    spec = code.spec
    classes = np.unique(normalize_rows(spec, words[words.any(axis=1)]), axis=0)
    masks = support_masks(classes)
    uniq, counts = np.unique(masks, return_counts=True)
    outside = ~in_dual_rows(code, classes)
    candidates = classes[outside]
    covered = _subset_counts(uniq, counts, masks[outside], code.n)
    minimal = [Codeword.of(row) for row in candidates[covered == 1]]
    return sorted(minimal, key=sort_key)


def min_weight_outside_dual(code: LinearCode, cap: int | None = None) -> int:
    require_css_pair(code)
    words = codeword_array(code, cap)
    outside = words[~in_dual_rows(code, words)]
    return int((outside != 0).sum(axis=1).min())


def min_nonzero_weight(code: LinearCode, cap: int | None = None) -> int:
    words = codeword_array(code, cap)
    weights = (words != 0).sum(axis=1)
    return int(weights[weights > 0].min())
