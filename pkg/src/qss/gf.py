"""Exact arithmetic in prime and prime-power finite fields.

An element of F_q, q = p^m, is stored as an integer in ``[0, q)`` whose base-p
digits are the ascending-degree coefficients of a polynomial reduced modulo
the field's defining polynomial. Prime fields use plain modular arithmetic;
extension fields use precomputed addition and multiplication tables, so every
operation below works elementwise on integers and on numpy integer arrays.
"""

from __future__ import annotations

import functools
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    BadEntry,
    BadPolynomial,
    DivisionByZero,
    FieldMismatch,
    LengthMismatch,
    MissingPolynomial,
    NonPrimeCharacteristic,
    ReduciblePolynomial,
)

# ascending-degree coefficients
DEFAULT_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
}

# extension fields are table driven; keep the tables small
MAX_EXTENSION_ORDER = 1 << 12


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


################################################################################
# polynomials over F_p, ascending coefficient lists


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    f = _trim(list(f))
    lead_inv = pow(f[-1], p - 2, p)
    while len(a) >= len(f):
        coef = a[-1] * lead_inv % p
        shift = len(a) - len(f)
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fi) % p
        _trim(a)
    return a


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    size = max(len(a), len(b))
    a = list(a) + [0] * (size - len(a))
    b = list(b) + [0] * (size - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _x_pow_mod(e: int, f: Sequence[int], p: int) -> list[int]:
    """x^e mod f by square-and-multiply."""
    result: list[int] = [1]
    base = _poly_mod([0, 1], f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Ben-Or test: f of degree m is irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= m/2."""
    f = _trim(list(poly))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for i in range(1, m // 2 + 1):
        h = _poly_sub(_x_pow_mod(p**i, f, p), [0, 1], p)
        if len(_poly_gcd(f, h, p)) > 1:
            return False
    return True


################################################################################
# field spec


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q with q = p^m.

    Use :func:`make_field` to construct a validated instance.
    """

    p: int
    m: int = 1
    poly: tuple[int, ...] | None = None

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, poly={list(self.poly or ())})"

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, self.check(value))

    def check(self, value: int) -> int:
        value = int(value)
        if not 0 <= value < self.q:
            raise BadEntry(f"{value} is not an element of {self!r}")
        return value

    def check_array(self, values) -> np.ndarray:
        arr = np.asarray(values, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise BadEntry(f"entries must lie in [0, {self.q}) for {self!r}")
        return arr

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.q)]

    # digit representation of extension elements
    def to_digits(self, value: int) -> list[int]:
        digits = []
        for _ in range(self.m):
            value, d = divmod(value, self.p)
            digits.append(d)
        return digits

    def from_digits(self, digits: Sequence[int]) -> int:
        value = 0
        for d in reversed(list(digits)[: self.m]):
            value = value * self.p + d
        return value

    @functools.cached_property
    def add_table(self) -> np.ndarray:
        q, p = self.q, self.p
        if self.m == 1:
            r = np.arange(q)
            return (r[:, None] + r[None, :]) % p
        digits = np.array([self.to_digits(v) for v in range(q)], dtype=np.int64)
        weights = p ** np.arange(self.m)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        return summed @ weights

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        if self.m == 1:
            r = np.arange(q)
            return (r[:, None] * r[None, :]) % self.p
        table = np.zeros((q, q), dtype=np.int64)
        assert self.poly is not None
        for a in range(1, q):
            da = self.to_digits(a)
            for b in range(a, q):
                prod = _poly_mod(_poly_mul(da, self.to_digits(b), self.p), self.poly, self.p)
                table[a, b] = table[b, a] = self.from_digits(prod)
        return table

    @functools.cached_property
    def neg_table(self) -> np.ndarray:
        if self.m == 1:
            return (-np.arange(self.q)) % self.p
        return np.argmin(self.add_table, axis=1)

    @functools.cached_property
    def inv_table(self) -> np.ndarray:
        """Multiplicative inverses; entry 0 is a 0 placeholder."""
        inv = np.zeros(self.q, dtype=np.int64)
        if self.m == 1:
            for a in range(1, self.q):
                inv[a] = pow(a, self.p - 2, self.p)
        else:
            rows, cols = np.nonzero(self.mul_table == 1)
            inv[rows] = cols
        return inv

    @functools.cached_property
    def trace_table(self) -> np.ndarray:
        """Absolute trace to the prime subfield, as integers in [0, p)."""
        if self.m == 1:
            return np.arange(self.q)
        out = np.zeros(self.q, dtype=np.int64)
        for a in range(self.q):
            acc, frob = 0, a
            for _ in range(self.m):
                acc = int(self.add_table[acc, frob])
                frob = self.pow(frob, self.p)
            if acc >= self.p:
                raise AssertionError(f"trace of {a} left the prime subfield")  # pragma: no cover
            out[a] = acc
        return out

    # elementwise arithmetic on ints or integer arrays
    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        return self.add_table[a, b]

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        return self.mul_table[a, b]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        result, base = 1, int(a)
        while e:
            if e & 1:
                result = int(self.mul(result, base))
            base = int(self.mul(base, base))
            e >>= 1
        return result

    def trace(self, a):
        return self.trace_table[a]

    # vectors and matrices
    def matmul(self, A, B) -> np.ndarray:
        """Matrix product over F_q; 1-D operands behave as in ``np.matmul``."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.m == 1:
            return (A @ B) % self.p
        A2 = A[None, :] if A.ndim == 1 else A
        B2 = B[:, None] if B.ndim == 1 else B
        if A2.shape[1] != B2.shape[0]:
            raise LengthMismatch(f"cannot multiply {A.shape} by {B.shape}")
        acc = np.zeros((A2.shape[0], B2.shape[1]), dtype=np.int64)
        for l in range(A2.shape[1]):
            acc = self.add_table[acc, self.mul_table[A2[:, l, None], B2[None, l, :]]]
        if A.ndim == 1:
            acc = acc[0]
        if B.ndim == 1:
            acc = acc[..., 0]
        return acc

    def vdot(self, u, v) -> int:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if u.shape != v.shape:
            raise LengthMismatch(f"dot product of lengths {u.shape} and {v.shape}")
        return int(self.matmul(u, v))

    def rref(self, M) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form with zero rows dropped, and the pivot columns."""
        R = np.array(M, dtype=np.int64, copy=True)
        if R.ndim != 2:
            raise BadEntry("expected a matrix")
        rows, cols = R.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(R[r:, c])[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                R[[r, piv]] = R[[piv, r]]
            R[r] = self.mul(R[r], self.inv(int(R[r, c])))
            for i in range(rows):
                if i != r and R[i, c]:
                    R[i] = self.sub(R[i], self.mul(R[r], int(R[i, c])))
            pivots.append(c)
            r += 1
        return R[:r], pivots

    def rank(self, M) -> int:
        return len(self.rref(M)[1])

    def nullspace(self, M) -> np.ndarray:
        """Basis (as rows) of {v : M v^T = 0}."""
        M = np.asarray(M, dtype=np.int64)
        n = M.shape[1]
        R, pivots = self.rref(M)
        free = [c for c in range(n) if c not in pivots]
        basis = np.zeros((len(free), n), dtype=np.int64)
        for t, f in enumerate(free):
            basis[t, f] = 1
            for i, pc in enumerate(pivots):
                basis[t, pc] = self.neg(int(R[i, f]))
        return basis

    def prime_subfield(self) -> FieldSpec:
        return FieldSpec(self.p)


def make_field(p: int, m: int = 1, poly: Sequence[int] | None = None) -> FieldSpec:
    """Validated F_{p^m}. GF(4), GF(8) and GF(9) fall back to built-in polynomials."""
    p, m = int(p), int(m)
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if m < 1:
        raise BadPolynomial(f"extension degree must be >= 1, got {m}")
    if m == 1:
        return FieldSpec(p, 1, None)
    if poly is None:
        if (p, m) not in DEFAULT_POLYS:
            raise MissingPolynomial(f"GF({p}^{m}) needs an explicit defining polynomial")
        poly = DEFAULT_POLYS[(p, m)]
    coeffs = tuple(int(c) for c in poly)
    if any(not 0 <= c < p for c in coeffs):
        raise BadPolynomial(f"polynomial coefficients must lie in [0, {p})")
    if len(coeffs) != m + 1 or coeffs[-1] != 1:
        raise BadPolynomial(f"polynomial must be monic of degree {m}, got {list(coeffs)}")
    if p**m > MAX_EXTENSION_ORDER:
        raise BadPolynomial(f"extension fields are limited to q <= {MAX_EXTENSION_ORDER}")
    if not is_irreducible(coeffs, p):
        raise ReduciblePolynomial(f"{list(coeffs)} is reducible over GF({p})")
    return FieldSpec(p, m, coeffs)


################################################################################
# elements


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.spec.q:
            raise BadEntry(f"{self.value} is not an element of {self.spec!r}")

    def _coerce(self, other: Operand) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec!r} vs {other.spec!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.spec.check(int(other))
        return NotImplemented  # type: ignore[return-value]

    def _wrap(self, value) -> FieldElement:
        return FieldElement(self.spec, int(value))

    def __add__(self, other: Operand) -> FieldElement:
        return self._wrap(self.spec.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other: Operand) -> FieldElement:
        return self._wrap(self.spec.sub(self.value, self._coerce(other)))

    def __rsub__(self, other: Operand) -> FieldElement:
        return self._wrap(self.spec.sub(self._coerce(other), self.value))

    def __mul__(self, other: Operand) -> FieldElement:
        return self._wrap(self.spec.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> FieldElement:
        return self._wrap(self.spec.div(self.value, self._coerce(other)))

    def __neg__(self) -> FieldElement:
        return self._wrap(self.spec.neg(self.value))

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inv() ** (-e)
        return self._wrap(self.spec.pow(self.value, e))

    def inv(self) -> FieldElement:
        return self._wrap(self.spec.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value}"


Operand = Union[FieldElement, int]

_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "inv": lambda a, b: a.inv(),
    "neg": lambda a, b: -a,
}


def arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch one of add, sub, mul, div, inv, neg; the unary ops ignore ``b``."""
    if op not in _OPS:
        raise ValueError(f"unknown field operation {op!r}")
    if b is not None and b.spec != a.spec:
        raise FieldMismatch(f"{a.spec!r} vs {b.spec!r}")
    return _OPS[op](a, b)


def trace(a: FieldElement) -> FieldElement:
    """Absolute trace tr(a) = a + a^p + ... + a^(p^(m-1)) as an element of F_p."""
    return FieldElement(a.spec.prime_subfield(), int(a.spec.trace(a.value)))


def dot(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> FieldElement:
    if len(u) != len(v):
        raise LengthMismatch(f"dot product of lengths {len(u)} and {len(v)}")
    specs = {x.spec for x in u} | {x.spec for x in v}
    if len(specs) > 1:
        raise FieldMismatch("vectors mix fields")
    if not specs:
        raise LengthMismatch("empty vectors carry no field")
    spec = specs.pop()
    return FieldElement(spec, spec.vdot([x.value for x in u], [x.value for x in v]))
