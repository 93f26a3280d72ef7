"""Exact scalars and dense linear algebra.

Scalars are either :class:`fractions.Fraction` (or ``int``) or
:class:`Cyclotomic`, an element of Q(zeta_n) stored as a residue modulo the
n-th cyclotomic polynomial.  Nothing in this module ever rounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from typing import Iterable, Sequence, Union

Scalar = Union[int, Q, "Cyclotomic"]


# ---------------------------------------------------------------------------
# polynomials over Q as coefficient lists, lowest degree first


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Quotient and remainder of a by b (b nonzero)."""
    a = _trim([Q(x) for x in a])
    b = _trim([Q(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Q(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        quot[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        _trim(a)
    return _trim(quot), a


def _poly_to_int(p: Sequence) -> tuple[int, ...]:
    out = []
    for c in p:
        c = Q(c)
        if c.denominator != 1:
            raise ValueError("non-integral cyclotomic polynomial coefficient")
        out.append(int(c))
    return tuple(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first (monic).

    Computed as (x^n - 1) divided by Phi_d for every proper divisor d.
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    num: list = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return _poly_to_int(num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(p: Sequence, n: int) -> tuple:
    """Residue of p modulo Phi_n, padded to length phi(n)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    p = [Q(x) for x in p]
    # Phi_n is monic: eliminate top coefficients directly
    for top in range(len(p) - 1, deg - 1, -1):
        c = p[top]
        if c:
            shift = top - deg
            for i, y in enumerate(phi):
                if y:
                    p[i + shift] -= c * y
    p = p[:deg] + [Q(0)] * max(0, deg - len(p))
    return tuple(p)


# ---------------------------------------------------------------------------


class Cyclotomic:
    """An element of Q(zeta_n), zeta_n = exp(2 pi i / n).

    ``coeffs[k]`` is the coefficient of zeta^k; the list always has length
    phi(n), so equality and zero testing are coefficientwise.
    """

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int, coeffs: Iterable = ()):
        self.n = n
        self.coeffs = _reduce(list(coeffs), n)
        self._hash = None

    # constructors --------------------------------------------------------
    @classmethod
    def zeta(cls, n: int, power: int = 1) -> "Cyclotomic":
        power %= n
        return cls(n, [0] * power + [1])

    @classmethod
    def rational(cls, value, n: int = 1) -> "Cyclotomic":
        return cls(n, [value])

    # structure -----------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Q:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def embed(self, m: int) -> "Cyclotomic":
        """The same number viewed inside Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"Q(zeta_{self.n}) does not embed in Q(zeta_{m})")
        step = m // self.n
        poly = [Q(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, c in enumerate(self.coeffs):
            poly[k * step] = c
        return Cyclotomic(m, poly)

    def _coerce(self, other) -> tuple["Cyclotomic", "Cyclotomic"] | None:
        if isinstance(other, Cyclotomic):
            if other.n == self.n:
                return self, other
            if other.is_rational():
                return self, Cyclotomic(self.n, [other.coeffs[0]])
            if self.is_rational():
                return Cyclotomic(other.n, [self.coeffs[0]]), other
            m = math.lcm(self.n, other.n)
            return self.embed(m), other.embed(m)
        if isinstance(other, (int, Q)):
            return self, Cyclotomic(self.n, [other])
        return None

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-x for x in self.coeffs])

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.n, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Q)):
            return Cyclotomic(self.n, [x * other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.n, _poly_mul(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic")
        # extended Euclid: find u with u * self == 1 mod Phi_n
        r0, r1 = list(cyclotomic_polynomial(self.n)), _trim(list(self.coeffs))
        s0, s1 = [], [Q(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            qs = _poly_mul(q, s1)
            s_new = [Q(0)] * max(len(s0), len(qs))
            for i, x in enumerate(s0):
                s_new[i] += x
            for i, x in enumerate(qs):
                s_new[i] -= x
            r0, r1 = r1, r
            s0, s1 = s1, _trim(s_new)
        c = r1[0]
        return Cyclotomic(self.n, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Q)):
            return Cyclotomic(self.n, [x / other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic(self.n, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison ----------------------------------------------------------
    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.n, self.coeffs))
        return self._hash

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z{self.n}^{k}")
        return " + ".join(terms) if terms else "0"


def simplify(x: Scalar) -> Scalar:
    """Collapse a rational-valued Cyclotomic to a Fraction."""
    if isinstance(x, Cyclotomic) and x.is_rational():
        return x.coeffs[0]
    if isinstance(x, int):
        return Q(x)
    return x


def fmt_scalar(x: Scalar) -> str:
    """Exact string form: '3', '-1/2', or a cyclotomic repr."""
    x = simplify(x)
    return str(x)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix with exact scalar entries (row-major)."""

    rows: int
    cols: int
    entries: tuple[tuple, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: int | None = None) -> "ExactMatrix":
        rows = [tuple(simplify(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[Q(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls.from_rows([[Q(0)] * cols for _ in range(rows)], cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self.entries:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append([sum((x * c[k] for k, x in nz), Q(0)) for c in cols])
        return ExactMatrix.from_rows(out, other.cols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols
        )

    def scale(self, c: Scalar) -> "ExactMatrix":
        return ExactMatrix.from_rows([[c * x for x in r] for r in self.entries], self.cols)

    def apply(self, v: Sequence[Scalar]) -> tuple:
        return tuple(simplify(sum((x * y for x, y in zip(r, v) if x and y), Q(0))) for r in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def power(self, k: int) -> "ExactMatrix":
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def trace(self) -> Scalar:
        return simplify(sum((self.entries[i][i] for i in range(self.rows)), Q(0)))


def rref(rows: Sequence[Sequence[Scalar]], cols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns.

    Zero entries are skipped, so sparse inputs stay cheap even though
    storage is dense.
    """
    m = [[simplify(x) for x in r] for r in rows]
    if cols is None:
        cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], Cyclotomic) else m[r][c].inverse()
        m[r] = [simplify(x * inv) if x else x for x in m[r]]
        prow = m[r]
        nz = [k for k in range(c, cols) if prow[k]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for k in nz:
                    row[k] = simplify(row[k] - f * prow[k])
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[: len(pivots)], pivots


def rank(m: ExactMatrix | Sequence[Sequence[Scalar]]) -> int:
    rows = m.entries if isinstance(m, ExactMatrix) else m
    cols = m.cols if isinstance(m, ExactMatrix) else None
    return len(rref(rows, cols)[1])


def kernel_basis(m: ExactMatrix | Sequence[Sequence[Scalar]], cols: int | None = None) -> list[tuple]:
    """Basis of the right null space {v : m v = 0}.

    The basis is the row-reduced echelon basis of the kernel: the first
    nonzero coordinate of every vector is 1 and the leading coordinates of
    different vectors are distinct columns with zeros elsewhere in them.
    """
    if isinstance(m, ExactMatrix):
        rows, cols = m.entries, m.cols
    else:
        rows = m
        if cols is None:
            cols = len(rows[0]) if rows else 0
    red, pivots = rref(rows, cols)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Q(0)] * cols
        v[f] = Q(1)
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = simplify(-row[f])
        basis.append(v)
    # put into reduced echelon form as a row space
    if not basis:
        return []
    red_basis, _ = rref(basis, cols)
    return [tuple(simplify(x) for x in v) for v in red_basis]


def row_space_basis(vectors: Sequence[Sequence[Scalar]], cols: int) -> list[tuple]:
    """Echelon normal basis of the span of ``vectors``."""
    if not vectors:
        return []
    red, _ = rref(vectors, cols)
    return [tuple(v) for v in red]


def solve(basis: Sequence[Sequence[Scalar]], target: Sequence[Scalar]) -> list | None:
    """Coefficients c with sum c_i basis_i == target, or None.

    ``basis`` must be linearly independent; the solution is then unique.
    """
    k = len(basis)
    if k == 0:
        return [] if not any(target) else None
    dim = len(target)
    # augmented system: columns are basis vectors
    aug = [[basis[i][r] for i in range(k)] + [target[r]] for r in range(dim)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    if len(pivots) != k:
        raise ValueError("basis vectors are linearly dependent")
    return [simplify(red[i][k]) for i in range(k)]


def solve_nonneg_integer(basis: Sequence[Sequence[Scalar]], target: Sequence[Scalar]) -> list[int] | None:
    """Express target as a nonnegative integer combination of basis, if possible."""
    coeffs = solve(basis, target)
    if coeffs is None:
        return None
    out = []
    for c in coeffs:
        if isinstance(c, Cyclotomic):
            if not c.is_rational():
                return None
            c = c.to_rational()
        c = Q(c)
        if c.denominator != 1 or c < 0:
            return None
        out.append(int(c))
    return out


def brute_nonneg_combination(basis, target, bound: int = 10) -> list[int] | None:
    """Exhaustive search over coefficients 0..bound.  Test oracle only."""
    for coeffs in itertools.product(range(bound + 1), repeat=len(basis)):
        s = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(len(target))]
        if all(Q(x) == Q(y) for x, y in zip(s, target)):
            return list(coeffs)
    return None
