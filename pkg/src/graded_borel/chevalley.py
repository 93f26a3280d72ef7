"""Simple Lie algebras in a Chevalley basis.

Sign convention: extraspecial pairs.  Positive roots are totally
ordered by (height, reverse-lexicographic coefficients); for every
non-simple positive root xi the extraspecial pair (alpha, beta) has alpha
minimal with xi - alpha a positive root, and N_{alpha,beta} = +(p+1).
All other constants follow from

    N_{s,r} = -N_{r,s},   N_{-r,-s} = -N_{r,s},
    N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s)       (r+s+t = 0),

and the four-root relation for r+s+t+u = 0.  The Jacobi identity is swept
over all basis triples when the algebra is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .exactlinalg import ExactMatrix, Scalar, simplify
from .rootsystem import Root, RootSystem, add, build_root_system, neg, sub


class ChevalleyError(RuntimeError):
    """Structure constants failed a consistency check."""


@dataclass(frozen=True)
class RootVector:
    root: Root

    def __str__(self):
        return "x" + _root_str(self.root)


@dataclass(frozen=True)
class CartanGenerator:
    index: int

    def __str__(self):
        return f"h{self.index + 1}"


def _root_str(root: Root) -> str:
    return "(" + ",".join(str(k) for k in root) + ")"


Coords = dict  # basis index -> scalar, zeros never stored


def _axpy(out: dict, c, vec: Mapping) -> None:
    """out += c * vec, dropping zeros."""
    for k, v in vec.items():
        x = out.get(k, 0) + c * v
        if x:
            out[k] = x
        else:
            out.pop(k, None)


class AlgebraElement:
    """Sparse linear combination of basis vectors of a ChevalleyAlgebra."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: "ChevalleyAlgebra", coeffs: Mapping[int, Scalar] | None = None):
        self.alg = alg
        self.coeffs = {k: simplify(v) for k, v in (coeffs or {}).items() if v}

    def _check(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.alg is not self.alg:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        _axpy(out, 1, other.coeffs)
        return AlgebraElement(self.alg, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        _axpy(out, -1, other.coeffs)
        return AlgebraElement(self.alg, out)

    def __neg__(self):
        return AlgebraElement(self.alg, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, c):
        return AlgebraElement(self.alg, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.alg is other.alg and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def vector(self) -> tuple:
        """Dense coordinate tuple in the algebra's basis."""
        v = [Q(0)] * self.alg.dim
        for k, c in self.coeffs.items():
            v[k] = c
        return tuple(v)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            parts.append(f"{self.coeffs[k]}*{self.alg.basis[k]}")
        return " + ".join(parts)


class ChevalleyAlgebra:
    """The simple Lie algebra of a root system, basis {x_alpha, h_i}.

    Basis order: positive root vectors (height order), h_1..h_N, then the
    negative root vectors in the same order as their positives.
    """

    def __init__(self, rs: RootSystem, check: bool = True):
        self.rs = rs
        pos = list(rs.positive_roots)
        self.basis: tuple = tuple(
            [RootVector(a) for a in pos]
            + [CartanGenerator(i) for i in range(rs.rank)]
            + [RootVector(neg(a)) for a in pos]
        )
        self.dim = len(self.basis)
        self.index = {tag: i for i, tag in enumerate(self.basis)}
        self._root_index = {t.root: i for i, t in enumerate(self.basis) if isinstance(t, RootVector)}
        self._order = {a: i for i, a in enumerate(pos)}
        self._n_cache: dict[tuple[Root, Root], int] = {}
        self.table: list[list[Coords]] = self._build_table()
        if check:
            self.check_jacobi()

    # -- structure constants ---------------------------------------------
    def _sq(self, r: Root) -> Q:
        return self.rs.inner(r, r)

    def _string_p(self, r: Root, s: Root) -> int:
        """Largest p with s - p r a root."""
        p = 0
        probe = sub(s, r)
        while self.rs.is_root(probe):
            p += 1
            probe = sub(probe, r)
        return p

    @cached_property
    def extraspecial(self) -> dict[Root, tuple[Root, Root]]:
        out = {}
        pos = self.rs.positive_roots
        posset = set(pos)
        for xi in pos:
            for a in pos:
                b = sub(xi, a)
                if b in posset:
                    out[xi] = (a, b)
                    break
        return out

    def N(self, r: Root, s: Root) -> int:
        """Structure constant with [x_r, x_s] = N_{r,s} x_{r+s}."""
        key = (r, s)
        if key in self._n_cache:
            return self._n_cache[key]
        val = self._compute_n(r, s)
        self._n_cache[key] = val
        return val

    def _compute_n(self, r: Root, s: Root) -> int:
        rs = self.rs
        t = neg(add(r, s))
        if not rs.is_root(add(r, s)):
            return 0
        rpos, spos = sum(r) > 0, sum(s) > 0
        if rpos and spos:
            return self._positive_n(r, s)
        if not rpos and not spos:
            return -self.N(neg(r), neg(s))
        tpos = sum(t) > 0
        if rpos:
            # r > 0 > s
            if tpos:
                val = self._sq(t) / self._sq(s) * self.N(t, r)
            else:
                val = self._sq(t) / self._sq(r) * self.N(s, t)
        else:
            # s > 0 > r
            if tpos:
                val = self._sq(t) / self._sq(r) * self.N(s, t)
            else:
                val = self._sq(t) / self._sq(s) * self.N(t, r)
        if val.denominator != 1:
            raise ChevalleyError(f"non-integral N at {r},{s}")
        return int(val)

    def _positive_n(self, r: Root, s: Root) -> int:
        if self._order[r] > self._order[s]:
            return -self.N(s, r)
        xi = add(r, s)
        a, b = self.extraspecial[xi]
        nab = self._string_p(a, b) + 1
        if r == a:
            return nab
        total = Q(0)
        # four roots r, s, -a, -b sum to zero
        sa = sub(s, a)
        if self.rs.is_root(sa):
            total += Q(self.N(s, neg(a)) * self.N(r, neg(b))) / self._sq(sa)
        ra = sub(r, a)
        if self.rs.is_root(ra):
            total += Q(self.N(neg(a), r) * self.N(s, neg(b))) / self._sq(ra)
        val = self._sq(xi) / nab * total
        if val.denominator != 1:
            raise ChevalleyError(f"non-integral N at {r},{s}")
        return int(val)

    def _build_table(self) -> list[list[Coords]]:
        n = self.dim
        table: list[list[Coords]] = [[{} for _ in range(n)] for _ in range(n)]
        for i, u in enumerate(self.basis):
            for j, v in enumerate(self.basis):
                if j < i:
                    table[i][j] = {k: -c for k, c in table[j][i].items()}
                    continue
                table[i][j] = self._basis_bracket(u, v)
        return table

    def _basis_bracket(self, u, v) -> Coords:
        rs = self.rs
        if isinstance(u, CartanGenerator) and isinstance(v, CartanGenerator):
            return {}
        if isinstance(u, CartanGenerator):
            c = rs.pairing(v.root, u.index)
            return {self._root_index[v.root]: int(c)} if c else {}
        if isinstance(v, CartanGenerator):
            c = rs.pairing(u.root, v.index)
            return {self._root_index[u.root]: -int(c)} if c else {}
        a, b = u.root, v.root
        if add(a, b) == tuple(0 for _ in a):
            # [x_a, x_{-a}] = h_a
            h = rs.coroot_coefficients(a)
            return {self.index[CartanGenerator(i)]: c for i, c in enumerate(h) if c}
        n = self.N(a, b)
        if not n:
            return {}
        return {self._root_index[add(a, b)]: n}

    # -- element API -------------------------------------------------------
    def element(self, tag_or_index, coeff: Scalar = 1) -> AlgebraElement:
        i = tag_or_index if isinstance(tag_or_index, int) else self.index[tag_or_index]
        return AlgebraElement(self, {i: coeff})

    def x(self, root: Sequence[int]) -> AlgebraElement:
        return self.element(self._root_index[tuple(root)])

    def h(self, i: int) -> AlgebraElement:
        return self.element(CartanGenerator(i))

    def root_index(self, root: Sequence[int]) -> int:
        return self._root_index[tuple(root)]

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def from_vector(self, v: Sequence[Scalar]) -> AlgebraElement:
        return AlgebraElement(self, {i: c for i, c in enumerate(v) if c})

    def bracket_coords(self, a: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> Coords:
        out: Coords = {}
        for i, x in a.items():
            row = self.table[i]
            for j, y in b.items():
                entry = row[j]
                if entry:
                    _axpy(out, x * y, entry)
        return out

    def bracket(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        if a.alg is not self or b.alg is not self:
            raise ValueError("bracket of elements from a different algebra")
        return AlgebraElement(self, self.bracket_coords(a.coeffs, b.coeffs))

    def adjoint_matrix(self, a: AlgebraElement) -> ExactMatrix:
        cols = [self.bracket_coords(a.coeffs, {j: 1}) for j in range(self.dim)]
        return ExactMatrix.from_rows(
            [[cols[j].get(i, 0) for j in range(self.dim)] for i in range(self.dim)], self.dim
        )

    def weight(self, index: int) -> Root:
        tag = self.basis[index]
        if isinstance(tag, RootVector):
            return tag.root
        return tuple(0 for _ in range(self.rs.rank))

    # -- Killing form ------------------------------------------------------
    def _trace_ad_ad(self, a: Mapping, b: Mapping) -> Scalar:
        total = Q(0)
        for c in range(self.dim):
            inner = self.bracket_coords(b, {c: 1})
            if inner:
                total += self.bracket_coords(a, inner).get(c, 0)
        return simplify(total)

    @cached_property
    def killing(self) -> ExactMatrix:
        """Killing matrix on the basis, by traces of ad(u) ad(v).

        ad(u) ad(v) shifts root weight by wt(u)+wt(v), so its trace vanishes
        unless the weights cancel; only those entries are traced.
        """
        n = self.dim
        m = [[Q(0)] * n for _ in range(n)]
        for i in range(n):
            wi = self.weight(i)
            for j in range(i, n):
                if any(x + y for x, y in zip(wi, self.weight(j))):
                    continue
                val = self._trace_ad_ad({i: 1}, {j: 1})
                m[i][j] = m[j][i] = val
        return ExactMatrix.from_rows(m, n)

    def killing_form(self, a: AlgebraElement, b: AlgebraElement) -> Scalar:
        if a.alg is not self or b.alg is not self:
            raise ValueError("killing form of elements from a different algebra")
        k = self.killing
        total = Q(0)
        for i, x in a.coeffs.items():
            for j, y in b.coeffs.items():
                if k[i, j]:
                    total += x * y * k[i, j]
        return simplify(total)

    # -- checks ------------------------------------------------------------
    def jacobi_defect(self, i: int, j: int, k: int) -> Coords:
        out: Coords = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = self.table[b][c]
            if inner:
                _axpy(out, 1, self.bracket_coords({a: 1}, inner))
        return out

    def check_jacobi(self, triples: Iterable[tuple[int, int, int]] | None = None) -> int:
        """Sweep the Jacobi identity; returns the number of triples checked.

        The identity is alternating, so i < j < k suffices.  Triples whose
        total weight is neither zero nor a root are skipped: every term then
        vanishes identically.
        """
        zero = tuple(0 for _ in range(self.rs.rank))
        if triples is None:
            n = self.dim
            wts = [self.weight(i) for i in range(n)]

            def gen():
                for i in range(n):
                    for j in range(i + 1, n):
                        wij = add(wts[i], wts[j])
                        for k in range(j + 1, n):
                            w = add(wij, wts[k])
                            if w == zero or self.rs.is_root(w):
                                yield i, j, k

            triples = gen()
        count = 0
        for i, j, k in triples:
            if self.jacobi_defect(i, j, k):
                raise ChevalleyError(
                    f"Jacobi fails on {self.basis[i]}, {self.basis[j]}, {self.basis[k]}"
                )
            count += 1
        return count


@lru_cache(maxsize=None)
def build_chevalley(family: str, rank: int) -> ChevalleyAlgebra:
    """Build (and Jacobi-certify) the Chevalley algebra of a simple type."""
    return ChevalleyAlgebra(build_root_system(family, rank))
