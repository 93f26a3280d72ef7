"""Finite-order automorphisms from Kac labels and the gradings they define.

An automorphism sigma of order n splits g into eigenspaces
g_j = {x : sigma(x) = zeta^j x}.  Because sigma is built in Kac normal form
it normalizes the Cartan subalgebra, h_0 = h intersect g_0 is a Cartan
subalgebra of g_0, and every g_j breaks up into h_0-weight spaces.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .chevalley import AlgebraElement, CartanGenerator, ChevalleyAlgebra, RootVector, _axpy
from .exactlinalg import (
    Cyclotomic,
    ExactMatrix,
    Scalar,
    kernel_basis,
    rref,
    row_space_basis,
    simplify,
    solve,
    solve_nonneg_integer,
)
from .rootsystem import AffineDiagram, RootSystemError, build_affine_diagram, neg, sub

Weight = tuple  # exact values on the h0 basis
Vector = tuple  # dense coordinates in the Chevalley basis


class GradingError(RuntimeError):
    """An automorphism or grading failed verification."""


# ---------------------------------------------------------------------------
# Kac labels


@dataclass(frozen=True, order=True)
class KacLabel:
    s: tuple[int, ...]
    r: int
    n: int

    def __str__(self):
        return "(" + ",".join(map(str, self.s)) + f";{self.r})"


def make_label(diagram: AffineDiagram, s: Sequence[int]) -> KacLabel:
    s = tuple(int(x) for x in s)
    if len(s) != diagram.num_nodes:
        raise ValueError(f"{diagram.name} needs {diagram.num_nodes} label entries, got {len(s)}")
    if any(x < 0 for x in s):
        raise ValueError("label entries must be nonnegative")
    if math.gcd(*s) != 1:
        raise ValueError(f"label entries {s} are not relatively prime")
    return KacLabel(s, diagram.twist, diagram.order(s))


def _compositions(total: int, weights: Sequence[int]) -> Iterable[tuple[int, ...]]:
    if not weights:
        if total == 0:
            yield ()
        return
    a = weights[0]
    for x in range(total // a + 1):
        for rest in _compositions(total - a * x, weights[1:]):
            yield (x,) + rest


def enumerate_kac_labels(family: str, rank: int, n: int, r: int = 1) -> list[KacLabel]:
    """Kac labels of order exactly n, one per diagram-automorphism orbit.

    Each orbit is represented by its lexicographically least member.
    """
    diagram = build_affine_diagram(family, rank, r)
    if n % r:
        return []
    seen: set[tuple[int, ...]] = set()
    out = []
    for s in _compositions(n // r, diagram.marks):
        if math.gcd(*s) != 1 or s in seen:
            continue
        orbit = {tuple(s[perm.index(i)] for i in range(len(s))) for perm in diagram.automorphisms}
        seen |= orbit
        out.append(KacLabel(min(orbit), r, n))
    return sorted(out)


def label_orbit(diagram: AffineDiagram, s: Sequence[int]) -> set[tuple[int, ...]]:
    s = tuple(s)
    return {tuple(s[perm.index(i)] for i in range(len(s))) for perm in diagram.automorphisms}


# ---------------------------------------------------------------------------
# automorphisms


def _zeta_power(n: int, k: int) -> Scalar:
    k %= n
    if k == 0:
        return Q(1)
    if 2 * k == n:
        return Q(-1)
    return Cyclotomic.zeta(n, k)


class Automorphism:
    """A linear automorphism of g of finite order, stored column-sparse.

    ``columns[c]`` holds the image of basis vector c.
    """

    def __init__(self, alg: ChevalleyAlgebra, columns: Sequence[Mapping[int, Scalar]], order: int,
                 label: KacLabel | None = None):
        self.alg = alg
        self.columns = tuple({k: simplify(v) for k, v in col.items() if v} for col in columns)
        self.order = order
        self.label = label
        self.twisted: TwistedData | None = None  # set for outer automorphisms

    @cached_property
    def matrix(self) -> ExactMatrix:
        d = self.alg.dim
        return ExactMatrix.from_rows([[self.columns[c].get(r, 0) for c in range(d)] for r in range(d)], d)

    def apply(self, coords: Mapping[int, Scalar]) -> dict:
        out: dict = {}
        for c, x in coords.items():
            _axpy(out, x, self.columns[c])
        return out

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.alg, self.apply(a.coeffs))

    def power_is_identity(self, k: int) -> bool:
        for c in range(self.alg.dim):
            v = {c: Q(1)}
            for _ in range(k):
                v = self.apply(v)
            if v != {c: 1}:
                return False
        return True

    def preserves_brackets(self) -> bool:
        alg = self.alg
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                lhs = self.apply(alg.table[i][j])
                rhs = alg.bracket_coords(self.columns[i], self.columns[j])
                if lhs != rhs:
                    return False
        return True

    def exact_order_ok(self) -> bool:
        n = self.order
        if not self.power_is_identity(n):
            return False
        primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
        return all(not self.power_is_identity(n // p) for p in primes)

    def verify(self) -> None:
        if not self.preserves_brackets():
            raise GradingError("map does not preserve brackets")
        if not self.exact_order_ok():
            raise GradingError(f"map does not have exact order {self.order}")

    def same_as(self, other: "Automorphism") -> bool:
        return self.columns == other.columns


def identity_automorphism(alg: ChevalleyAlgebra) -> Automorphism:
    return Automorphism(alg, [{c: 1} for c in range(alg.dim)], 1)


def _finite_diagram_involution(alg: ChevalleyAlgebra) -> list[int]:
    rs = alg.rs
    if rs.family == "A":
        return [rs.rank - 1 - i for i in range(rs.rank)]
    if rs.family == "E" and rs.rank == 6:
        return [5, 1, 4, 3, 2, 0]
    raise RootSystemError(f"no outer diagram involution implemented for {rs.name}")


def diagram_involution(alg: ChevalleyAlgebra) -> Automorphism:
    """The automorphism x_{+-alpha_i} -> x_{+-alpha_tau(i)}, h_i -> h_tau(i).

    Non-simple root vectors are written as brackets x_alpha =
    [x_{alpha_i}, x_beta] / N_{alpha_i, beta} and mapped accordingly, which
    fixes every sign.
    """
    rs = alg.rs
    tau = _finite_diagram_involution(alg)
    cols: dict[int, dict] = {}
    for i in range(rs.rank):
        cols[alg.index[CartanGenerator(i)]] = {alg.index[CartanGenerator(tau[i])]: 1}
    simple = rs.simple_roots
    for sign in (1, -1):
        for alpha in rs.positive_roots:
            root = alpha if sign > 0 else neg(alpha)
            idx = alg.root_index(root)
            if sum(alpha) == 1:
                i = alpha.index(1)
                cols[idx] = {alg.root_index(tuple(sign * x for x in simple[tau[i]])): 1}
                continue
            for i in range(rs.rank):
                beta = sub(alpha, simple[i])
                if rs.is_root(beta) and sum(beta) > 0:
                    break
            a = simple[i] if sign > 0 else neg(simple[i])
            b = beta if sign > 0 else neg(beta)
            nab = alg.N(a, b)
            img = alg.bracket_coords(cols[alg.root_index(a)], cols[alg.root_index(b)])
            cols[idx] = {k: Q(v, nab) for k, v in img.items()}
    mu = Automorphism(alg, [cols[c] for c in range(alg.dim)], 2)
    mu.verify()
    return mu


def _restriction(alg: ChevalleyAlgebra, root: Sequence[int], hbasis: Sequence[Sequence[Scalar]]) -> Weight:
    """Values of a root functional on vectors of h (given in h_i coordinates)."""
    rs = alg.rs
    vals = [rs.pairing(root, i) for i in range(rs.rank)]
    return tuple(simplify(sum((Q(c) * v for c, v in zip(h, vals)), Q(0))) for h in hbasis)


def _h_coords(alg: ChevalleyAlgebra, vec: Sequence[Scalar]) -> tuple:
    return tuple(vec[alg.index[CartanGenerator(i)]] for i in range(alg.rs.rank))


def _weight_blocks(alg: ChevalleyAlgebra, hbasis) -> dict[Weight, list[int]]:
    """Group Chevalley basis indices by their h0-weight."""
    blocks: dict[Weight, list[int]] = {}
    zero = tuple(Q(0) for _ in hbasis)
    for idx, tag in enumerate(alg.basis):
        w = _restriction(alg, tag.root, hbasis) if isinstance(tag, RootVector) else zero
        blocks.setdefault(w, []).append(idx)
    return blocks


def _eigenvectors(sigma: Automorphism, indices: Sequence[int], eigenvalue: Scalar) -> list[Vector]:
    """Eigenvectors of sigma restricted to the invariant span of ``indices``."""
    pos = {c: k for k, c in enumerate(indices)}
    m = len(indices)
    rows = [[Q(0)] * m for _ in range(m)]
    for k, c in enumerate(indices):
        for r, v in sigma.columns[c].items():
            if r not in pos:
                raise GradingError("weight block is not sigma-invariant")
            rows[pos[r]][k] = v
    for k in range(m):
        rows[k][k] = rows[k][k] - eigenvalue
    out = []
    for v in kernel_basis(rows, m):
        full = [Q(0)] * sigma.alg.dim
        for k, c in enumerate(indices):
            full[c] = v[k]
        out.append(tuple(full))
    return out


def _affine_cartan_from_weights(weights: Sequence[Weight], inner) -> list[list[int]]:
    out = []
    for a in weights:
        row = []
        for b in weights:
            v = 2 * inner(a, b) / inner(b, b)
            if v.denominator != 1:
                raise GradingError("twisted generators do not form an affine simple system")
            row.append(int(v))
        out.append(row)
    return out


def _match_nodes(derived: Sequence[Sequence[int]], table: Sequence[Sequence[int]]) -> list[int]:
    """Bijection pi (pi[0] = 0) with derived[i][j] == table[pi i][pi j]."""
    n = len(table)
    for rest in itertools.permutations(range(1, n)):
        pi = (0,) + rest
        if all(derived[i][j] == table[pi[i]][pi[j]] for i in range(n) for j in range(n)):
            return list(pi)
    raise GradingError("twisted generators do not match the affine diagram")


def _solve_exponents(n: int, nvars: int, constraints: Sequence[tuple[Sequence[int], int]]) -> list[int]:
    """Find e in Z_n^nvars with sum_k c_k e_k == target (mod n) for all constraints."""
    assigned: list[int] = []

    def consistent():
        for coeffs, target in constraints:
            if all(c == 0 or k < len(assigned) for k, c in enumerate(coeffs)):
                if (sum(c * assigned[k] for k, c in enumerate(coeffs) if c) - target) % n:
                    return False
        return True

    def search():
        if len(assigned) == nvars:
            return True
        for v in range(n):
            assigned.append(v)
            if consistent() and search():
                return True
            assigned.pop()
        return False

    if not search():
        raise GradingError("no torus element realizes the requested label")
    return assigned


@dataclass
class TwistedData:
    """Kac generators E_0..E_l of the twisted construction."""

    generators: list[Vector]
    weights: list[Weight]
    node_of: list[int]  # generator position -> affine diagram node


def _twisted_generators(alg: ChevalleyAlgebra, mu: Automorphism, diagram: AffineDiagram) -> TwistedData:
    rs = alg.rs
    rank = rs.rank
    # h^tau in echelon normal form
    hrows = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        col = mu.columns[alg.index[CartanGenerator(i)]]
        for r, v in col.items():
            hrows[alg.basis[r].index][i] = v
        hrows[i][i] -= 1
    hbasis = kernel_basis(hrows, rank)
    blocks = _weight_blocks(alg, hbasis)
    zero = tuple(Q(0) for _ in hbasis)
    inner = _h0_inner(alg, hbasis)

    def height(w):
        # every root in a block has the same height
        idx = blocks[w][0]
        return sum(alg.weight(idx))

    fixed = {w: _eigenvectors(mu, idx, 1) for w, idx in blocks.items() if w != zero}
    odd = {w: _eigenvectors(mu, idx, -1) for w, idx in blocks.items() if w != zero}
    pos_fixed = [w for w, vs in fixed.items() if vs and height(w) > 0]
    pos_set = set(pos_fixed)
    simple = []
    for w in pos_fixed:
        decomposable = any(
            tuple(a - b for a, b in zip(w, u)) in pos_set for u in pos_fixed if u != w
        )
        if not decomposable:
            simple.append(w)
    simple.sort(key=lambda w: (height(w), w))
    gens = []
    for w in simple:
        if len(fixed[w]) != 1:
            raise GradingError("simple root space of the fixed algebra is not one-dimensional")
        gens.append(fixed[w][0])
    # lowest weight vector of the -1 eigenspace
    lowering = {w: fixed[tuple(-x for x in w)][0] for w in simple}
    lows = []
    for w, vs in odd.items():
        if not vs:
            continue
        ok = True
        for v in vs:
            coords = {k: x for k, x in enumerate(v) if x}
            for f in lowering.values():
                fc = {k: x for k, x in enumerate(f) if x}
                if alg.bracket_coords(fc, coords):
                    ok = False
        if ok:
            lows.append((w, vs))
    if len(lows) != 1 or len(lows[0][1]) != 1:
        raise GradingError("the -1 eigenspace has no unique lowest weight vector")
    w0, (e0,) = lows[0]
    weights = [w0] + simple
    derived = _affine_cartan_from_weights(weights, inner)
    node_of = _match_nodes(derived, diagram.cartan)
    return TwistedData([e0] + gens, weights, node_of)


def _h0_inner(alg: ChevalleyAlgebra, hbasis: Sequence[Sequence[Scalar]]):
    """Form on h0* induced by the Killing form restricted to h0."""
    rank = alg.rs.rank
    hidx = [alg.index[CartanGenerator(i)] for i in range(rank)]
    k = alg.killing
    gram = [
        [sum((Q(a[i]) * b[j] * k[hidx[i], hidx[j]] for i in range(rank) for j in range(rank) if a[i] and b[j]), Q(0))
         for b in hbasis]
        for a in hbasis
    ]
    m = len(hbasis)
    inv_rows, piv = rref([list(gram[i]) + [Q(int(i == j)) for j in range(m)] for i in range(m)], 2 * m)
    if piv[:m] != list(range(m)):
        raise GradingError("Killing form is degenerate on h0")
    inv = [row[m:] for row in inv_rows]

    def inner(a: Sequence, b: Sequence) -> Q:
        return simplify(sum((Q(a[i]) * inv[i][j] * b[j] for i in range(m) for j in range(m) if a[i] and b[j]), Q(0)))

    return inner


def automorphism_from_label(alg: ChevalleyAlgebra, label: KacLabel | Sequence[int], r: int | None = None) -> Automorphism:
    """sigma_s in Kac normal form.

    r = 1: sigma fixes h and scales x_alpha by zeta^{deg alpha}, with
    deg(sum k_i alpha_i) = sum k_i s_i.  r = 2: sigma = mu t, mu the diagram
    involution and t a torus element commuting with mu, chosen so that the
    twisted generators satisfy sigma(E_j) = zeta^{s_j} E_j.
    """
    rs = alg.rs
    if not isinstance(label, KacLabel):
        label = make_label(build_affine_diagram(rs.family, rs.rank, r or 1), label)
    diagram = build_affine_diagram(rs.family, rs.rank, label.r)
    n = label.n
    s = label.s
    if label.r == 1:
        cols = []
        for idx, tag in enumerate(alg.basis):
            if isinstance(tag, RootVector):
                deg = sum(k * s[i + 1] for i, k in enumerate(tag.root))
                cols.append({idx: _zeta_power(n, deg)})
            else:
                cols.append({idx: 1})
        sigma = Automorphism(alg, cols, n, label)
        sigma.verify()
        return sigma
    if label.r != 2:
        raise RootSystemError("only twists r = 1, 2 are implemented")
    mu = diagram_involution(alg)
    tw = _twisted_generators(alg, mu, diagram)
    tau = _finite_diagram_involution(alg)
    orbits = sorted({tuple(sorted({i, tau[i]})) for i in range(rs.rank)})
    var_of = {i: k for k, orb in enumerate(orbits) for i in orb}
    constraints = []
    for pos, gen in enumerate(tw.generators):
        node = tw.node_of[pos]
        target = s[node] + (n // 2 if pos == 0 else 0)
        for idx, x in enumerate(gen):
            if not x:
                continue
            coeffs = [0] * len(orbits)
            for i, k in enumerate(alg.weight(idx)):
                coeffs[var_of[i]] += k
            constraints.append((coeffs, target))
    e = _solve_exponents(n, len(orbits), constraints)
    cols = []
    for idx, tag in enumerate(alg.basis):
        scale = Q(1)
        if isinstance(tag, RootVector):
            deg = sum(k * e[var_of[i]] for i, k in enumerate(tag.root))
            scale = _zeta_power(n, deg)
        cols.append({r: v * scale for r, v in mu.columns[idx].items()})
    sigma = Automorphism(alg, cols, n, label)
    sigma.verify()
    for pos, gen in enumerate(tw.generators):
        coords = {k: x for k, x in enumerate(gen) if x}
        want = _zeta_power(n, s[tw.node_of[pos]])
        if sigma.apply(coords) != {k: simplify(want * x) for k, x in coords.items()}:
            raise GradingError("twisted generator has the wrong eigenvalue")
    sigma.twisted = tw
    return sigma


# ---------------------------------------------------------------------------
# gradings


@dataclass(frozen=True)
class G0Structure:
    """Root data of g_0 relative to h_0 and a chosen Borel subalgebra."""

    roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    simple_roots: tuple[Weight, ...]
    factors: tuple[tuple[tuple[Weight, ...], Weight], ...]  # (simple roots of factor, highest root)
    borel_basis: tuple[Vector, ...]
    raising: tuple[Vector, ...]  # root vectors of the simple roots

    @property
    def highest_roots(self) -> tuple[Weight, ...]:
        return tuple(theta for _, theta in self.factors)


class GradedDecomposition:
    """Z_n-grading of g together with its h_0-weight structure."""

    def __init__(self, alg: ChevalleyAlgebra, sigma: Automorphism, delta0: Sequence[Weight] | None = None,
                 weight_spaces: dict | None = None):
        self.alg = alg
        self.sigma = sigma
        self.n = sigma.order
        hrows = [[Q(0)] * alg.rs.rank for _ in range(alg.rs.rank)]
        for i in range(alg.rs.rank):
            col = sigma.columns[alg.index[CartanGenerator(i)]]
            for r, v in col.items():
                tag = alg.basis[r]
                if not isinstance(tag, CartanGenerator):
                    raise GradingError("automorphism does not preserve the Cartan subalgebra")
                hrows[tag.index][i] = v
            hrows[i][i] -= 1
        #: h0 basis in h_i coordinates (echelon normal form)
        self.h0_coords: list[tuple] = kernel_basis(hrows, alg.rs.rank)
        self.h0basis: list[Vector] = []
        for h in self.h0_coords:
            v = [Q(0)] * alg.dim
            for i, c in enumerate(h):
                v[alg.index[CartanGenerator(i)]] = c
            self.h0basis.append(tuple(v))
        self.inner = _h0_inner(alg, self.h0_coords)
        if weight_spaces is None:
            weight_spaces = self._decompose()
        self.weight_spaces: dict[int, dict[Weight, list[Vector]]] = weight_spaces
        self.components: dict[int, list[Vector]] = {
            j: row_space_basis([v for vs in self.weight_spaces[j].values() for v in vs], alg.dim)
            for j in range(self.n)
        }
        if sum(len(c) for c in self.components.values()) != alg.dim:
            raise GradingError("graded components do not add up to g")
        self.g0 = analyze_g0(self, delta0)

    @property
    def zero_weight(self) -> Weight:
        return tuple(Q(0) for _ in self.h0basis)

    def _decompose(self) -> dict[int, dict[Weight, list[Vector]]]:
        blocks = _weight_blocks(self.alg, self.h0_coords)
        out: dict[int, dict[Weight, list[Vector]]] = {j: {} for j in range(self.n)}
        for w, idx in sorted(blocks.items()):
            for j in range(self.n):
                vs = _eigenvectors(self.sigma, idx, _zeta_power(self.n, j))
                if vs:
                    out[j][w] = vs
        return out

    def dims(self) -> tuple[int, ...]:
        return tuple(len(self.components[j]) for j in range(self.n))

    def weights(self, j: int) -> list[Weight]:
        return sorted(self.weight_spaces[j % self.n])

    def root_weight(self, root: Sequence[int]) -> Weight:
        """Restriction to h_0 of a root (or any vector in root coordinates) of g."""
        return _restriction(self.alg, root, self.h0_coords)

    def weight_of(self, vec: Vector) -> Weight | None:
        """h0-weight of a vector, or None if it is not a weight vector."""
        coords = {k: x for k, x in enumerate(vec) if x}
        w = []
        for h in self.h0basis:
            hc = {k: x for k, x in enumerate(h) if x}
            img = self.alg.bracket_coords(hc, coords)
            # img must be c * vec
            k0 = next(iter(coords))
            c = simplify(img.get(k0, 0) / coords[k0])
            if any(simplify(img.get(k, 0) - c * x) for k, x in coords.items()) or any(k not in coords for k in img):
                return None
            w.append(c)
        return tuple(w)

    def leq_delta0(self, mu: Weight, nu: Weight) -> bool:
        """nu - mu is a nonnegative integer combination of the simple roots of g_0."""
        diff = [simplify(b - a) for a, b in zip(mu, nu)]
        if not any(diff):
            return True
        return solve_nonneg_integer(self.g0.simple_roots, diff) is not None

    def grade_of(self, vec: Vector) -> int | None:
        for j in range(self.n):
            if in_span(self.components[j], vec):
                return j
        return None

    def check_grading(self) -> None:
        """[g_i, g_j] lies in g_{i+j} for all basis pairs."""
        alg = self.alg
        for i in range(self.n):
            for j in range(i, self.n):
                target = self.components[(i + j) % self.n]
                for u in self.components[i]:
                    uc = {k: x for k, x in enumerate(u) if x}
                    for v in self.components[j]:
                        vc = {k: x for k, x in enumerate(v) if x}
                        b = alg.bracket_coords(uc, vc)
                        if b and not in_span(target, _dense(b, alg.dim)):
                            raise GradingError(f"[g_{i}, g_{j}] not contained in g_{(i + j) % self.n}")

    def check_multiplicity_free(self) -> None:
        for j in range(1, self.n):
            for w, vs in self.weight_spaces[j].items():
                if any(w) and len(vs) != 1:
                    raise GradingError(f"weight space ({w}, {j}) has dimension {len(vs)}")

    def with_borel(self, delta0: Sequence[Weight] | None) -> "GradedDecomposition":
        return GradedDecomposition(self.alg, self.sigma, delta0, self.weight_spaces)


def _dense(coords: Mapping[int, Scalar], dim: int) -> Vector:
    v = [Q(0)] * dim
    for k, x in coords.items():
        v[k] = x
    return tuple(v)


def _sparse(vec: Sequence[Scalar]) -> dict:
    return {k: x for k, x in enumerate(vec) if x}


def in_span(basis: Sequence[Vector], vec: Vector) -> bool:
    if not any(vec):
        return True
    if not basis:
        return False
    return solve(basis, vec) is not None


def automorphism_to_grading(alg: ChevalleyAlgebra, sigma: Automorphism,
                            delta0: Sequence[Weight] | None = None, check: bool = True) -> GradedDecomposition:
    """Eigenspace decomposition g_j = ker(sigma - zeta^j).

    sigma commutes with ad(h_0), so the kernel is computed block by block
    on the h_0-weight spaces of the Chevalley basis.
    """
    decomp = GradedDecomposition(alg, sigma, delta0)
    if check:
        decomp.check_grading()
        decomp.check_multiplicity_free()
    return decomp


def grading_to_automorphism(alg: ChevalleyAlgebra, decomp: GradedDecomposition) -> Automorphism:
    """The map acting as zeta^j on g_j."""
    n = decomp.n
    basis, grades = [], []
    for j in range(n):
        for v in decomp.components[j]:
            basis.append(v)
            grades.append(j)
    dim = alg.dim
    if len(basis) != dim:
        raise GradingError("components do not span g")
    decomp.check_grading()
    # columns of B^{-1}: coordinates of each Chevalley basis vector
    aug = [[basis[k][r] for k in range(dim)] + [Q(int(r == c)) for c in range(dim)] for r in range(dim)]
    red, piv = rref(aug, 2 * dim)
    if piv[:dim] != list(range(dim)):
        raise GradingError("components are not independent")
    binv = [row[dim:] for row in red]
    cols = []
    for c in range(dim):
        per_grade: dict[int, dict] = {}
        for k in range(dim):
            coef = binv[k][c]
            if coef:
                _axpy(per_grade.setdefault(grades[k], {}), coef, _sparse(basis[k]))
        col: dict = {}
        for j, part in per_grade.items():
            _axpy(col, _zeta_power(n, j), part)
        cols.append(col)
    sigma = Automorphism(alg, cols, n)
    sigma.verify()
    return sigma


# ---------------------------------------------------------------------------
# g_0 structure


def _is_sum_of_two(w: Weight, pos: Sequence[Weight], posset: set) -> bool:
    return any(tuple(simplify(a - b) for a, b in zip(w, u)) in posset for u in pos if u != w)


def analyze_g0(decomp: GradedDecomposition, delta0: Sequence[Weight] | None = None) -> G0Structure:
    """Roots of g_0, a Borel subalgebra, simple roots, factors and highest roots.

    Default positive system: roots whose value list on the h_0 basis is
    lexicographically positive.  ``delta0`` overrides it with an explicit set
    of simple roots.
    """
    zero = decomp.zero_weight
    spaces0 = decomp.weight_spaces[0]
    zero_dim = len(spaces0.get(zero, []))
    if zero_dim != len(decomp.h0basis):
        raise GradingError("h_0 is not self-centralizing in g_0")
    roots = tuple(sorted(w for w in spaces0 if w != zero))
    rootset = set(roots)
    if delta0 is None:
        positive = tuple(w for w in roots if next(x for x in w if x) > 0)
        posset = set(positive)
        simple = tuple(sorted(w for w in positive if not _is_sum_of_two(w, positive, posset)))
    else:
        simple = tuple(tuple(simplify(Q(x) if not hasattr(x, "n") else x) for x in w) for w in delta0)
        if any(w not in rootset for w in simple):
            raise GradingError("override contains a weight that is not a root of g_0")
        positive = []
        for w in roots:
            if solve_nonneg_integer(simple, w) is not None:
                positive.append(w)
            elif solve_nonneg_integer(simple, tuple(-x for x in w)) is None:
                raise GradingError("override simple roots do not define a positive system")
        positive = tuple(positive)
        posset = set(positive)
        if any(_is_sum_of_two(w, positive, posset) for w in simple):
            raise GradingError("override contains a decomposable root")
    if len(positive) * 2 != len(roots):
        raise GradingError("inconsistent positive system for g_0")
    # connected components of the simple roots
    comps: list[list[Weight]] = []
    for w in simple:
        linked = [c for c in comps if any(decomp.inner(w, u) for u in c)]
        merged = [w]
        for c in linked:
            merged.extend(c)
            comps.remove(c)
        comps.append(merged)
    factors = []
    for comp in comps:
        comp_t = tuple(sorted(comp))
        in_factor = [w for w in positive if _support(solve_nonneg_integer(simple, w), simple) <= set(comp_t)]
        tops = [w for w in in_factor if not any(tuple(simplify(a + b) for a, b in zip(w, g)) in posset for g in comp_t)]
        if len(tops) != 1:
            raise GradingError("simple factor without a unique highest root")
        factors.append((comp_t, tops[0]))
    factors.sort()
    raising = tuple(spaces0[w][0] for w in simple)
    borel = row_space_basis(list(decomp.h0basis) + [spaces0[w][0] for w in positive], decomp.alg.dim)
    return G0Structure(roots, positive, simple, tuple(factors), tuple(borel), raising)


def _support(coeffs, simple) -> set:
    return {w for w, c in zip(simple, coeffs) if c}


def weights_of_component(decomp: GradedDecomposition, j: int) -> dict[Weight, list[Vector]]:
    return decomp.weight_spaces[j % decomp.n]


def highest_weight_vectors(decomp: GradedDecomposition, j: int) -> dict[Weight, list[Vector]]:
    """Weight vectors of g_j killed by the nilradical of b_0.

    The nilradical is generated by the simple root vectors, so it suffices
    to stack their adjoint actions.
    """
    alg = decomp.alg
    out = {}
    raising = [_sparse(v) for v in decomp.g0.raising]
    for w, vs in sorted(decomp.weight_spaces[j % decomp.n].items()):
        rows = []
        for e in raising:
            imgs = [alg.bracket_coords(e, _sparse(v)) for v in vs]
            keys = sorted({k for im in imgs for k in im})
            for k in keys:
                rows.append([im.get(k, 0) for im in imgs])
        if not rows:
            ker = [tuple(Q(int(a == b)) for b in range(len(vs))) for a in range(len(vs))]
        else:
            ker = kernel_basis(rows, len(vs))
        if ker:
            out[w] = [
                tuple(simplify(sum((c * v[k] for c, v in zip(kv, vs) if c), Q(0))) for k in range(alg.dim))
                for kv in ker
            ]
    return out


def highest_weights_of_component(decomp: GradedDecomposition, j: int) -> list[Weight]:
    return sorted(highest_weight_vectors(decomp, j))


def central_elements(decomp: GradedDecomposition, j: int) -> list[Vector]:
    """Basis of {h in g_j of weight 0 : [g_0, h] = 0}."""
    alg = decomp.alg
    n = decomp.n
    if j % n == 0:
        raise ValueError("central_elements needs a nonzero grade")
    vs = decomp.weight_spaces[j % n].get(decomp.zero_weight, [])
    if not vs:
        return []
    rows = []
    for g in decomp.components[0]:
        gc = _sparse(g)
        imgs = [alg.bracket_coords(gc, _sparse(v)) for v in vs]
        for k in sorted({k for im in imgs for k in im}):
            rows.append([im.get(k, 0) for im in imgs])
    ker = kernel_basis(rows, len(vs)) if rows else [
        tuple(Q(int(a == b)) for b in range(len(vs))) for a in range(len(vs))
    ]
    out = [tuple(simplify(sum((c * v[k] for c, v in zip(kv, vs) if c), Q(0))) for k in range(alg.dim)) for kv in ker]
    out = row_space_basis(out, alg.dim)
    # every central element commutes with all of g^(j) = sum_m g_{mj}
    for h in out:
        hc = _sparse(h)
        for m in range(n):
            for v in decomp.components[(m * j) % n]:
                if alg.bracket_coords(hc, _sparse(v)):
                    raise GradingError("central element does not centralize g^(j)")
    if math.gcd(j, n) == 1 and out:
        raise GradingError("nonzero central element in a unit grade")
    return out
