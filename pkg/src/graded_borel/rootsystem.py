"""Finite root systems of simple type and affine Dynkin diagrams.

Simple roots are numbered as in Bourbaki.  Roots are integer tuples of
coordinates in the simple-root basis; the invariant form is normalized so
that long roots have squared length 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property, lru_cache
from typing import Sequence

Root = tuple[int, ...]

FAMILIES = "ABCDEFG"


class RootSystemError(ValueError):
    """Unknown or unsupported type."""


def _gram_matrix(family: str, rank: int) -> list[list[Q]]:
    """Gram matrix (alpha_i, alpha_j) of the simple roots."""
    if family not in FAMILIES:
        raise RootSystemError(f"unknown family {family!r}")
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]
    if not valid:
        raise RootSystemError(f"no simple type {family}{rank}")

    n = rank
    lengths = [Q(2)] * n
    edges: dict[tuple[int, int], Q] = {}
    if family == "A":
        edges = {(i, i + 1): Q(-1) for i in range(n - 1)}
    elif family == "B":
        lengths[n - 1] = Q(1)
        edges = {(i, i + 1): Q(-1) for i in range(n - 1)}
    elif family == "C":
        lengths = [Q(1)] * (n - 1) + [Q(2)]
        edges = {(i, i + 1): Q(-1, 2) for i in range(n - 2)}
        edges[(n - 2, n - 1)] = Q(-1)
    elif family == "D":
        edges = {(i, i + 1): Q(-1) for i in range(n - 2)}
        edges[(n - 3, n - 1)] = Q(-1)
    elif family == "E":
        pairs = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        edges = {p: Q(-1) for p in pairs}
    elif family == "F":
        lengths = [Q(2), Q(2), Q(1), Q(1)]
        edges = {(0, 1): Q(-1), (1, 2): Q(-1), (2, 3): Q(-1, 2)}
    elif family == "G":
        lengths = [Q(2, 3), Q(2)]
        edges = {(0, 1): Q(-1)}

    gram = [[Q(0)] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    for (i, j), v in edges.items():
        gram[i][j] = gram[j][i] = v
    return gram


@dataclass(frozen=True)
class RootSystem:
    """A reduced crystallographic root system of simple type."""

    family: str
    rank: int
    gram: tuple[tuple[Q, ...], ...]
    positive_roots: tuple[Root, ...]

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """``cartan[i][j] = <alpha_i, alpha_j^vee> = 2(alpha_i, alpha_j)/(alpha_j, alpha_j)``."""
        n = self.rank
        return tuple(
            tuple(int(2 * self.gram[i][j] / self.gram[j][j]) for j in range(n)) for i in range(n)
        )

    @property
    def symmetrizer(self) -> tuple[Q, ...]:
        """Squared lengths d_i = (alpha_i, alpha_i)."""
        return tuple(self.gram[i][i] for i in range(self.rank))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        """All roots: positive roots followed by their negatives."""
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @cached_property
    def highest_root(self) -> Root:
        tops = [a for a in self.positive_roots if not any(add(a, s) in self.root_set for s in self.simple_roots)]
        assert len(tops) == 1
        return tops[0]

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(unit(i, self.rank) for i in range(self.rank))

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.root_set

    def inner(self, mu: Sequence, nu: Sequence) -> Q:
        n = self.rank
        return sum((Q(mu[i]) * self.gram[i][j] * nu[j] for i in range(n) for j in range(n) if mu[i] and nu[j]), Q(0))

    def pairing(self, mu: Sequence, i: int) -> Q:
        """<mu, alpha_i^vee>."""
        return 2 * self.inner(mu, unit(i, self.rank)) / self.gram[i][i]

    def reflect(self, i: int, mu: Sequence) -> tuple:
        c = self.pairing(mu, i)
        return tuple(Q(m) - (c if k == i else 0) for k, m in enumerate(mu))

    def coroot_coefficients(self, alpha: Root) -> tuple[int, ...]:
        """alpha^vee = sum_i c_i alpha_i^vee, returned as (c_i)."""
        aa = self.inner(alpha, alpha)
        out = []
        for i, k in enumerate(alpha):
            c = Q(k) * self.gram[i][i] / aa
            assert c.denominator == 1
            out.append(int(c))
        return tuple(out)

    def height(self, alpha: Root) -> int:
        return sum(alpha)

    @property
    def dimension(self) -> int:
        return len(self.roots) + self.rank

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def unit(i: int, n: int) -> Root:
    return tuple(int(k == i) for k in range(n))


def add(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def neg(a: Sequence[int]) -> Root:
    return tuple(-x for x in a)


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Generate the positive roots by simple-root string closure.

    For a positive root beta and a simple root alpha_i with string
    beta - p alpha_i, ..., beta + q alpha_i we have p - q = <beta, alpha_i^vee>,
    so beta + alpha_i is a root exactly when p - <beta, alpha_i^vee> > 0.
    """
    family = family.upper()
    gram = _gram_matrix(family, rank)
    n = rank

    def pair(beta, i):
        return 2 * sum(Q(beta[k]) * gram[k][i] for k in range(n)) / gram[i][i]

    found = [unit(i, n) for i in range(n)]
    known = set(found)
    layer = list(found)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                p = 0
                probe = sub(beta, unit(i, n))
                while probe in known:
                    p += 1
                    probe = sub(probe, unit(i, n))
                q = p - pair(beta, i)
                if q > 0:
                    new = add(beta, unit(i, n))
                    if new not in known:
                        known.add(new)
                        nxt.append(new)
        layer = sorted(nxt)
        found.extend(layer)
    positive = tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))
    rs = RootSystem(family, rank, tuple(tuple(r) for r in gram), positive)
    return rs


def classical_positive_count(family: str, rank: int) -> int:
    n = rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[family]


# ---------------------------------------------------------------------------
# affine diagrams


@dataclass(frozen=True)
class AffineDiagram:
    """Affine Dynkin diagram X_N^(r) with its marks.

    ``cartan[i][j] = <alpha_i, alpha_j^vee>`` for the affine simple roots,
    node 0 being the affine node.  ``marks`` are the labels a_i with
    sum a_i alpha_i = delta.
    """

    family: str
    rank: int
    twist: int
    cartan: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    automorphisms: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def num_nodes(self) -> int:
        return len(self.marks)

    @property
    def ell(self) -> int:
        return len(self.marks) - 1

    def bond(self, i: int, j: int) -> int:
        """Number of edges between nodes i and j (a_ij * a_ji)."""
        return self.cartan[i][j] * self.cartan[j][i]

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(self.num_nodes)}
        for i, j in itertools.combinations(range(self.num_nodes), 2):
            b = self.bond(i, j)
            if b:
                adj[i].append((j, b))
                adj[j].append((i, b))
        return adj

    def order(self, s: Sequence[int]) -> int:
        """n = r * sum a_i s_i."""
        if len(s) != self.num_nodes:
            raise ValueError(f"label needs {self.num_nodes} entries, got {len(s)}")
        return self.twist * sum(a * x for a, x in zip(self.marks, s))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}^({self.twist})"


def _chain_cartan(n: int, overrides: dict[tuple[int, int], int]) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    for i in range(n - 1):
        m[i][i + 1] = m[i + 1][i] = -1
    for (i, j), v in overrides.items():
        m[i][j] = v
    return m


def _twisted_table(family: str, rank: int, twist: int) -> tuple[list[list[int]], list[int]]:
    """Hard-coded twisted affine diagrams.

    A_{2l-1}^(2) uses Kac's numbering; for l = 2 it is listed as D_3^(2),
    the chain 0 <= 1 => 2 with the long node in the middle.  For A_{2l}^(2) the numbering is
    reversed relative to Kac's table so that node 0 has mark 1, which is
    the enumeration used for automorphisms of order n.
    """
    if twist == 2 and family == "A" and rank >= 2:
        if rank % 2 == 1:
            ell = (rank + 1) // 2
            if ell == 2:
                cartan = [[2, -1, 0], [-2, 2, -2], [0, -1, 2]]
                return cartan, [1, 1, 1]
            # nodes 0 and 1 both attached to 2; double bond l-1 <= l
            n = ell + 1
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                m[i][i] = 2
            links = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, ell)]
            for i, j in links:
                m[i][j] = m[j][i] = -1
            m[ell][ell - 1] = -2
            marks = [1, 1] + [2] * (ell - 2) + [1]
            return m, marks
        ell = rank // 2
        if ell == 1:
            return [[2, -4], [-1, 2]], [1, 2]
        n = ell + 1
        m = _chain_cartan(n, {(0, 1): -2, (ell - 1, ell): -2})
        marks = [1] + [2] * ell
        return m, marks
    if twist == 2 and family == "E" and rank == 6:
        # 0 - 1 - 2 <= 3 - 4, marks 1 2 3 2 1
        m = _chain_cartan(5, {(3, 2): -2})
        return m, [1, 2, 3, 2, 1]
    raise RootSystemError(f"unsupported affine diagram {family}{rank}^({twist})")


def diagram_automorphisms(cartan: Sequence[Sequence[int]], marks: Sequence[int]) -> list[tuple[int, ...]]:
    """All node permutations preserving the (generalized) Cartan matrix.

    Backtracking search; the identity comes first.
    """
    n = len(marks)
    out: list[tuple[int, ...]] = []
    perm: list[int] = []
    used = [False] * n

    def extend():
        i = len(perm)
        if i == n:
            out.append(tuple(perm))
            return
        for img in range(n):
            if used[img] or marks[img] != marks[i]:
                continue
            if all(cartan[i][k] == cartan[img][perm[k]] and cartan[k][i] == cartan[perm[k]][img] for k in range(i)):
                perm.append(img)
                used[img] = True
                extend()
                used[img] = False
                perm.pop()

    extend()
    return out


@lru_cache(maxsize=None)
def build_affine_diagram(family: str, rank: int, r: int = 1) -> AffineDiagram:
    family = family.upper()
    if r == 1:
        rs = build_root_system(family, rank)
        theta = rs.highest_root
        nodes = [neg(theta)] + list(rs.simple_roots)
        cartan = [
            [int(2 * rs.inner(a, b) / rs.inner(b, b)) for b in nodes]
            for a in nodes
        ]
        marks = [1] + list(theta)
    elif r in (2, 3):
        build_root_system(family, rank)
        cartan, marks = _twisted_table(family, rank, r)
    else:
        raise RootSystemError(f"twist must be 1, 2 or 3, got {r}")
    autos = diagram_automorphisms(cartan, marks)
    return AffineDiagram(
        family,
        rank,
        r,
        tuple(tuple(row) for row in cartan),
        tuple(marks),
        tuple(autos),
    )
