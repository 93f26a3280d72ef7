"""Definition-level checks computed straight from structure constants.

Nothing here consults the order <=_0 when deciding whether a subspace is a
graded b_0-stable k-nilpotent subalgebra, so agreement with the antichain
criterion is a genuine second route.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property
from typing import Sequence

from .exactlinalg import rref, row_space_basis, simplify
from .grading import GradedDecomposition, Vector, Weight, _sparse, in_span
from .posetclassify import Antichain, GradedWeight, SigmaPlus, canonical, minimal_elements, upward_closure

MAX_SIGMA = 20


@dataclass(frozen=True)
class CandidateSubspace:
    decomp: GradedDecomposition
    selected: tuple[GradedWeight, ...] = ()
    extra: tuple[Vector, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "selected", tuple(sorted(set(self.selected))))

    @cached_property
    def vectors(self) -> list[Vector]:
        vs = [self.decomp.weight_spaces[e.grade][e.weight][0] for e in self.selected]
        return row_space_basis(vs + list(self.extra), self.decomp.alg.dim)


def _bracket(decomp, u: Vector, v: Vector) -> Vector:
    b = decomp.alg.bracket_coords(_sparse(u), _sparse(v))
    out = [Q(0)] * decomp.alg.dim
    for k, x in b.items():
        out[k] = x
    return tuple(out)


def _span_of(vectors: Sequence[Vector], dim: int) -> list[Vector]:
    return row_space_basis([v for v in vectors if any(v)], dim)


def is_b0_module(c: CandidateSubspace) -> bool:
    basis = c.vectors
    return all(in_span(basis, _bracket(c.decomp, b, v)) for b in c.decomp.g0.borel_basis for v in basis)


def is_subalgebra(c: CandidateSubspace) -> bool:
    basis = c.vectors
    return all(in_span(basis, _bracket(c.decomp, u, v)) for i, u in enumerate(basis) for v in basis[i + 1:])


def is_k_nilpotent(c: CandidateSubspace, k: int) -> bool:
    """(ad i)^k (i) = 0, computed as iterated spans of left-nested brackets."""
    dim = c.decomp.alg.dim
    current = c.vectors
    for _ in range(k):
        if not current:
            return True
        current = _span_of([_bracket(c.decomp, x, w) for x in c.vectors for w in current], dim)
    return not current


def graded_parts(decomp: GradedDecomposition, v: Vector) -> dict[int, Vector]:
    """Components of v in g_0, ..., g_{n-1}."""
    basis, grades = decomp_adapted(decomp)
    coords = _adapted_coords(decomp, v)
    parts: dict[int, list] = {}
    for k, x in coords.items():
        j = grades[k]
        acc = parts.setdefault(j, [Q(0)] * decomp.alg.dim)
        for r, y in enumerate(basis[k]):
            if y:
                acc[r] = simplify(acc[r] + x * y)
    return {j: tuple(p) for j, p in parts.items() if any(p)}


def is_positively_graded(c: CandidateSubspace) -> bool:
    """The span equals the direct sum of its intersections with g_1..g_{n-1}."""
    basis = c.vectors
    for v in basis:
        for j, part in graded_parts(c.decomp, v).items():
            if j == 0 or not in_span(basis, part):
                return False
    return True


# ---------------------------------------------------------------------------
# adapted basis: weight vectors of every grade


def _adapted(decomp: GradedDecomposition) -> tuple:
    """(basis, grades, inverse), cached on the decomposition."""
    cached = getattr(decomp, "_adapted_cache", None)
    if cached is None:
        basis, grades = [], []
        for j in range(decomp.n):
            for w in sorted(decomp.weight_spaces[j]):
                for v in decomp.weight_spaces[j][w]:
                    basis.append(v)
                    grades.append(j)
        dim = decomp.alg.dim
        aug = [[basis[k][r] for k in range(dim)] + [Q(int(r == c)) for c in range(dim)] for r in range(dim)]
        red, piv = rref(aug, 2 * dim)
        if piv[:dim] != list(range(dim)):
            raise RuntimeError("weight vectors do not form a basis")
        cached = (basis, grades, [row[dim:] for row in red])
        decomp._adapted_cache = cached
    return cached


def decomp_adapted(decomp: GradedDecomposition) -> tuple[list[Vector], list[int]]:
    basis, grades, _ = _adapted(decomp)
    return basis, grades


def _adapted_coords(decomp: GradedDecomposition, v: Vector) -> dict[int, Q]:
    inv = _adapted(decomp)[2]
    nz = [(c, x) for c, x in enumerate(v) if x]
    out = {}
    for k, row in enumerate(inv):
        s = simplify(sum((row[c] * x for c, x in nz if row[c]), Q(0)))
        if s:
            out[k] = s
    return out


class _SupportTables:
    """Bracket supports between Sigma_+ weight vectors and b_0, in adapted coordinates."""

    def __init__(self, decomp: GradedDecomposition, p: SigmaPlus):
        basis, _ = decomp_adapted(decomp)
        self.elements = p.elements
        index_of = {}
        for k, v in enumerate(basis):
            index_of[v] = k
        self.vec_index = [index_of[decomp.weight_spaces[e.grade][e.weight][0]] for e in p.elements]
        to_elem = {k: i for i, k in enumerate(self.vec_index)}
        vecs = [basis[k] for k in self.vec_index]
        m = len(vecs)
        outside = -1  # marker for support off Sigma_+

        def supp(u, v):
            coords = _adapted_coords(decomp, _bracket(decomp, u, v))
            return frozenset(to_elem.get(k, outside) for k in coords)

        self.pair = [[supp(vecs[a], vecs[b]) for b in range(m)] for a in range(m)]
        self.borel = [frozenset().union(*(supp(b, vecs[a]) for b in decomp.g0.borel_basis)) for a in range(m)]


def _subset_ok(t: _SupportTables, S: frozenset[int], k: int) -> bool:
    if any(not t.borel[a] <= S for a in S):
        return False
    if any(not t.pair[a][b] <= S for a in S for b in S):
        return False
    current = S
    for _ in range(k):
        nxt = set()
        for a in S:
            for b in current:
                nxt |= t.pair[a][b]
        current = frozenset(nxt)
        if not current:
            return True
    return not current


def brute_force_classify(decomp: GradedDecomposition, k: int, p: SigmaPlus | None = None) -> list[Antichain]:
    """Every subset of Sigma_+ whose span is a k-nilpotent graded b_0-module subalgebra."""
    from .posetclassify import build_sigma_plus

    p = p or build_sigma_plus(decomp)
    m = len(p.elements)
    if m > MAX_SIGMA:
        raise ValueError(f"|Sigma_+| = {m} exceeds the oracle limit {MAX_SIGMA}")
    tables = _SupportTables(decomp, p)
    found: dict[Antichain, frozenset] = {}
    for mask in range(1, 1 << m):
        S = frozenset(i for i in range(m) if mask >> i & 1)
        if not _subset_ok(tables, S, k):
            continue
        members = [p.elements[i] for i in S]
        A = minimal_elements(p, members)
        if upward_closure(p, A) != frozenset(members):
            raise AssertionError(f"stable subset {A} is not upward closed")
        if A in found:
            raise AssertionError(f"two subsets share the antichain {A}")
        found[A] = S
    return canonical(found)


@dataclass
class UngradedModuleReport:
    vector: Vector
    summands: tuple[Vector, Vector]
    same_weight: bool
    module_basis: list[Vector]
    abelian: bool
    b0_stable: bool
    positively_graded: bool


def b0_module_generated(decomp: GradedDecomposition, vectors: Sequence[Vector]) -> list[Vector]:
    dim = decomp.alg.dim
    span = _span_of(list(vectors), dim)
    while True:
        new = _span_of(span + [_bracket(decomp, b, v) for b in decomp.g0.borel_basis for v in span], dim)
        if len(new) == len(span):
            return span
        span = new


def ungraded_module_demo(decomp: GradedDecomposition, weight: Weight, grades: tuple[int, int] = (1, 3)) -> UngradedModuleReport:
    """Sum of two weight vectors of equal weight in different grades.

    The b_0-module it generates can be an abelian subalgebra without being
    graded.
    """
    u = decomp.weight_spaces[grades[0]][weight][0]
    w = decomp.weight_spaces[grades[1]][weight][0]
    v = tuple(simplify(a + b) for a, b in zip(u, w))
    module = b0_module_generated(decomp, [v])
    c = CandidateSubspace(decomp, (), tuple(module))
    abelian = all(not any(_bracket(decomp, a, b)) for a in module for b in module)
    return UngradedModuleReport(
        v, (u, w), decomp.weight_of(u) == decomp.weight_of(w) == weight, module,
        abelian, is_b0_module(c) and is_subalgebra(c), is_positively_graded(c),
    )
