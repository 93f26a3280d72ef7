"""The graded-weight poset and the antichain criterion for k-nilpotent subalgebras.

Sigma_+ is the set of pairs (mu, j) with j != 0 and mu a nonzero h_0-weight
of g_j.  (mu1, j) <=_0 (mu2, j) when mu2 - mu1 is a nonnegative integer
combination of the simple roots of g_0.  A b_0-stable sum of weight spaces
corresponds to an upward-closed subset, hence to the antichain of its
minimal elements.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .exactlinalg import row_space_basis, simplify, solve_nonneg_integer
from .grading import GradedDecomposition, Weight, highest_weights_of_component


@dataclass(frozen=True, order=True)
class GradedWeight:
    grade: int
    weight: Weight

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.weight) + f";{self.grade})"


def make_weight(values: Iterable, grade: int) -> GradedWeight:
    return GradedWeight(grade, tuple(simplify(Q(x) if isinstance(x, (int, str)) else x) for x in values))


@dataclass(frozen=True)
class Antichain:
    members: tuple[GradedWeight, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, item):
        return item in self.members

    def sort_key(self):
        return (len(self.members), self.members)

    def __str__(self):
        return "{" + ", ".join(map(str, self.members)) + "}"


def canonical(antichains: Iterable[Antichain]) -> list[Antichain]:
    return sorted(set(antichains), key=Antichain.sort_key)


class SigmaPlus:
    """Sigma_+ with its order relation and the highest-weight data needed by the criterion."""

    def __init__(self, decomp: GradedDecomposition):
        self.decomp = decomp
        self.n = decomp.n
        self.simple = decomp.g0.simple_roots
        elems = []
        for j in range(1, self.n):
            for w, vs in decomp.weight_spaces[j].items():
                if any(w):
                    if len(vs) != 1:
                        raise ValueError(f"weight space ({w}, {j}) is not one-dimensional")
                    elems.append(GradedWeight(j, w))
        self.elements: tuple[GradedWeight, ...] = tuple(sorted(elems))
        self.position = {e: i for i, e in enumerate(self.elements)}
        m = len(self.elements)
        self.leq_matrix = [[self.leq(a, b) for b in self.elements] for a in self.elements]
        for a in range(m):
            for b in range(m):
                if a != b and self.leq_matrix[a][b] and self.leq_matrix[b][a]:
                    raise ValueError("order relation is not antisymmetric")
                for c in range(m):
                    if self.leq_matrix[a][b] and self.leq_matrix[b][c] and not self.leq_matrix[a][c]:
                        raise ValueError("order relation is not transitive")
        self.highest = {j: tuple(highest_weights_of_component(decomp, j)) for j in range(self.n)}
        self.thetas = decomp.g0.highest_roots

    def __len__(self):
        return len(self.elements)

    def leq(self, a: GradedWeight, b: GradedWeight) -> bool:
        if a.grade % self.n != b.grade % self.n:
            return False
        return self._leq_weight(a.weight, b.weight)

    def _leq_weight(self, mu: Weight, nu: Weight) -> bool:
        diff = tuple(simplify(y - x) for x, y in zip(mu, nu))
        return self._cached_leq(diff)

    @cached_property
    def _leq_cache(self) -> dict:
        return {}

    def _cached_leq(self, diff: Weight) -> bool:
        cache = self._leq_cache
        if diff not in cache:
            cache[diff] = not any(diff) or (bool(self.simple) and solve_nonneg_integer(self.simple, diff) is not None)
        return cache[diff]

    def add(self, *items: GradedWeight) -> GradedWeight:
        w = tuple(simplify(sum(xs, Q(0))) for xs in zip(*(a.weight for a in items)))
        return GradedWeight(sum(a.grade for a in items) % self.n, w)

    def weights_of_grade(self, j: int) -> set[Weight]:
        """All h0-weights of g_j, including zero."""
        return set(self.decomp.weight_spaces[j % self.n])


def build_sigma_plus(decomp: GradedDecomposition) -> SigmaPlus:
    return SigmaPlus(decomp)


def leq0(p: SigmaPlus, a: GradedWeight, b: GradedWeight) -> bool:
    return p.leq(a, b)


def is_antichain(p: SigmaPlus, members: Iterable[GradedWeight]) -> bool:
    ms = list(members)
    return all(not p.leq(a, b) for a in ms for b in ms if a != b)


def enumerate_antichains(p: SigmaPlus) -> Iterator[Antichain]:
    """Every nonempty antichain exactly once, by depth-first extension in element order."""
    m = len(p.elements)
    comparable = [[p.leq_matrix[a][b] or p.leq_matrix[b][a] for b in range(m)] for a in range(m)]

    def extend(chosen: list[int], start: int):
        for i in range(start, m):
            if any(comparable[i][c] for c in chosen):
                continue
            chosen.append(i)
            yield Antichain(tuple(p.elements[c] for c in chosen))
            yield from extend(chosen, i + 1)
            chosen.pop()

    yield from extend([], 0)


def check_condition_i(p: SigmaPlus, A: Antichain, k: int) -> bool:
    """No (k+1)-fold sum with nonzero grade t lies below a highest weight of g_t."""
    for combo in itertools.combinations_with_replacement(A.members, k + 1):
        s = p.add(*combo)
        if s.grade == 0:
            continue
        if any(p.leq(s, GradedWeight(s.grade, lam)) for lam in p.highest[s.grade]):
            return False
    return True


def check_condition_ii(p: SigmaPlus, A: Antichain, k: int, max_size: int | None = None) -> bool:
    """No sum of 2..k+1 members with grade 0 lies below (theta, 0) or is (0, 0)."""
    top = k + 1 if max_size is None else max_size
    zero = tuple(Q(0) for _ in p.decomp.h0basis)
    targets = [GradedWeight(0, t) for t in p.thetas] + [GradedWeight(0, zero)]
    for size in range(2, top + 1):
        for combo in itertools.combinations_with_replacement(A.members, size):
            s = p.add(*combo)
            if s.grade != 0:
                continue
            if any(p.leq(s, t) for t in targets):
                return False
    return True


def check_condition_iii(p: SigmaPlus, A: Antichain) -> bool:
    """A pair sum below some (nu, t) in Sigma_+ forces a member of A below (nu, t)."""
    for a, b in itertools.combinations_with_replacement(A.members, 2):
        s = p.add(a, b)
        for e in p.elements:
            if p.leq(s, e) and not any(p.leq(c, e) for c in A.members):
                return False
    return True


def passes_criterion(p: SigmaPlus, A: Antichain, k: int, max_size: int | None = None) -> bool:
    return check_condition_i(p, A, k) and check_condition_ii(p, A, k, max_size) and check_condition_iii(p, A)


def passes_abelian_criterion(p: SigmaPlus, A: Antichain) -> bool:
    """k = 1 criterion: no pair sum (mu, t) lies below a highest weight of g_t, any t."""
    for a, b in itertools.combinations_with_replacement(A.members, 2):
        s = p.add(a, b)
        if any(p.leq(s, GradedWeight(s.grade, lam)) for lam in p.highest[s.grade]):
            return False
    return True


def classify_antichains(p: SigmaPlus, k: int, max_size: int | None = None,
                        condition: Callable[[SigmaPlus, Antichain, int], bool] | None = None) -> list[Antichain]:
    """All antichains generating a k-nilpotent positively graded b_0-module subalgebra.

    ``condition`` replaces the criterion; it exists so tests can inject a
    deliberately wrong rule.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    test = condition or (lambda q, A, kk: passes_criterion(q, A, kk, max_size))
    return canonical(A for A in enumerate_antichains(p) if test(p, A, k))


def classify_abelian(p: SigmaPlus) -> list[Antichain]:
    return canonical(A for A in enumerate_antichains(p) if passes_abelian_criterion(p, A))


def upward_closure(p: SigmaPlus, A: Iterable[GradedWeight]) -> frozenset[GradedWeight]:
    A = list(A)
    return frozenset(e for e in p.elements if any(p.leq(a, e) for a in A))


def minimal_elements(p: SigmaPlus, S: Iterable[GradedWeight]) -> Antichain:
    S = set(S)
    return Antichain(tuple(a for a in S if not any(b != a and p.leq(b, a) for b in S)))


def subalgebra_basis_from_antichain(decomp: GradedDecomposition, p: SigmaPlus, A: Antichain) -> list:
    """Weight vectors spanning the subalgebra generated by A, as algebra elements."""
    closure = sorted(upward_closure(p, A))
    vecs = [decomp.weight_spaces[e.grade][e.weight][0] for e in closure]
    if len(row_space_basis(vecs, decomp.alg.dim)) != len(closure):
        raise ValueError("weight vectors are dependent")
    return [decomp.alg.from_vector(v) for v in vecs]


def p2_witness(p: SigmaPlus, betas: Sequence[GradedWeight], target: GradedWeight) -> list[GradedWeight]:
    """Raise the betas within their weight sets until the sum is a weight below target.

    Breadth-first over single simple-root raises; each intermediate sum stays
    below the target.
    """
    betas = [GradedWeight(b.grade % p.n, b.weight) for b in betas]
    if not p.leq(p.add(*betas), target):
        raise ValueError("sum of the inputs does not lie below the target")
    if target.weight not in p.weights_of_grade(target.grade):
        raise ValueError("target is not a weight of its grade")
    grade_weights = {j: p.weights_of_grade(j) for j in {b.grade for b in betas}}
    for b in betas:
        if b.weight not in grade_weights[b.grade]:
            raise ValueError(f"{b} is not a weight of its grade")
    start = tuple(betas)
    seen = {start}
    queue = deque([start])
    goal_weights = p.weights_of_grade(target.grade)
    while queue:
        state = queue.popleft()
        s = p.add(*state)
        if s.weight in goal_weights:
            return list(state)
        for idx, b in enumerate(state):
            for g in p.simple:
                w = tuple(simplify(x + y) for x, y in zip(b.weight, g))
                if w not in grade_weights[b.grade]:
                    continue
                nxt = state[:idx] + (GradedWeight(b.grade, w),) + state[idx + 1:]
                if nxt in seen or not p.leq(p.add(*nxt), target):
                    continue
                seen.add(nxt)
                queue.append(nxt)
    raise RuntimeError("no witness found")
