import itertools
from fractions import Fraction as Q

import pytest

from graded_borel.chevalley import build_chevalley

SMALL = [("A", 1), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]


@pytest.fixture(scope="module")
def a3():
    return build_chevalley("A", 3)


def test_defining_relations(a3):
    x, h = a3.x, a3.h
    assert a3.bracket(x((1, 0, 0)), x((-1, 0, 0))) == h(0)
    assert a3.bracket(h(0), x((0, 1, 0))) == -1 * x((0, 1, 0))
    b = a3.bracket(x((1, 0, 0)), x((0, 1, 0)))
    assert b in (x((1, 1, 0)), -1 * x((1, 1, 0)))


def test_bracket_examples(a3):
    x, h = a3.x, a3.h
    assert not a3.bracket(x((1, 0, 0)), x((1, 0, 0)))
    assert a3.bracket(h(0) + h(2), x((0, 1, 0))) == -2 * x((0, 1, 0))
    assert not a3.bracket(x((1, 0, 0)), x((0, 0, 1)))


def test_mixed_algebras_rejected(a3):
    other = build_chevalley("B", 2)
    with pytest.raises(ValueError):
        a3.bracket(a3.h(0), other.h(0))


@pytest.mark.parametrize("family,rank", SMALL)
def test_jacobi_on_all_triples(family, rank):
    alg = build_chevalley(family, rank)
    n = alg.dim
    assert alg.check_jacobi(itertools.combinations(range(n), 3)) == n * (n - 1) * (n - 2) // 6


@pytest.mark.parametrize("family,rank", SMALL)
def test_antisymmetry_and_integrality(family, rank):
    alg = build_chevalley(family, rank)
    for i in range(alg.dim):
        assert not alg.table[i][i]
        for j in range(alg.dim):
            neg = {k: -v for k, v in alg.table[j][i].items()}
            assert alg.table[i][j] == neg
            assert all(Q(v).denominator == 1 for v in alg.table[i][j].values())


@pytest.mark.parametrize("family,rank", SMALL + [("F", 4)])
def test_structure_constants_follow_root_strings(family, rank):
    """|N_{a,b}| = p + 1 where p is the largest integer with b - p a a root."""
    alg = build_chevalley(family, rank)
    rs = alg.rs
    for a in rs.roots:
        for b in rs.roots:
            s = tuple(x + y for x, y in zip(a, b))
            if not rs.is_root(s):
                continue
            p = 0
            while rs.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
                p += 1
            assert abs(alg.N(a, b)) == p + 1


def test_adjoint_matrix(a3):
    assert a3.adjoint_matrix(a3.zero()).is_zero()
    m = a3.adjoint_matrix(a3.h(0))
    for i, tag in enumerate(a3.basis):
        expected = a3.rs.pairing(tag.root, 0) if hasattr(tag, "root") else 0
        assert m[i, i] == expected
        assert all(m[i, j] == 0 for j in range(a3.dim) if j != i)


def _sl4_trace_h1_squared():
    h = [1, -1, 0, 0]
    return sum((h[i] - h[j]) ** 2 for i in range(4) for j in range(4) if i != j)


def test_killing_values(a3):
    assert a3.killing_form(a3.h(0), a3.x((1, 0, 0))) == 0
    # trace of ad(h1)^2 on sl4, computed from matrix units
    assert a3.killing_form(a3.h(0), a3.h(0)) == _sl4_trace_h1_squared() == 16
    assert a3.killing_form(a3.x((1, 0, 0)), a3.x((-1, 0, 0))) == 8


def test_killing_matches_adjoint_traces(a3):
    ads = [a3.adjoint_matrix(a3.element(i)) for i in range(a3.dim)]
    for i in range(a3.dim):
        for j in range(a3.dim):
            assert a3.killing[i, j] == (ads[i] @ ads[j]).trace()


def test_killing_is_invariant():
    alg = build_chevalley("B", 2)
    els = [alg.element(i) for i in range(alg.dim)]
    for a, b, c in itertools.product(els, repeat=3):
        assert alg.killing_form(alg.bracket(a, b), c) == alg.killing_form(a, alg.bracket(b, c))


def test_e6_builds():
    alg = build_chevalley("E", 6)
    assert alg.dim == 78
    assert alg.check_jacobi() > 0
