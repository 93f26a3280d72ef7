import random

import pytest

from conftest import A3_PRESETS, gw
from graded_borel.grading import central_elements
from graded_borel.oracle import (
    CandidateSubspace,
    _bracket,
    brute_force_classify,
    is_b0_module,
    is_k_nilpotent,
    is_positively_graded,
    is_subalgebra,
    ungraded_module_demo,
)
from graded_borel.posetclassify import classify_antichains, enumerate_antichains, upward_closure
from graded_borel.presets import preset_grading


def _span(d, p, items):
    return CandidateSubspace(d, tuple(gw(d, c, j) for c, j in items))


def _g_plus(d):
    extra = tuple(v for j in range(1, d.n) for v in d.components[j])
    return CandidateSubspace(d, (), extra)


def test_b0_module_examples(gradings, posets):
    d = gradings["a3-case1"]
    assert is_b0_module(_g_plus(d))
    assert not is_b0_module(_span(d, posets["a3-case1"], [((0, 1, 1), 1)]))
    d3, p3 = gradings["a3-case3"], posets["a3-case3"]
    for A in enumerate_antichains(p3):
        assert is_b0_module(CandidateSubspace(d3, tuple(upward_closure(p3, A))))


def test_subalgebra_examples(gradings, posets):
    d1, d2 = gradings["a3-case1"], gradings["a3-case2"]
    for e in posets["a3-case1"].elements:
        assert is_subalgebra(CandidateSubspace(d1, (e,)))
    item9 = _span(d2, None, [((1, 1, 0), 1), ((0, 1, 1), 1), ((1, 1, 1), 1)])
    assert is_subalgebra(item9)
    assert not is_subalgebra(_span(d1, None, [((0, 1, 0), 1), ((0, -1, 0), 2)]))


def test_nilpotency_examples(gradings):
    d1, d2 = gradings["a3-case1"], gradings["a3-case2"]
    item9 = _span(d2, None, [((1, 1, 0), 1), ((0, 1, 1), 1), ((1, 1, 1), 1)])
    assert is_k_nilpotent(item9, 1)
    assert not is_k_nilpotent(_g_plus(d1), 1)
    c = _span(d1, None, [((0, 1, 0), 1), ((1, 1, 0), 2), ((1, 1, 1), 2)])
    assert is_k_nilpotent(c, len(c.vectors) + 1)


def test_nilpotency_is_monotone(gradings, posets):
    d, p = gradings["a3-case1"], posets["a3-case1"]
    for A in enumerate_antichains(p):
        c = CandidateSubspace(d, tuple(upward_closure(p, A)))
        flags = [is_k_nilpotent(c, k) for k in range(1, 5)]
        assert flags == sorted(flags)


def test_positively_graded_examples(gradings, posets):
    d = gradings["a3-outer"]
    assert is_positively_graded(CandidateSubspace(d))
    for e in posets["a3-outer"].elements:
        assert is_positively_graded(CandidateSubspace(d, (e,)))
    h = d.h0basis[0]
    assert not is_positively_graded(CandidateSubspace(d, (), (h,)))


@pytest.mark.parametrize("name", A3_PRESETS)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_oracle_agrees_with_classifier(gradings, posets, name, k):
    d, p = gradings[name], posets[name]
    assert brute_force_classify(d, k, p) == classify_antichains(p, k)


def test_case3_count(gradings):
    assert len(brute_force_classify(gradings["a3-case3"], 1)) == 6


def test_kept_sets_match_definition_predicates(gradings, posets):
    """The fast support test agrees with the rank-based predicates."""
    d, p = gradings["a3-outer"], posets["a3-outer"]
    for k in (1, 2):
        kept = set(brute_force_classify(d, k, p))
        for A in enumerate_antichains(p):
            c = CandidateSubspace(d, tuple(upward_closure(p, A)))
            ok = is_b0_module(c) and is_subalgebra(c) and is_k_nilpotent(c, k) and is_positively_graded(c)
            assert ok == (A in kept)


def test_general_bracketings_vanish(gradings, posets):
    rng = random.Random(3)
    d, p = gradings["a3-case3"], posets["a3-case3"]
    for A in brute_force_classify(d, 2, p):
        vs = CandidateSubspace(d, tuple(upward_closure(p, A))).vectors
        for _ in range(20):
            a, b, c = (rng.choice(vs) for _ in range(3))
            assert not any(_bracket(d, _bracket(d, a, b), c))
            assert not any(_bracket(d, a, _bracket(d, b, c)))


def test_central_parts_commute(gradings, posets):
    for d in gradings.values():
        p = posets[[k for k, v in gradings.items() if v is d][0]]
        for A in classify_antichains(p, 1):
            c = CandidateSubspace(d, tuple(upward_closure(p, A)))
            for j in range(1, d.n):
                for h in central_elements(d, j):
                    assert all(not any(_bracket(d, h, v)) for v in c.vectors)


def test_size_guard():
    d = preset_grading("e6-outer")
    with pytest.raises(ValueError):
        brute_force_classify(d, 1)


def test_remark_e2(gradings):
    d = gradings["a3-outer"]
    report = ungraded_module_demo(d, d.root_weight((1, 1, 0)))
    assert report.same_weight
    assert report.abelian and report.b0_stable
    assert not report.positively_graded
    assert len(report.module_basis) == 2
