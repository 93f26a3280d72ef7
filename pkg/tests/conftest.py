import sys

import pytest

from graded_borel.exactlinalg import solve
from graded_borel.posetclassify import Antichain, GradedWeight, build_sigma_plus
from graded_borel.presets import preset_grading

A3_PRESETS = ["a3-case1", "a3-case2", "a3-case3", "a3-outer"]


@pytest.fixture(scope="session")
def gradings():
    return {name: preset_grading(name) for name in A3_PRESETS}


@pytest.fixture(scope="session")
def posets(gradings):
    return {name: build_sigma_plus(d) for name, d in gradings.items()}


def outer_basis(decomp):
    """Weights g1, g2 of E1 = x(a1)+x(a3) and E2 = x(a2)."""
    return [decomp.root_weight((1, 0, 0)), decomp.root_weight((0, 1, 0))]


def gw(decomp, coords, grade):
    """GradedWeight from root coordinates (inner) or (g1, g2) coordinates (outer)."""
    if len(coords) == 2:
        g1, g2 = outer_basis(decomp)
        w = tuple(coords[0] * a + coords[1] * b for a, b in zip(g1, g2))
    else:
        w = decomp.root_weight(coords)
    return GradedWeight(grade, w)


def antichain(decomp, items):
    return Antichain(tuple(gw(decomp, c, j) for c, j in items))


def coords_of(decomp, e: GradedWeight, outer=False):
    basis = outer_basis(decomp) if outer else [decomp.root_weight(r) for r in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]]
    return tuple(int(x) for x in solve(basis, e.weight)), e.grade


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance")
        for line in mod.report_lines():
            terminalreporter.write_line(line)
