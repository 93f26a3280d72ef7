"""Named gradings used throughout the examples and tests.

The Borel overrides are given as roots of g (simple-root coordinates) and
restricted to h_0, so the outer case can name its simple root gamma_1 as
the restriction of alpha_1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chevalley import build_chevalley
from .grading import GradedDecomposition, automorphism_from_label, automorphism_to_grading


@dataclass(frozen=True)
class Preset:
    name: str
    family: str
    rank: int
    label: tuple[int, ...]
    r: int
    delta0: tuple[tuple[int, ...], ...] | None


PRESETS = {
    p.name: p
    for p in [
        Preset("a3-case1", "A", 3, (1, 1, 1, 0), 1, ((0, 0, -1),)),
        Preset("a3-case2", "A", 3, (2, 0, 1, 0), 1, ((1, 0, 0), (0, 0, 1))),
        Preset("a3-case3", "A", 3, (0, 0, 1, 2), 1, ((-1, -1, -1), (1, 0, 0))),
        Preset("a3-outer", "A", 3, (1, 1, 0), 2, ((1, 0, 0),)),
        Preset("e6-outer", "E", 6, (0, 1, 0, 0, 0), 2, None),
    ]
}


def build_grading(family: str, rank: int, label, r: int = 1, delta0_roots=None,
                  check: bool = True) -> GradedDecomposition:
    """Grading for a Kac label, with simple roots of g_0 given as roots of g."""
    alg = build_chevalley(family, rank)
    sigma = automorphism_from_label(alg, tuple(label), r)
    decomp = automorphism_to_grading(alg, sigma, check=check)
    if delta0_roots is not None:
        decomp = decomp.with_borel([decomp.root_weight(a) for a in delta0_roots])
    return decomp


def preset_grading(name: str, check: bool = True) -> GradedDecomposition:
    try:
        p = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return build_grading(p.family, p.rank, p.label, p.r, p.delta0, check)
