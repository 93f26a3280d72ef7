"""graded-borel command line.

Exit codes: 0 success, 1 classifier/oracle mismatch, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from .chevalley import ChevalleyError
from .exactlinalg import fmt_scalar
from .grading import (
    GradedDecomposition,
    GradingError,
    central_elements,
    enumerate_kac_labels,
    highest_weights_of_component,
)
from .oracle import brute_force_classify
from .posetclassify import Antichain, GradedWeight, build_sigma_plus, classify_antichains
from .presets import PRESETS, build_grading, preset_grading
from .rootsystem import RootSystemError, build_affine_diagram


class BadInput(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise BadInput(f"expected a comma separated list of integers, got {text!r}") from None


def _weight_json(w) -> list[str]:
    return [fmt_scalar(x) for x in w]


def _gw_json(e: GradedWeight) -> dict:
    return {"weight": _weight_json(e.weight), "grade": e.grade}


def _gw_text(e: GradedWeight) -> str:
    return "(" + ",".join(fmt_scalar(x) for x in e.weight) + f";{e.grade})"


def _antichain_text(A: Antichain) -> str:
    return "{" + ", ".join(_gw_text(e) for e in A) + "}"


def _family_rank(args) -> tuple[str, int]:
    family = args.family or args.family_pos
    rank = args.rank if args.rank is not None else args.rank_pos
    if family is None or rank is None:
        raise BadInput("family and rank are required")
    return family.upper(), int(rank)


def _grading(args) -> tuple[GradedDecomposition, dict]:
    if args.preset:
        if args.preset not in PRESETS:
            raise BadInput(f"unknown preset {args.preset!r}; choose from {', '.join(PRESETS)}")
        p = PRESETS[args.preset]
        decomp = preset_grading(args.preset)
        info = {"preset": p.name, "family": p.family, "rank": p.rank, "label": list(p.label), "r": p.r}
    else:
        family, rank = _family_rank(args)
        if not args.label:
            raise BadInput("--label is required without --preset")
        label = _ints(args.label)
        delta0 = [_ints(x) for x in args.delta0.split(";")] if args.delta0 else None
        decomp = build_grading(family, rank, label, args.r, delta0)
        info = {"family": family, "rank": rank, "label": list(label), "r": args.r}
    info.update(
        n=decomp.n,
        dims=list(decomp.dims()),
        h0basis=[[fmt_scalar(x) for x in h] for h in decomp.h0_coords],
        delta0=[_weight_json(w) for w in decomp.g0.simple_roots],
    )
    return decomp, info


def cmd_labels(args, out) -> int:
    family, rank = _family_rank(args)
    if args.n is None:
        raise BadInput("--n is required")
    build_affine_diagram(family, rank, args.r)
    labels = enumerate_kac_labels(family, rank, args.n, args.r)
    if args.format == "json":
        out.write(json.dumps([{"s": list(l.s), "r": l.r, "n": l.n} for l in labels]) + "\n")
    else:
        for l in labels:
            out.write(str(l) + "\n")
    return 0


def cmd_grade(args, out) -> int:
    decomp, info = _grading(args)
    comps = []
    for j in range(decomp.n):
        entry = {
            "grade": j,
            "dim": len(decomp.components[j]),
            "weights": [_weight_json(w) for w in decomp.weights(j)],
            "highestWeights": [_weight_json(w) for w in highest_weights_of_component(decomp, j)],
        }
        if j:
            entry["central"] = [[fmt_scalar(x) for x in v] for v in central_elements(decomp, j)]
        comps.append(entry)
    info["highestRoots"] = [_weight_json(t) for t in decomp.g0.highest_roots]
    if args.format == "json":
        out.write(json.dumps({"grading": info, "components": comps}) + "\n")
    else:
        out.write(f"n={decomp.n} dims={tuple(decomp.dims())}\n")
        out.write("delta0: " + " ".join("(" + ",".join(w) + ")" for w in info["delta0"]) + "\n")
        for c in comps:
            out.write(f"g_{c['grade']}: dim {c['dim']}, highest " +
                      " ".join("(" + ",".join(w) + ")" for w in c["highestWeights"]) + "\n")
    return 0


def cmd_poset(args, out) -> int:
    decomp, info = _grading(args)
    p = build_sigma_plus(decomp)
    m = len(p.elements)
    covers = []
    for a in range(m):
        for b in range(m):
            if a != b and p.leq_matrix[a][b] and not any(
                c not in (a, b) and p.leq_matrix[a][c] and p.leq_matrix[c][b] for c in range(m)
            ):
                covers.append((a, b))
    if args.format == "json":
        out.write(json.dumps({
            "grading": info,
            "sigmaPlus": [_gw_json(e) for e in p.elements],
            "covers": [list(c) for c in covers],
        }) + "\n")
    else:
        for i, e in enumerate(p.elements):
            out.write(f"{i}: {_gw_text(e)}\n")
        for a, b in covers:
            out.write(f"{a} <= {b}\n")
    return 0


def _classify_payload(info, k, p, antichains) -> dict:
    return {
        "grading": info,
        "k": k,
        "sigmaPlus": [_gw_json(e) for e in p.elements],
        "antichains": [[_gw_json(e) for e in A] for A in antichains],
        "count": len(antichains),
    }


def cmd_classify(args, out, condition=None) -> int:
    decomp, info = _grading(args)
    p = build_sigma_plus(decomp)
    result = classify_antichains(p, args.k, args.max_size, condition)
    if args.format == "json":
        out.write(json.dumps(_classify_payload(info, args.k, p, result)) + "\n")
    else:
        for A in result:
            out.write(_antichain_text(A) + "\n")
    return 0


def cmd_verify(args, out, condition=None) -> int:
    decomp, info = _grading(args)
    p = build_sigma_plus(decomp)
    mine = set(classify_antichains(p, args.k, args.max_size, condition))
    truth = set(brute_force_classify(decomp, args.k, p))
    only_c = sorted(mine - truth, key=Antichain.sort_key)
    only_o = sorted(truth - mine, key=Antichain.sort_key)
    ok = not only_c and not only_o
    if args.format == "json":
        out.write(json.dumps({
            "grading": info, "k": args.k, "agree": ok, "count": len(truth),
            "classifierOnly": [[_gw_json(e) for e in A] for A in only_c],
            "oracleOnly": [[_gw_json(e) for e in A] for A in only_o],
        }) + "\n")
    else:
        out.write(f"{'agree' if ok else 'MISMATCH'}: classifier {len(mine)}, oracle {len(truth)}\n")
        for A in only_c:
            out.write("classifier only: " + _antichain_text(A) + "\n")
        for A in only_o:
            out.write("oracle only: " + _antichain_text(A) + "\n")
    return 0 if ok else 1


COMMANDS: dict[str, Callable] = {
    "labels": cmd_labels,
    "grade": cmd_grade,
    "poset": cmd_poset,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graded-borel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("family_pos", nargs="?", metavar="FAMILY")
        sp.add_argument("rank_pos", nargs="?", type=int, metavar="RANK")
        sp.add_argument("--family")
        sp.add_argument("--rank", type=int)
        sp.add_argument("--r", type=int, default=1, choices=(1, 2))
        sp.add_argument("--format", choices=("json", "text"), default="json")
        if name == "labels":
            sp.add_argument("--n", type=int)
        else:
            sp.add_argument("--label", help="Kac label, e.g. 1,1,1,0")
            sp.add_argument("--preset", help="one of " + ", ".join(PRESETS))
            sp.add_argument("--delta0", help="simple roots of g_0 as roots of g, e.g. '0,0,-1;1,0,0'")
        if name in ("classify", "verify"):
            sp.add_argument("--k", type=int, default=1)
            sp.add_argument("--max-size", type=int, default=None,
                            help="largest multiset size for the grade-zero condition (default k+1)")
    return parser


def run(argv: Sequence[str], out=None, err=None, condition=None) -> int:
    """Entry point for tests; ``condition`` swaps in a different antichain rule."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if getattr(args, "k", 1) < 1:
            raise BadInput("--k must be at least 1")
        fn = COMMANDS[args.command]
        if args.command in ("classify", "verify"):
            return fn(args, out, condition)
        return fn(args, out)
    except (BadInput, ValueError, KeyError, RootSystemError, ChevalleyError) as e:
        err.write(f"error: {e}\n")
        return 2
    except GradingError as e:
        err.write(f"error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
