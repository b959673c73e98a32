#!/usr/bin/env python3
"""Measure how sure-mode synthesis scales with arena size.

The solver and the restricted-game construction are linear in the number of
transitions of the hypergame transition system; this script checks that the
wall-clock numbers look linear too.

Usage: python scripts/benchmark_scaling.py [--sizes 1000 2000 5000 10000] [--seed 7]
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "tests"))

from hypergames.arena import HypergameInput
from hypergames.hypergame import (
    build_hts,
    build_restricted_game,
    build_sr_map,
    solve_deceptive_sure,
)
from hypergames.product import build_product
from hypergames.reachsolver import solve_reachability
from hypergames.speclang import compile_to_dfa, parse_formula

from randgen import random_arena


def time_sure_synthesis(n: int, seed: int) -> tuple[float, int]:
    rng = random.Random(seed)
    arena = random_arena(rng, max_states=n, min_states=n, max_branch=4, ap=("a",))
    objective = parse_formula("F a", arena.ap)
    inp = HypergameInput(arena=arena, objective=objective, objective_text="F a")
    started = time.perf_counter()
    dfa = compile_to_dfa(objective, arena.ap)
    p1 = build_product(arena, 1, dfa)
    p2 = build_product(arena, 2, dfa)
    r1, _, _ = solve_reachability(p1, p1.target)
    r2, _, _ = solve_reachability(p2, p2.target)
    hts = build_hts(inp, dfa, r1)
    sr = build_sr_map(p2, r2)
    rg = build_restricted_game(hts, sr)
    regions, _ = solve_deceptive_sure(rg)
    return time.perf_counter() - started, len(regions.win1)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", type=int, nargs="+", default=[1000, 2000, 5000, 10000])
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    print(f"{'|S|':>8} {'time (s)':>10} {'per state (us)':>16} {'|win|':>8}")
    for n in args.sizes:
        elapsed, win = time_sure_synthesis(n, args.seed)
        print(f"{n:>8} {elapsed:>10.3f} {elapsed / n * 1e6:>16.1f} {win:>8}")


if __name__ == "__main__":
    main()
