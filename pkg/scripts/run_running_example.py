#!/usr/bin/env python3
"""Solve the bundled running example end to end and print every artifact.

Usage: python scripts/run_running_example.py [--dot-dir DIR]
"""

import argparse
from pathlib import Path

from hypergames.arena import load_arena_file
from hypergames.cli import export_dot, synthesize

SCENARIO = Path(__file__).parent.parent / "scenarios" / "running_example.json"


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--dot-dir", help="also write DOT renderings here")
    args = parser.parse_args()

    inp = load_arena_file(SCENARIO)
    bundle = synthesize(inp)

    print("objective:", inp.objective_text)
    print("DFA states:", bundle.dfa.states, "accepting:", sorted(bundle.dfa.accepting))
    print()
    print("perceptual games (arena level):")
    print("  true      win1 =", sorted(bundle.arena_regions_true.win1))
    print("  perceived win1 =", sorted(bundle.arena_regions_perceived.win1))
    print()
    print("robustly winning arena states:", sorted(bundle.hts.robust_win))
    print("reachable restricted fragment:", len(bundle.restricted.states), "states")
    for v in sorted(bundle.restricted.states, key=repr):
        mark = "*" if v in bundle.restricted.target else " "
        print(f"  {mark} {v}")
    print()
    print("deceptive sure-winning region:")
    for v in sorted(bundle.sure_regions.win1, key=repr):
        print("   ", v)
    print()
    print("almost-sure level sets:")
    prev = frozenset()
    for i, level in enumerate(bundle.asw.levels):
        print(f"  Y{i} adds {sorted(level - prev, key=repr)}")
        prev = level
    print("almost-sure strategy:", bundle.asw.strategy)

    if args.dot_dir:
        out = Path(args.dot_dir)
        out.mkdir(parents=True, exist_ok=True)
        export_dot(
            inp.arena,
            {
                "true_win": bundle.arena_regions_true.win1,
                "perceived_win": bundle.arena_regions_perceived.win1,
            },
            out / "arena.dot",
        )
        export_dot(bundle.restricted, bundle.sure_regions, out / "restricted.dot")
        export_dot(bundle.stochastic, None, out / "stochastic.dot")
        print("DOT files written to", out)


if __name__ == "__main__":
    main()
