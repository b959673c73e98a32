"""Synthesis of stealthy deceptive winning strategies in hypergames on graphs.

Two players alternate moves on a finite graph; the adversary misperceives the
labeling function.  Objectives are syntactically co-safe LTL formulas compiled
to total absorbing DFAs.  The package synthesizes strategies with which P1
wins his true objective surely (or almost-surely) while acting, from the
adversary's perspective, like a rational player of her misperceived game.
"""

from .arena import Arena, ArenaFormatError, HypergameInput, load_arena, load_arena_file
from .almostsure import AswResult, StochasticGame, build_stochastic_game, solve_asw
from .hypergame import (
    Hts,
    RestrictedGame,
    SrActionMap,
    build_hts,
    build_restricted_game,
    build_sr_map,
    solve_deceptive_sure,
    sr_actions,
)
from .product import ProductGame, build_product
from .reachsolver import Regions, solve_reachability
from .simulate import Trace, audit_stealth, simulate_asw, verify_sure
from .speclang import (
    Dfa,
    DfaSizeError,
    Formula,
    FormulaError,
    FormulaSyntaxError,
    compile_to_dfa,
    parse_formula,
)

__version__ = "0.1.0"

__all__ = [
    "Arena",
    "ArenaFormatError",
    "AswResult",
    "Dfa",
    "DfaSizeError",
    "Formula",
    "FormulaError",
    "FormulaSyntaxError",
    "Hts",
    "HypergameInput",
    "ProductGame",
    "Regions",
    "RestrictedGame",
    "SrActionMap",
    "StochasticGame",
    "Trace",
    "audit_stealth",
    "build_hts",
    "build_product",
    "build_restricted_game",
    "build_sr_map",
    "build_stochastic_game",
    "compile_to_dfa",
    "load_arena",
    "load_arena_file",
    "parse_formula",
    "simulate_asw",
    "solve_asw",
    "solve_deceptive_sure",
    "solve_reachability",
    "sr_actions",
    "verify_sure",
]
