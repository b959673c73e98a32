"""Turn-based deterministic two-player arenas with true and perceived labelings.

The input document is a JSON object::

    {
      "states": [{"id": 0, "player": 1}, ...],
      "init": 0,
      "ap": ["A"],
      "edges": [{"from": 0, "to": 1, "action": "0->1"?}, ...],
      "label_true": {"5": ["A"]},
      "label_perceived": {"2": ["A"]},
      "objective": {"formula": "F A"}   # or {"dfa": {...}}
    }

Unlisted states default to the empty label in both labelings.  Action
identifiers default to ``"src->dst"`` when omitted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from . import speclang
from .speclang import Dfa, Formula

__all__ = [
    "Arena",
    "HypergameInput",
    "ArenaFormatError",
    "load_arena",
    "load_arena_file",
    "enabled_actions",
]

P1 = 1
P2 = 2

StateId = Any  # JSON scalar (int or str)


class ArenaFormatError(ValueError):
    """Schema or structural violation in an arena document."""


@dataclass(frozen=True)
class Arena:
    states: tuple[StateId, ...]
    owner: dict[StateId, int]
    transitions: dict[StateId, dict[str, StateId]]
    initial: StateId
    ap: frozenset[str]
    label_true: dict[StateId, frozenset[str]]
    label_perceived: dict[StateId, frozenset[str]]

    def label(self, s: StateId, which: int) -> frozenset[str]:
        table = self.label_true if which == P1 else self.label_perceived
        return table.get(s, frozenset())


@dataclass(frozen=True)
class HypergameInput:
    arena: Arena
    objective: Formula | Dfa
    objective_text: str | None = None


def enabled_actions(arena: Arena, s: StateId) -> frozenset[str]:
    """Actions with a defined transition at ``s``."""
    if s not in arena.transitions:
        raise ArenaFormatError(f"unknown state {s!r}")
    return frozenset(arena.transitions[s])


def _require(document: Mapping[str, Any], key: str) -> Any:
    if key not in document:
        raise ArenaFormatError(f"missing required field {key!r}")
    return document[key]


def _parse_labels(
    raw: Mapping[str, Any], by_repr: Mapping[str, StateId], ap: frozenset[str], field: str
) -> dict[StateId, frozenset[str]]:
    labels: dict[StateId, frozenset[str]] = {}
    for key, props in raw.items():
        if key not in by_repr:
            raise ArenaFormatError(f"{field} refers to unknown state {key!r}")
        if not isinstance(props, list):
            raise ArenaFormatError(f"{field}[{key!r}] must be an array of proposition names")
        for p in props:
            if p not in ap:
                raise ArenaFormatError(f"{field}[{key!r}] uses undeclared proposition {p!r}")
        labels[by_repr[key]] = frozenset(props)
    return labels


def _parse_explicit_dfa(raw: Mapping[str, Any], ap: frozenset[str]) -> Dfa:
    for key in ("states", "initial", "accepting", "transitions"):
        if key not in raw:
            raise ArenaFormatError(f"objective.dfa is missing field {key!r}")
    states = tuple(str(q) for q in raw["states"])
    if len(set(states)) != len(states):
        raise ArenaFormatError("objective.dfa has duplicate states")
    initial = str(raw["initial"])
    accepting = frozenset(str(q) for q in raw["accepting"])
    if initial not in states or not accepting <= set(states):
        raise ArenaFormatError("objective.dfa initial/accepting not among states")
    alphabet = speclang.all_symbols(ap)
    delta: dict[tuple[str, frozenset[str]], str] = {}
    for entry in raw["transitions"]:
        src, dst = str(entry["from"]), str(entry["to"])
        symbol = frozenset(entry["symbol"])
        if src not in states or dst not in states:
            raise ArenaFormatError(f"objective.dfa transition uses unknown state {entry!r}")
        if not symbol <= ap:
            raise ArenaFormatError(f"objective.dfa symbol {sorted(symbol)} not over AP")
        if (src, symbol) in delta:
            raise ArenaFormatError(f"objective.dfa duplicate transition ({src}, {sorted(symbol)})")
        delta[(src, symbol)] = dst
    dfa = Dfa(
        ap=ap,
        states=states,
        alphabet=alphabet,
        delta=delta,
        initial=initial,
        accepting=accepting,
    )
    try:
        dfa.validate()
    except speclang.AlphabetError as exc:
        raise ArenaFormatError(f"objective.dfa is not a valid total absorbing DFA: {exc}") from exc
    return dfa


def load_arena(document: Mapping[str, Any]) -> HypergameInput:
    """Validate a document and build a :class:`HypergameInput`."""
    raw_states = _require(document, "states")
    if not isinstance(raw_states, list) or not raw_states:
        raise ArenaFormatError("'states' must be a non-empty array")
    states: list[StateId] = []
    owner: dict[StateId, int] = {}
    for entry in raw_states:
        if not isinstance(entry, Mapping) or "id" not in entry or "player" not in entry:
            raise ArenaFormatError(f"bad state entry {entry!r}; need {{id, player}}")
        sid, player = entry["id"], entry["player"]
        if sid in owner:
            raise ArenaFormatError(f"duplicate state id {sid!r}")
        if player not in (P1, P2):
            raise ArenaFormatError(f"state {sid!r}: player must be 1 or 2, got {player!r}")
        states.append(sid)
        owner[sid] = player
    by_repr = {str(s): s for s in states}

    init = _require(document, "init")
    if init not in owner:
        raise ArenaFormatError(f"initial state {init!r} is not a declared state")

    raw_ap = _require(document, "ap")
    if not isinstance(raw_ap, list) or not all(isinstance(p, str) for p in raw_ap):
        raise ArenaFormatError("'ap' must be an array of proposition names")
    ap = frozenset(raw_ap)

    transitions: dict[StateId, dict[str, StateId]] = {s: {} for s in states}
    for entry in _require(document, "edges"):
        if not isinstance(entry, Mapping) or "from" not in entry or "to" not in entry:
            raise ArenaFormatError(f"bad edge entry {entry!r}; need {{from, to}}")
        src, dst = entry["from"], entry["to"]
        if src not in owner:
            raise ArenaFormatError(f"edge from unknown state {src!r}")
        if dst not in owner:
            raise ArenaFormatError(f"edge to unknown state {dst!r}")
        action = entry.get("action", f"{src}->{dst}")
        if action in transitions[src]:
            raise ArenaFormatError(
                f"nondeterminism: duplicate (state, action) pair ({src!r}, {action!r})"
            )
        transitions[src][action] = dst
    for s in states:
        if not transitions[s]:
            raise ArenaFormatError(f"state {s!r} has no enabled action; games are infinite-duration")

    label_true = _parse_labels(document.get("label_true", {}), by_repr, ap, "label_true")
    label_perceived = _parse_labels(
        document.get("label_perceived", {}), by_repr, ap, "label_perceived"
    )

    arena = Arena(
        states=tuple(states),
        owner=owner,
        transitions=transitions,
        initial=init,
        ap=ap,
        label_true=label_true,
        label_perceived=label_perceived,
    )

    raw_objective = _require(document, "objective")
    if not isinstance(raw_objective, Mapping):
        raise ArenaFormatError("'objective' must be an object")
    if "formula" in raw_objective:
        try:
            objective: Formula | Dfa = speclang.parse_formula(raw_objective["formula"], ap)
        except speclang.FormulaError as exc:
            raise ArenaFormatError(f"bad objective formula: {exc}") from exc
        text = raw_objective["formula"]
    elif "dfa" in raw_objective:
        objective = _parse_explicit_dfa(raw_objective["dfa"], ap)
        text = None
    else:
        raise ArenaFormatError("'objective' needs either a 'formula' or a 'dfa'")
    return HypergameInput(arena=arena, objective=objective, objective_text=text)


def load_arena_file(path: str | Path) -> HypergameInput:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            document = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ArenaFormatError(f"{path}: not valid JSON: {exc}") from exc
    return load_arena(document)


def to_document(inp: HypergameInput) -> dict[str, Any]:
    """Serialize back to the input schema (round-trips through :func:`load_arena`)."""
    arena = inp.arena
    doc: dict[str, Any] = {
        "states": [{"id": s, "player": arena.owner[s]} for s in arena.states],
        "init": arena.initial,
        "ap": sorted(arena.ap),
        "edges": [
            {"from": s, "to": dst, "action": a}
            for s in arena.states
            for a, dst in sorted(arena.transitions[s].items())
        ],
        "label_true": {str(s): sorted(ps) for s, ps in arena.label_true.items() if ps},
        "label_perceived": {
            str(s): sorted(ps) for s, ps in arena.label_perceived.items() if ps
        },
    }
    if inp.objective_text is not None:
        doc["objective"] = {"formula": inp.objective_text}
    else:
        dfa = inp.objective
        assert isinstance(dfa, Dfa)
        doc["objective"] = {
            "dfa": {
                "states": list(dfa.states),
                "initial": dfa.initial,
                "accepting": sorted(dfa.accepting),
                "transitions": [
                    {"from": q, "symbol": sorted(sigma), "to": dfa.delta[(q, sigma)]}
                    for q in dfa.states
                    for sigma in dfa.alphabet
                ],
            }
        }
    return doc
