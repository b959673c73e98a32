from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # oracles / randgen helpers

from hypergames.arena import load_arena_file
from hypergames.cli import synthesize

SCENARIO = Path(__file__).parent.parent / "scenarios" / "running_example.json"


@pytest.fixture(scope="session")
def running_input():
    return load_arena_file(SCENARIO)


@pytest.fixture(scope="session")
def running_bundle(running_input):
    return synthesize(running_input)
