"""Navigate: simulate step/turn instructions from the origin."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseUnsupported

# heading 0=N, 1=E, 2=S, 3=W; unit vectors east/north
_VECTORS = {0: (0, 1), 1: (1, 0), 2: (0, -1), 3: (-1, 0)}
_RELATIVE = {"forward": 0, "right": 1, "backward": 2, "left": 3}
_HEADINGS = "NESW"

_TAKE = re.compile(r"^Take (\d+) steps?(?: (forward|backward|left|right))?$")
_TURN = re.compile(r"^Turn (left|right|around)$")


@dataclass
class NavState:
    x: int = 0
    y: int = 0
    heading: str = "N"


def split_instructions(input_text: str) -> list[str]:
    """Drop the question preamble and split the instruction sentences."""
    text = input_text
    if "?" in text:
        text = text.rsplit("?", 1)[1]
    parts = [p.strip() for p in text.split(".")]
    return [p for p in parts if p]


def simulate(input_text: str) -> NavState:
    """Run the instruction sequence and return the final state.

    Directional steps ("Take 2 steps left") translate relative to the
    current heading without changing it; this covers both the turn-based
    and the "Always face forward" BBH dialects.
    """
    state = NavState()
    heading = 0
    for sentence in split_instructions(input_text):
        if sentence == "Always face forward":
            heading = 0
            continue
        m = _TURN.match(sentence)
        if m:
            heading = (heading + {"left": 3, "right": 1, "around": 2}[m.group(1)]) % 4
            continue
        m = _TAKE.match(sentence)
        if m:
            count = int(m.group(1))
            direction = (heading + _RELATIVE[m.group(2) or "forward"]) % 4
            dx, dy = _VECTORS[direction]
            state.x += dx * count
            state.y += dy * count
            continue
        raise ParseUnsupported(f"unsupported instruction: {sentence!r}")
    state.heading = _HEADINGS[heading]
    return state


def solve_navigate(input_text: str) -> str:
    state = simulate(input_text)
    return "Yes" if (state.x, state.y) == (0, 0) else "No"
