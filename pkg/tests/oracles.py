"""Independent re-implementations of task ground truths, used to cross-check
the package solvers.  These deliberately share no code with the package:
different data structures, different parsing, same task definitions."""

from __future__ import annotations

import itertools
import re

PAIRS = {"(": ")", "[": "]", "{": "}", "<": ">"}


# --- Dyck: balance + minimality ---------------------------------------------

def _balanced(tokens: list[str]) -> bool:
    stack: list[str] = []
    for tok in tokens:
        if tok in PAIRS:
            stack.append(tok)
        elif stack and PAIRS[stack[-1]] == tok:
            stack.pop()
        else:
            return False
    return not stack


def dyck_completion_valid(input_text: str, completion: str) -> bool:
    """The completion must balance the sequence and be minimal: no proper
    prefix of it may already balance the input."""
    base = input_text.rsplit("Input:", 1)[1].split()
    comp = completion.split()
    if not _balanced(base + comp):
        return False
    return all(not _balanced(base + comp[:k]) for k in range(len(comp)))


# --- Navigate: displacement accumulation over complex numbers ----------------

def navigate_answer(input_text: str) -> str:
    body = input_text.rsplit("?", 1)[1]
    pos = 0 + 0j
    heading = 0 + 1j                     # facing north
    for sentence in body.split("."):
        s = sentence.strip()
        if not s:
            continue
        if s == "Turn left":
            heading *= 1j
        elif s == "Turn right":
            heading *= -1j
        elif s == "Turn around":
            heading *= -1
        elif s == "Always face forward":
            heading = 0 + 1j
        else:
            m = re.fullmatch(
                r"Take (\d+) steps?(?: (forward|backward|left|right))?", s)
            if m is None:
                raise ValueError(f"unparsed sentence {s!r}")
            n = int(m.group(1))
            direction = {
                None: heading, "forward": heading, "backward": -heading,
                "left": heading * 1j, "right": heading * -1j,
            }[m.group(2)]
            pos += n * direction
    return "Yes" if pos == 0 else "No"


# --- Shuffled objects: permutation composition ------------------------------

def shuffled_answer(input_text: str) -> str:
    """Compose the swaps as one permutation over party indices, then apply
    it to the initial holdings."""
    initial = re.findall(
        r"([A-Z][a-z]+) has an? ([a-z ]+?)(?=,|\.|$)", input_text)
    names = [name for name, _ in initial]
    items = [item for _, item in initial]
    swaps = re.findall(
        r"([A-Z][a-z]+) and ([A-Z][a-z]+) (?:swap|trade)", input_text)
    # permutation[i] = index of the party whose initial item party i ends
    # up holding
    perm = list(range(len(names)))
    for a, b in swaps:
        ia, ib = names.index(a), names.index(b)
        perm[ia], perm[ib] = perm[ib], perm[ia]
    query = re.search(
        r"At the end of the \w+, ([A-Z][a-z]+) has the", input_text)
    final_item = items[perm[names.index(query.group(1))]]
    for tag, text in re.findall(r"\(([A-Z])\) ([^\n(]+)", input_text):
        if text.strip() == final_item:
            return f"({tag})"
    raise ValueError(f"item {final_item!r} not among options")


# --- Web of lies: exhaustive search over truth assignments -------------------

def web_of_lies_answers(input_text: str) -> set[str]:
    """All answers consistent with some truth assignment (2^n search)."""
    text = input_text.strip()
    question = re.search(r"Does ([A-Z][a-z]*[a-z]?) tell the truth\?", text)
    sentences = [s.strip() for s in re.split(r"[.?]", text) if s.strip()]
    grounds: list[tuple[str, bool]] = []
    claims: list[tuple[str, str, bool]] = []
    people: list[str] = []
    for s in sentences:
        if s.startswith("Does "):
            continue
        m = re.fullmatch(r"(\S+) says (\S+) (tells the truth|lies)", s)
        if m:
            claims.append((m.group(1), m.group(2),
                           m.group(3) == "tells the truth"))
            for p in (m.group(1), m.group(2)):
                if p not in people:
                    people.append(p)
            continue
        m = re.fullmatch(r"(\S+) (tells the truth|lies)", s)
        if m:
            grounds.append((m.group(1), m.group(2) == "tells the truth"))
            if m.group(1) not in people:
                people.append(m.group(1))
            continue
        raise ValueError(f"unparsed sentence {s!r}")
    asked = question.group(1)
    answers: set[str] = set()
    for bits in itertools.product([True, False], repeat=len(people)):
        truth = dict(zip(people, bits))
        if any(truth[p] != v for p, v in grounds):
            continue
        if any(truth[a] != (truth[b] == claimed)
               for a, b, claimed in claims):
            continue
        answers.add("Yes" if truth[asked] else "No")
    return answers


# --- Temporal sequences: interval feasibility check --------------------------

_CLOCK = re.compile(r"(\d{1,2})(am|pm)")


def _minutes(token: str) -> int:
    m = _CLOCK.fullmatch(token)
    hour = int(m.group(1)) % 12
    if m.group(2) == "pm":
        hour += 12
    return hour * 60


def temporal_feasible_options(input_text: str) -> list[str]:
    """Option tags whose span lies inside the waking window and overlaps no
    sighting."""
    wake = _minutes(re.search(r"woke up at (\d{1,2}[ap]m)",
                              input_text).group(1))
    close = _minutes(re.search(r"closed after (\d{1,2}[ap]m)",
                               input_text).group(1))
    busy = [( _minutes(a), _minutes(b))
            for a, b in re.findall(
                r"from (\d{1,2}[ap]m) to (\d{1,2}[ap]m)", input_text)]
    feasible = []
    for tag, a, b in re.findall(
            r"\(([A-Z])\) (\d{1,2}[ap]m) to (\d{1,2}[ap]m)", input_text):
        start, end = _minutes(a), _minutes(b)
        if start < wake or end > close:
            continue
        if any(start < be and bs < end for bs, be in busy):
            continue
        feasible.append(f"({tag})")
    return feasible


# --- Geometric shapes: translation of a path string --------------------------

def translate_path(d: str, dx: float, dy: float) -> str:
    """Shift every coordinate pair in an M/L/A path by (dx, dy).  For arcs
    only the endpoint is a coordinate; radii/flags/rotation are untouched."""
    out: list[str] = []
    for letter, params in re.findall(r"([MLA])([^MLA]*)", d):
        nums = [float(x) for x in re.findall(r"-?\d+(?:\.\d+)?", params)]
        if letter in ("M", "L"):
            nums[0] += dx
            nums[1] += dy
        else:
            nums[5] += dx
            nums[6] += dy
        out.append(letter + " " + ",".join(f"{v:.2f}" for v in nums))
    return " ".join(out)
