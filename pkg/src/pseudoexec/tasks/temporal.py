"""Temporal sequences: find the free slot in a day's sighting schedule."""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import TaskInstance
from ..errors import AmbiguousFreeSlot, NoFreeSlot, ParseUnsupported

_WAKE = re.compile(r"woke up at (\d{1,2}(?:am|pm))")
_SIGHTING = re.compile(r"from (\d{1,2}(?:am|pm)) to (\d{1,2}(?:am|pm))")
_CLOSED = re.compile(r"closed after (\d{1,2}(?:am|pm))")
_SPAN = re.compile(r"^(\d{1,2}(?:am|pm)) to (\d{1,2}(?:am|pm))$")


@dataclass(frozen=True)
class Interval:
    """Half-open [start, end) in minutes since midnight."""

    start_minute: int
    end_minute: int

    def __post_init__(self):
        if not (0 <= self.start_minute < self.end_minute <= 1440):
            raise ValueError(f"bad interval: {self}")

    def overlaps(self, other: "Interval") -> bool:
        return self.start_minute < other.end_minute and other.start_minute < self.end_minute

    def within(self, other: "Interval") -> bool:
        return other.start_minute <= self.start_minute and self.end_minute <= other.end_minute


def parse_clock(text: str) -> int:
    """"10am" -> 600. Noon is 720, midnight 0."""
    m = re.match(r"^(\d{1,2})(am|pm)$", text)
    if not m:
        raise ParseUnsupported(f"bad clock time: {text!r}")
    hour = int(m.group(1))
    if not 1 <= hour <= 12:
        raise ParseUnsupported(f"bad clock hour: {text!r}")
    hour %= 12
    if m.group(2) == "pm":
        hour += 12
    return hour * 60


def parse_span(text: str) -> Interval:
    m = _SPAN.match(text.strip())
    if not m:
        raise ParseUnsupported(f"bad time span: {text!r}")
    return Interval(parse_clock(m.group(1)), parse_clock(m.group(2)))


def parse_schedule(input_text: str) -> tuple[Interval, list[Interval]]:
    """Return the open window [wake, close] and the occupied intervals."""
    body = input_text.split("Options:", 1)[0]
    wake = _WAKE.search(body)
    closed = _CLOSED.search(body)
    if not wake:
        raise ParseUnsupported("no wake-up statement found")
    if not closed:
        raise ParseUnsupported("no closing statement found")
    window = Interval(parse_clock(wake.group(1)), parse_clock(closed.group(1)))
    busy = [Interval(parse_clock(a), parse_clock(b))
            for a, b in _SIGHTING.findall(body)]
    return window, busy


def solve_temporal(instance: TaskInstance) -> str:
    """Return the tag of the unique option interval that is free."""
    window, busy = parse_schedule(instance.input_text)
    free = []
    for tag, text in instance.options:
        slot = parse_span(text)
        if slot.within(window) and not any(slot.overlaps(b) for b in busy):
            free.append(tag)
    if not free:
        raise NoFreeSlot("every option conflicts with the schedule")
    if len(free) > 1:
        raise AmbiguousFreeSlot(f"multiple free options: {free}")
    return free[0]
