"""Dyck-4 completion: predict the closing brackets missing at the end."""

from __future__ import annotations

from ..errors import ParseUnsupported, UnbalancedInput

PAIRS = {"(": ")", "[": "]", "{": "}", "<": ">"}
CLOSERS = {v: k for k, v in PAIRS.items()}


def extract_sequence(input_text: str) -> list[str]:
    """Pull the whitespace-separated bracket sequence out of the question text.

    BBH phrasing puts the sequence after an ``Input:`` marker; bare bracket
    sequences are accepted too.
    """
    text = input_text.rsplit("Input:", 1)[1] if "Input:" in input_text else input_text
    chars = text.split()
    if not chars:
        raise ParseUnsupported("no bracket sequence found")
    for ch in chars:
        if ch not in PAIRS and ch not in CLOSERS:
            raise ParseUnsupported(f"not a bracket: {ch!r}")
    return chars


def solve_dyck(input_text: str) -> str:
    """Return the shortest closing sequence that balances the input.

    The result is space-separated; an already balanced input yields "".
    """
    stack = []
    for ch in extract_sequence(input_text):
        if ch in PAIRS:
            stack.append(ch)
        else:
            if not stack:
                raise UnbalancedInput(f"{ch!r} with empty stack")
            if PAIRS[stack[-1]] != ch:
                raise UnbalancedInput(f"{ch!r} does not match open {stack[-1]!r}")
            stack.pop()
    return " ".join(PAIRS[ch] for ch in reversed(stack))
