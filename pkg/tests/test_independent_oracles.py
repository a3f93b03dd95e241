"""Cross-checks of the package solvers against structurally different
re-implementations (see oracles.py).  The full 1,000-case sweeps live in the
acceptance suite; these are fast spot checks."""

from __future__ import annotations

from oracles import (dyck_completion_valid, navigate_answer, shuffled_answer,
                     temporal_feasible_options, translate_path,
                     web_of_lies_answers)
from pseudoexec.tasks import TaskId, make_instance, solve
from pseudoexec.tasks.generate import generate_instance
from pseudoexec.tasks.geometric import classify_path, parse_path

N = 100


def _cases(task: TaskId, n: int = N):
    for seed in range(n):
        yield generate_instance(task, 10_000 + seed, (seed % 10) + 1)


def test_dyck_balance_and_minimality():
    for inst in _cases(TaskId.DYCK_LANGUAGES):
        answer = solve(TaskId.DYCK_LANGUAGES, inst)
        assert dyck_completion_valid(inst.input_text, answer)


def test_navigate_displacement_accumulator():
    for inst in _cases(TaskId.NAVIGATE):
        assert solve(TaskId.NAVIGATE, inst) == \
            navigate_answer(inst.input_text)


def test_shuffled_permutation_composition():
    for inst in _cases(TaskId.SHUFFLED_OBJECTS):
        assert solve(TaskId.SHUFFLED_OBJECTS, inst) == \
            shuffled_answer(inst.input_text)


def test_web_of_lies_exhaustive_search():
    for inst in _cases(TaskId.WEB_OF_LIES):
        answers = web_of_lies_answers(inst.input_text)
        assert answers == {solve(TaskId.WEB_OF_LIES, inst)}


def test_temporal_unique_feasible_slot():
    for inst in _cases(TaskId.TEMPORAL_SEQUENCES):
        feasible = temporal_feasible_options(inst.input_text)
        assert feasible == [solve(TaskId.TEMPORAL_SEQUENCES, inst)]


def test_geometric_translation_invariance():
    for inst in _cases(TaskId.GEOMETRIC_SHAPES):
        import re

        d = re.search(r'd="([^"]+)"', inst.input_text).group(1)
        moved = translate_path(d, 13.37, -7.25)
        assert classify_path(parse_path(moved)) == \
            classify_path(parse_path(d))
