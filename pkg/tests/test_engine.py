"""Execute-engine tests: template instantiation, marker extraction,
run_instance failure handling."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoexec.baselines import MethodId
from pseudoexec.engine import (Prediction, build_execute_prompt,
                               extract_final_answer, run_instance)
from pseudoexec.errors import MissingAsset, NoFinalAnswer
from pseudoexec.gateway import MockGateway
from pseudoexec.prompts import PromptAsset, load_pseudocode
from pseudoexec.tasks import TaskId, make_instance
from pseudoexec.tasks.generate import generate_instance


def _dyck_instance():
    return make_instance(
        TaskId.DYCK_LANGUAGES,
        "Complete the rest of the sequence, making sure that the "
        "parentheses are closed properly. Input: ( { { } }",
        ")")


def test_execute_prompt_layout():
    asset = load_pseudocode(TaskId.DYCK_LANGUAGES)
    system, user = build_execute_prompt(asset, _dyck_instance())
    assert system == ("Generate the expected outputs (from all print() "
                      "functions) of the code.")
    assert user.startswith(asset.body)
    assert "final_answer = complete_dyck_languages(input_text)" in user
    assert 'print("Final answer:"+ final_answer)' in user
    assert user.endswith(
        "Generate the expected execution output (output from all print() "
        "functions) of the code. You don't have to actually run the code "
        "and do not care about 'not implemented error'.")


def test_execute_prompt_escapes_double_quotes():
    asset = load_pseudocode(TaskId.WEB_OF_LIES)
    inst = make_instance(
        TaskId.WEB_OF_LIES,
        'Quoted "Vina" tells the truth. Does Vina tell the truth?'
        .replace("Quoted ", ""),
        "Yes")
    text = 'Says "hi". ' + inst.input_text
    inst2 = make_instance(TaskId.WEB_OF_LIES, text, "Yes")
    _, user = build_execute_prompt(asset, inst2)
    assert 'input_text = "Says \\"hi\\". ' in user
    # unescape round-trips to the original text
    embedded = user.split('input_text = "', 1)[1].split(
        '"\nfinal_answer', 1)[0]
    assert embedded.replace('\\"', '"') == text


def test_extract_last_marker():
    assert extract_final_answer(
        "Final answer: Yes\nmore\nFinal answer: (F) octagon") == \
        "(F) octagon"
    assert extract_final_answer("Final answer:No") == "No"
    assert extract_final_answer("Final answer:  spaced  ") == "spaced"


def test_extract_missing_marker():
    with pytest.raises(NoFinalAnswer):
        extract_final_answer("no marker here")
    with pytest.raises(NoFinalAnswer):
        extract_final_answer("final answer: lowercase is not the marker")


@settings(max_examples=300)
@given(prefix=st.text(max_size=80).filter(lambda s: "Final answer:" not in s),
       answer=st.text(alphabet=st.characters(exclude_characters="\n",
                                             exclude_categories=("C",)),
                      max_size=40))
def test_extract_single_marker_property(prefix, answer):
    transcript = prefix + "\nFinal answer: " + answer
    assert extract_final_answer(transcript) == answer.strip()


def test_prediction_invariant():
    with pytest.raises(ValueError):
        Prediction(transcript="", outputs=(), final_answer="x",
                   failure="also set")
    with pytest.raises(ValueError):
        Prediction(transcript="", outputs=(), final_answer=None)


def test_run_instance_think_and_execute_mock():
    inst = generate_instance(TaskId.NAVIGATE, 3, 4)
    gateway = MockGateway(responders={
        "reasoner": lambda r: "step\nFinal answer: Yes"})
    pred = run_instance(MethodId.THINK_AND_EXECUTE, inst,
                        {"pseudocode": load_pseudocode(TaskId.NAVIGATE)},
                        gateway)
    assert pred.final_answer == "Yes"
    assert len(pred.outputs) >= 1


def test_run_instance_records_missing_marker_as_failure():
    inst = generate_instance(TaskId.NAVIGATE, 3, 4)
    gateway = MockGateway(responders={"reasoner": lambda r: "no marker"})
    pred = run_instance(MethodId.THINK_AND_EXECUTE, inst,
                        {"pseudocode": load_pseudocode(TaskId.NAVIGATE)},
                        gateway)
    assert pred.final_answer is None
    assert pred.failure == "no_final_answer"


def test_run_instance_records_gateway_failure():
    inst = generate_instance(TaskId.NAVIGATE, 3, 4)
    pred = run_instance(MethodId.THINK_AND_EXECUTE, inst,
                        {"pseudocode": load_pseudocode(TaskId.NAVIGATE)},
                        MockGateway())
    assert pred.failure is not None
    assert pred.failure.startswith("gateway_error")


def test_run_instance_missing_asset_raises():
    inst = generate_instance(TaskId.NAVIGATE, 3, 4)
    with pytest.raises(MissingAsset):
        run_instance(MethodId.THINK_AND_EXECUTE, inst, {}, MockGateway())


def test_run_instance_direct_lowercase_answer():
    inst = make_instance(
        TaskId.NAVIGATE,
        "If you follow these instructions, do you return to the starting "
        "point? Take 3 steps. Turn around. Take 5 steps. Turn right. "
        "Turn right. Take 1 step. Take 1 step.",
        "Yes")
    gateway = MockGateway(responders={
        "reasoner": lambda r: "Final answer: no"})
    pred = run_instance(MethodId.DIRECT, inst, {}, gateway)
    assert pred.final_answer == "no"


def test_run_instance_deterministic_under_mock():
    from pseudoexec.gateway import oracle_responder

    inst = generate_instance(TaskId.WEB_OF_LIES, 5, 5)
    gateway = MockGateway(responders={"reasoner": oracle_responder(0.3)})
    assets = {"pseudocode": load_pseudocode(TaskId.WEB_OF_LIES)}
    a = run_instance(MethodId.THINK_AND_EXECUTE, inst, assets, gateway)
    b = run_instance(MethodId.THINK_AND_EXECUTE, inst, assets, gateway)
    assert a == b
