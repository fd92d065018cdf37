import pytest
from hypothesis import given

from bmwdn.words import (
    ElementaryStep,
    ParseError,
    Word,
    apply_step,
    code_height,
    enumerate_steps,
    invert_trace,
    op_code,
    op_trace,
    parse_word,
    replay,
    rule_table,
)

from strategies import codes


def W(text):
    return parse_word(text, 4)


def test_parse():
    assert W("e2 r3 e2").code == "bCb"
    assert W("r1 r1 d^2").delta_exp == 2
    assert W("1") == Word((), 0)
    assert W("e1 * d").delta_exp == 1
    for bad in ("x3", "r0", "r5", "e"):
        with pytest.raises(ParseError):
            W(bad)


def test_str_round_trip():
    w = W("r1 e3 r4 d^-2")
    assert parse_word(str(w), 4) == w


def _targets(text, rule, direction):
    return [
        (str(w2), w2.delta_exp)
        for st, w2 in enumerate_steps(W(text), 4)
        if st.rule == rule and st.direction == direction
    ]


def test_enumerate_steps():
    assert ("e2", 0) in _targets("e2 r3 e2", "RNere", "forward")
    assert ("e2 e3 e2", 0) in _targets("e2", "HNeee", "backward")
    assert enumerate_steps(Word((), 0), 4) == []


def test_apply_step():
    assert apply_step(W("e4 e4"), ElementaryStep("HSee", 0, "forward", (4,)), 4) == W("e4 d")
    assert apply_step(W("r1 r2"), ElementaryStep("HCrr", 0, "forward", (1, 2)), 4) == W("r2 r1")
    assert apply_step(W("r3 r3"), ElementaryStep("RSrr", 0, "forward", (3,)), 4) == Word((), 0)


def test_rules_do_not_raise_height():
    for lhs, moves in rule_table(5).by_lhs.items():
        for mv in moves:
            assert code_height(mv.rhs) <= code_height(lhs)
            if mv.rule.startswith("H"):
                assert code_height(mv.rhs) == code_height(lhs)


def _walk(code, k):
    table = rule_table(4)
    steps = []
    for _ in range(k):
        nb = list(table.neighbors(code))
        if not nb:
            break
        p, ln, mv, code = nb[(len(code) * 7 + len(steps)) % len(nb)]
        steps.append(ElementaryStep(mv.rule, p, mv.direction, mv.bindings))
    return steps


@given(codes(4, 8))
def test_op_trace_mirrors(code):
    steps = _walk(code, 4)
    end, d = replay(code, 0, steps, 4)
    end2, d2 = replay(op_code(code), 0, op_trace(code, steps, 4), 4)
    assert (end2, d2) == (op_code(end), d)


@given(codes(4, 8))
def test_invert_homogeneous_trace(code):
    steps = [s for s in _walk(code, 4)]
    hsteps = []
    cur = code
    for s in steps:
        if s.rule.startswith("R"):
            break
        hsteps.append(s)
        cur, _ = rule_table(4).apply(cur, s)
    end, d = replay(code, 0, hsteps, 4)
    back, d2 = replay(end, d, invert_trace(code, hsteps, 4), 4)
    assert (back, d2) == (code, 0)
