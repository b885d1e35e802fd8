from collections import Counter

import pytest

import disordr.disord as D
from disordr.fuzz import (
    OPERATION_KINDS,
    FuzzProgram,
    check_invariance,
    gen_program,
    observe,
    run_campaign,
)
from disordr.interpreter import run_script
from disordr.lang import parse_script


def leaky_extract_int(d, indices):
    """A faulty build: single positions can be extracted."""
    idx = D._positions(indices)
    if len(idx) == 1:
        return D.Disord._derived([d.elements[idx[0]]], d.hash, d.kind)
    return ORIGINAL_EXTRACT(d, indices)


ORIGINAL_EXTRACT = D.extract_int


def test_generation_is_deterministic():
    assert gen_program(42) == gen_program(42)
    assert gen_program(42) != gen_program(43)


def test_programs_parse():
    for seed in range(200):
        program = gen_program(seed)
        assert len(parse_script(program.source)) == len(program.statements)


def test_coverage():
    counts = Counter()
    for seed in range(1000):
        counts.update(gen_program(seed).kinds)
    for kind in OPERATION_KINDS:
        assert counts[kind] >= 50, kind


def test_order_free_program_passes():
    program = FuzzProgram(0, (
        "a <- disord(9,4,7,1,2,6,3,8,5)",
        "sort(a)",
        "sum(a + 1/a)",
        "max(a^2)",
        'p <- mvp("x^2 + 4 - 3*x*y*z")',
        "p^2",
        "sort(coeffs(p))",
    ))
    assert check_invariance(program, 4).passed


def test_verdict_is_deterministic():
    assert check_invariance(gen_program(7), 2) == check_invariance(gen_program(7), 2)


def test_trials_must_be_at_least_two():
    with pytest.raises(ValueError):
        check_invariance(gen_program(0), 1)


def test_observation_classifier():
    result = run_script(
        "d <- disord(3,1,2)\n"
        "d\n"
        "sort(d)\n"
        "max(d)\n"
        'mvp("2 x + y")\n'
        "try(d[1])\n"
        "coeffs(mvp(\"x\"))\n"
    )
    obs = observe(result)
    assert [(o.line, o.kind, o.payload) for o in obs] == [
        (2, "disord", None),
        (3, "vector", "[1] 1 2 3"),
        (4, "scalar", "[1] 3"),
        (5, "mvp", "mvp object algebraically equal to\n2 x  +  y"),
        (6, "error", "bad-index"),
        (7, "disord", None),
        (-1, "status", "0"),
    ]


def test_campaign_passes():
    outcome = run_campaign(range(300), trials=4)
    assert outcome.passed and outcome.programs == 300


def test_parallel_campaign_agrees():
    outcome = run_campaign(range(1000, 1100), trials=3, jobs=2)
    assert outcome.passed and outcome.programs == 100


def test_broken_build_is_caught(monkeypatch):
    monkeypatch.setattr(D, "extract_int", leaky_extract_int)
    outcome = run_campaign(range(200), trials=4)
    assert not outcome.passed
    failure = outcome.failure
    assert failure.line is not None
    assert "[" in gen_program(failure.seed).statements[failure.line - 1]
