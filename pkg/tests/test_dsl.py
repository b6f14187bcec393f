import math
from pathlib import Path

import pytest

from qopinion import dsl
from qopinion.dsl import (
    ExperimentSyntaxError,
    MixedStateDecl,
    ParseError,
    PureStateDecl,
    RangeDecl,
    parse,
    render,
)

GOLDEN = sorted(Path(__file__).parent.joinpath("golden").glob("*.qx"))


def test_golden_corpus_exists():
    assert len(GOLDEN) >= 10


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.name)
def test_round_trip_fixed_point(path):
    spec = parse(path.read_text())
    text = render(spec)
    again = parse(text)
    assert again == spec
    assert render(again) == text


def test_parse_basic_document():
    spec = parse(
        "question a\n"
        "question b from a theta=pi/4 phi=0.5\n"
        "state s pure basis=a theta_a=45deg\n"
        "state m mixed basis=b p1=0.25\n"
        "population p = 0.6*s + 0.4*m\n"
        "task fallacy state=s pair=a,b\n"
    )
    assert [q.name for q in spec.questions] == ["a", "b"]
    assert spec.questions[1].theta == pytest.approx(math.pi / 4)
    assert spec.questions[1].phi == 0.5
    s = spec.states[0]
    assert isinstance(s, PureStateDecl)
    assert s.theta_a == pytest.approx(math.pi / 4)
    assert s.phi_a == 0.0
    assert isinstance(spec.states[1], MixedStateDecl)
    assert spec.populations[0].components == ((0.6, "s"), (0.4, "m"))
    assert spec.tasks[0].kind == "fallacy"
    assert spec.tasks[0].arg("pair") == ("a", "b")


def test_numeric_forms():
    spec = parse(
        "question a\n"
        "question b from a theta=3pi/8\n"
        "question c from a theta=-pi\n"
        "question d from a theta=-90deg\n"
        "question e from a theta=1.5e-3\n"
    )
    thetas = [q.theta for q in spec.questions[1:]]
    assert thetas[0] == pytest.approx(3 * math.pi / 8)
    assert thetas[1] == pytest.approx(-math.pi)
    assert thetas[2] == pytest.approx(-math.pi / 2)
    assert thetas[3] == pytest.approx(1.5e-3)


def test_range_argument():
    spec = parse(
        "question a\nquestion b from a theta=0.2\n"
        "task sweep pair=a,b theta=0.1:pi:5 theta_a=0:1:3\n"
    )
    rng = spec.tasks[0].arg("theta")
    assert rng == RangeDecl(0.1, math.pi, 5)
    assert spec.tasks[0].arg("phi") == 0.0


def test_comments_and_blank_lines_ignored():
    spec = parse("\n# header\nquestion a  # trailing\n\n")
    assert len(spec.questions) == 1


def test_all_errors_collected_in_one_pass():
    bad = (
        "question a\n"
        "question a\n"            # duplicate name
        "state s pure basis=zz theta_a=0.1\n"  # unresolved basis
        "task fallacy state=s\n"  # missing pair
        "wibble 3\n"              # unknown directive
    )
    with pytest.raises(ExperimentSyntaxError) as exc:
        parse(bad)
    lines = sorted(e.line for e in exc.value.errors)
    assert lines == [2, 3, 4, 5]


def test_error_columns_point_at_offending_token():
    with pytest.raises(ExperimentSyntaxError) as exc:
        parse("question a\nquestion b from a theta=oops\n")
    (err,) = exc.value.errors
    assert err.line == 2
    # Column points at the value, just past "theta=".
    assert err.column == len("question b from a theta=") + 1
    assert "oops" in err.message
    assert str(err).startswith("line 2, col ")


def test_population_fraction_sum_checked():
    base = "question a\nstate s pure basis=a theta_a=0.1\n"
    with pytest.raises(ExperimentSyntaxError) as exc:
        parse(base + "population p = 0.6*s + 0.6*s2\n")
    assert any("unresolved" in e.message for e in exc.value.errors)
    with pytest.raises(ExperimentSyntaxError) as exc:
        parse(base + "population p = 0.6*s + 0.6*s\n")
    assert any("sum" in e.message for e in exc.value.errors)
    with pytest.raises(ExperimentSyntaxError) as exc:
        parse(base + "population p = 1.0*s +\n")
    assert any("trailing" in e.message for e in exc.value.errors)


def test_task_argument_validation():
    base = "question a\nquestion b from a theta=0.2\n"
    with pytest.raises(ExperimentSyntaxError):
        parse(base + "task sweep pair=a,b theta=0:1:1 theta_a=0:1:4\n")
    with pytest.raises(ExperimentSyntaxError):
        parse(base + "task juggle pair=a,b\n")
    with pytest.raises(ExperimentSyntaxError):
        parse(base + "task uncertainty pair=a,b steps=2.5\n")
    with pytest.raises(ExperimentSyntaxError):
        parse(base + "task uncertainty pair=a,b steps=8 steps=9\n")


def test_mixed_state_p1_bounds():
    with pytest.raises(ExperimentSyntaxError):
        parse("question a\nstate m mixed basis=a p1=1.5\n")


def test_declaration_before_use():
    with pytest.raises(ExperimentSyntaxError) as exc:
        parse("task fallacy state=s pair=a,b\nquestion a\n")
    assert exc.value.errors[0].line == 1


def _mutate_each_line(text):
    """Yield (line_no, mutated_text) appending one stray token per directive."""
    lines = text.splitlines()
    for idx, line in enumerate(lines):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        mutated = lines.copy()
        mutated[idx] = line.split("#", 1)[0].rstrip() + " ~stray~"
        yield idx + 1, "\n".join(mutated) + "\n"


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.name)
def test_injected_errors_report_correct_line(path):
    text = path.read_text()
    cases = list(_mutate_each_line(text))
    assert cases
    for line_no, mutated in cases:
        with pytest.raises(ExperimentSyntaxError) as exc:
            dsl.parse(mutated)
        assert any(e.line == line_no for e in exc.value.errors), (
            path.name,
            line_no,
            exc.value.errors,
        )


def test_parse_error_is_frozen_value():
    err = ParseError(3, 7, "boom", "snippet")
    assert str(err) == "line 3, col 7: boom"
