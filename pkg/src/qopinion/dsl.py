"""Line-oriented experiment-description language (``.qx`` files).

One directive per line; ``#`` starts a comment; names must be declared
before use.  Angles are radians; numeric tokens accept decimals,
pi-fractions like ``pi/4`` or ``3pi/8``, and a ``deg`` suffix on decimals.

    question NAME
    question NAME from NAME theta=FLOAT [phi=FLOAT]
    state NAME pure basis=NAME theta_a=FLOAT [phi_a=FLOAT]
    state NAME mixed basis=NAME p1=FLOAT
    population NAME = FLOAT*NAME [+ FLOAT*NAME ...]
    task fallacy state=NAME pair=NAME,NAME
    task sequence state=NAME order=NAME,NAME[,NAME...]
    task sweep pair=NAME,NAME theta=START:END:STEPS theta_a=START:END:STEPS [phi=FLOAT]
    task simulate population=NAME pair=NAME,NAME agents=INT seed=INT
    task underextension state=NAME pair=NAME,NAME
    task uncertainty pair=NAME,NAME steps=INT

Parsing collects every diagnostic in one pass instead of failing fast; on
any error no spec is produced.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import QOpinionError


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    message: str
    snippet: str

    def __str__(self) -> str:
        return f"line {self.line}, col {self.column}: {self.message}"


class ExperimentSyntaxError(QOpinionError):
    """Raised by :func:`parse` with the full list of collected errors."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("; ".join(str(e) for e in errors))


@dataclass(frozen=True)
class QuestionDecl:
    name: str
    base: str | None = None
    theta: float = 0.0
    phi: float = 0.0


@dataclass(frozen=True)
class PureStateDecl:
    name: str
    basis: str
    theta_a: float
    phi_a: float = 0.0


@dataclass(frozen=True)
class MixedStateDecl:
    name: str
    basis: str
    p1: float


@dataclass(frozen=True)
class PopulationDecl:
    name: str
    components: tuple[tuple[float, str], ...]


@dataclass(frozen=True)
class RangeDecl:
    start: float
    stop: float
    steps: int


@dataclass(frozen=True, eq=True)
class Task:
    kind: str
    args: tuple[tuple[str, object], ...]

    def arg(self, key: str):
        for k, v in self.args:
            if k == key:
                return v
        raise KeyError(key)


@dataclass(frozen=True)
class ExperimentSpec:
    questions: tuple[QuestionDecl, ...] = ()
    states: tuple[PureStateDecl | MixedStateDecl, ...] = ()
    populations: tuple[PopulationDecl, ...] = ()
    tasks: tuple[Task, ...] = ()


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_PI_RE = re.compile(r"^([+-]?)(\d+(?:\.\d+)?)?pi(?:/(\d+(?:\.\d+)?))?$")
_DEG_RE = re.compile(r"^([+-]?\d+(?:\.\d+)?)deg$")
_INT_RE = re.compile(r"^[+-]?\d+$")
_TOKEN_RE = re.compile(r"\S+")

# Required and optional key=value arguments per task kind.
_TASK_ARGS: dict[str, tuple[dict[str, str], dict[str, tuple[str, object]]]] = {
    "fallacy": ({"state": "state", "pair": "pair"}, {}),
    "sequence": ({"state": "state", "order": "order"}, {}),
    "sweep": (
        {"pair": "pair", "theta": "range", "theta_a": "range"},
        {"phi": ("float", 0.0)},
    ),
    "simulate": (
        {"population": "population", "pair": "pair", "agents": "int", "seed": "int"},
        {},
    ),
    "underextension": ({"state": "state", "pair": "pair"}, {}),
    "uncertainty": ({"pair": "pair", "steps": "int"}, {}),
}


class _LineErrors(QOpinionError):
    """Internal: abort the current directive after recording diagnostics."""


@dataclass
class _Parser:
    errors: list[ParseError] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.questions: list[QuestionDecl] = []
        self.states: list[PureStateDecl | MixedStateDecl] = []
        self.populations: list[PopulationDecl] = []
        self.tasks: list[Task] = []
        self._names: dict[str, set[str]] = {
            "question": set(),
            "state": set(),
            "population": set(),
        }

    def fail(self, line_no: int, col: int, message: str, snippet: str):
        self.errors.append(ParseError(line_no, col, message, snippet))
        raise _LineErrors()

    def parse_float(self, tok: str, line_no: int, col: int, snippet: str) -> float:
        m = _PI_RE.match(tok)
        if m:
            sign = -1.0 if m.group(1) == "-" else 1.0
            num = float(m.group(2)) if m.group(2) else 1.0
            den = float(m.group(3)) if m.group(3) else 1.0
            if den == 0.0:
                self.fail(line_no, col, f"division by zero in {tok!r}", snippet)
            return sign * num * math.pi / den
        m = _DEG_RE.match(tok)
        if m:
            return math.radians(float(m.group(1)))
        try:
            return float(tok)
        except ValueError:
            self.fail(line_no, col, f"malformed number {tok!r}", snippet)
            raise AssertionError  # unreachable

    def parse_int(self, tok: str, line_no: int, col: int, snippet: str) -> int:
        if not _INT_RE.match(tok):
            self.fail(line_no, col, f"malformed integer {tok!r}", snippet)
        return int(tok)

    def check_ref(self, kind: str, name: str, line_no: int, col: int, snippet: str):
        if name not in self._names[kind]:
            self.fail(line_no, col, f'unresolved reference "{name}"', snippet)

    def declare(self, kind: str, name: str, line_no: int, col: int, snippet: str):
        if not _NAME_RE.match(name):
            self.fail(line_no, col, f"invalid name {name!r}", snippet)
        if name in self._names[kind]:
            self.fail(line_no, col, f'duplicate {kind} name "{name}"', snippet)
        self._names[kind].add(name)

    # --- directives -----------------------------------------------------

    def parse_question(self, toks, line_no, snippet):
        if len(toks) not in (2, 5, 6) or (len(toks) > 2 and toks[2][0] != "from"):
            col = toks[min(2, len(toks) - 1)][1] if len(toks) > 1 else toks[0][1]
            self.fail(line_no, col, "expected: question NAME [from NAME theta=F [phi=F]]", snippet)
        name, name_col = toks[1]
        self.declare("question", name, line_no, name_col, snippet)
        if len(toks) == 2:
            self.questions.append(QuestionDecl(name))
            return
        base, base_col = toks[3]
        self.check_ref("question", base, line_no, base_col, snippet)
        kv = self.parse_kv(toks[4:], line_no, snippet, {"theta": "float"}, {"phi": ("float", 0.0)})
        self.questions.append(QuestionDecl(name, base, kv["theta"], kv["phi"]))

    def parse_state(self, toks, line_no, snippet):
        if len(toks) < 3 or toks[2][0] not in ("pure", "mixed"):
            col = toks[min(2, len(toks) - 1)][1]
            self.fail(line_no, col, "expected: state NAME pure|mixed ...", snippet)
        name, name_col = toks[1]
        self.declare("state", name, line_no, name_col, snippet)
        kind = toks[2][0]
        if kind == "pure":
            kv = self.parse_kv(
                toks[3:], line_no, snippet,
                {"basis": "question", "theta_a": "float"},
                {"phi_a": ("float", 0.0)},
            )
            self.states.append(
                PureStateDecl(name, kv["basis"], kv["theta_a"], kv["phi_a"])
            )
        else:
            kv = self.parse_kv(
                toks[3:], line_no, snippet,
                {"basis": "question", "p1": "float"}, {},
            )
            if not (0.0 <= kv["p1"] <= 1.0):
                self.fail(line_no, toks[3][1], f"p1 must lie in [0, 1], got {kv['p1']!r}", snippet)
            self.states.append(MixedStateDecl(name, kv["basis"], kv["p1"]))

    def parse_population(self, toks, line_no, snippet):
        if len(toks) < 4 or toks[2][0] != "=":
            col = toks[min(2, len(toks) - 1)][1]
            self.fail(line_no, col, "expected: population NAME = FLOAT*NAME [+ ...]", snippet)
        name, name_col = toks[1]
        self.declare("population", name, line_no, name_col, snippet)
        terms = toks[3:]
        components: list[tuple[float, str]] = []
        expect_term = True
        for tok, col in terms:
            if expect_term:
                if "*" not in tok:
                    self.fail(line_no, col, f"expected FLOAT*NAME, got {tok!r}", snippet)
                frac_tok, state_name = tok.split("*", 1)
                frac = self.parse_float(frac_tok, line_no, col, snippet)
                self.check_ref("state", state_name, line_no, col + len(frac_tok) + 1, snippet)
                components.append((frac, state_name))
                expect_term = False
            else:
                if tok != "+":
                    self.fail(line_no, col, f"expected '+', got {tok!r}", snippet)
                expect_term = True
        if expect_term:
            self.fail(line_no, terms[-1][1], "trailing '+' in population", snippet)
        total = sum(f for f, _ in components)
        if abs(total - 1.0) > 1e-9:
            self.fail(line_no, terms[0][1], f"fractions sum to {total!r}, expected 1", snippet)
        self.populations.append(PopulationDecl(name, tuple(components)))

    def parse_task(self, toks, line_no, snippet):
        if len(toks) < 2:
            self.fail(line_no, toks[0][1], "expected: task KIND key=value ...", snippet)
        kind, kind_col = toks[1]
        if kind not in _TASK_ARGS:
            self.fail(line_no, kind_col, f"unknown task kind {kind!r}", snippet)
        required, optional = _TASK_ARGS[kind]
        kv = self.parse_kv(toks[2:], line_no, snippet, required, optional)
        # Canonical argument order: required keys first, then optionals.
        ordered = tuple(
            (k, kv[k]) for k in list(required) + list(optional)
        )
        self.tasks.append(Task(kind, ordered))

    # --- key=value machinery --------------------------------------------

    def parse_kv(self, toks, line_no, snippet, required, optional):
        values: dict[str, object] = {}
        for tok, col in toks:
            if "=" not in tok:
                self.fail(line_no, col, f"expected key=value, got {tok!r}", snippet)
            key, raw = tok.split("=", 1)
            if key in required:
                vtype = required[key]
            elif key in optional:
                vtype = optional[key][0]
            else:
                self.fail(line_no, col, f"unknown argument {key!r}", snippet)
            if key in values:
                self.fail(line_no, col, f"duplicate argument {key!r}", snippet)
            vcol = col + len(key) + 1
            values[key] = self.parse_value(vtype, raw, line_no, vcol, snippet)
        for key in required:
            if key not in values:
                self.fail(
                    line_no, toks[0][1] if toks else 1,
                    f"missing required argument {key!r}", snippet,
                )
        for key, (_, default) in optional.items():
            values.setdefault(key, default)
        return values

    def parse_value(self, vtype, raw, line_no, col, snippet):
        if vtype == "float":
            return self.parse_float(raw, line_no, col, snippet)
        if vtype == "int":
            return self.parse_int(raw, line_no, col, snippet)
        if vtype in ("question", "state", "population"):
            self.check_ref(vtype, raw, line_no, col, snippet)
            return raw
        if vtype == "pair":
            parts = raw.split(",")
            if len(parts) != 2:
                self.fail(line_no, col, f"expected NAME,NAME, got {raw!r}", snippet)
            for part in parts:
                self.check_ref("question", part, line_no, col, snippet)
            return tuple(parts)
        if vtype == "order":
            parts = raw.split(",")
            if len(parts) < 2:
                self.fail(line_no, col, f"expected at least two names, got {raw!r}", snippet)
            for part in parts:
                self.check_ref("question", part, line_no, col, snippet)
            return tuple(parts)
        if vtype == "range":
            parts = raw.split(":")
            if len(parts) != 3:
                self.fail(line_no, col, f"expected START:END:STEPS, got {raw!r}", snippet)
            start = self.parse_float(parts[0], line_no, col, snippet)
            stop = self.parse_float(parts[1], line_no, col, snippet)
            steps = self.parse_int(parts[2], line_no, col, snippet)
            if steps < 2:
                self.fail(line_no, col, f"range needs at least 2 steps, got {steps}", snippet)
            return RangeDecl(start, stop, steps)
        raise AssertionError(f"unhandled value type {vtype!r}")


def parse(text: str) -> ExperimentSpec:
    """Parse a ``.qx`` document; raises :class:`ExperimentSyntaxError` with
    every collected diagnostic when the document is invalid."""
    p = _Parser()
    directives = {
        "question": p.parse_question,
        "state": p.parse_state,
        "population": p.parse_population,
        "task": p.parse_task,
    }
    for line_no, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        toks = [(m.group(0), m.start() + 1) for m in _TOKEN_RE.finditer(body)]
        if not toks:
            continue
        head, head_col = toks[0]
        handler = directives.get(head)
        try:
            if handler is None:
                p.fail(line_no, head_col, f"unknown directive {head!r}", line)
            else:
                handler(toks, line_no, line)
        except _LineErrors:
            continue
    if p.errors:
        raise ExperimentSyntaxError(p.errors)
    return ExperimentSpec(
        questions=tuple(p.questions),
        states=tuple(p.states),
        populations=tuple(p.populations),
        tasks=tuple(p.tasks),
    )


def _fmt(value: object) -> str:
    if isinstance(value, RangeDecl):
        return f"{value.start!r}:{value.stop!r}:{value.steps}"
    if isinstance(value, tuple):
        return ",".join(value)
    if isinstance(value, bool):
        raise AssertionError("no boolean task arguments")
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render(spec: ExperimentSpec) -> str:
    """Canonical text form; ``parse(render(spec))`` equals ``spec``.

    Floats are printed with full precision so a round trip is exact.
    """
    lines: list[str] = []
    for q in spec.questions:
        if q.base is None:
            lines.append(f"question {q.name}")
        else:
            lines.append(
                f"question {q.name} from {q.base} theta={q.theta!r} phi={q.phi!r}"
            )
    for st in spec.states:
        if isinstance(st, PureStateDecl):
            lines.append(
                f"state {st.name} pure basis={st.basis} "
                f"theta_a={st.theta_a!r} phi_a={st.phi_a!r}"
            )
        else:
            lines.append(f"state {st.name} mixed basis={st.basis} p1={st.p1!r}")
    for pop in spec.populations:
        terms = " + ".join(f"{frac!r}*{name}" for frac, name in pop.components)
        lines.append(f"population {pop.name} = {terms}")
    for task in spec.tasks:
        args = " ".join(f"{k}={_fmt(v)}" for k, v in task.args)
        lines.append(f"task {task.kind} {args}")
    return "\n".join(lines) + ("\n" if lines else "")
