"""Line-oriented model files.

::

    # comment
    vars N
    clause (W|hard) L1 L2 ...        Li = +v or -v, variables 1-based
    factor K v1 .. vK t0 .. tK       log-weight per number of true variables
    evidence true
    evidence card (eq|le|ge) B v1 .. vn

``vars`` must come before any line that references variables; at most one
``evidence`` line is allowed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from app.domain.constants import HARD
from app.domain.enums import Comparator, EvidenceKind
from app.domain.exceptions import ModelStructureError
from app.domain.models import ClauseLiteral, EvidencePredicate, Model, SymFactor, WeightedClause


class ModelParseError(ModelStructureError):
    """Malformed model text; ``line`` and ``column`` are 1-based."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class _Token:
    text: str
    column: int


def _tokenize(raw: str) -> list[_Token]:
    body = raw.split("#", 1)[0]
    tokens: list[_Token] = []
    pos = 0
    for part in body.split():
        pos = body.index(part, pos)
        tokens.append(_Token(part, pos + 1))
        pos += len(part)
    return tokens


class _LineParser:
    def __init__(self, lineno: int, tokens: list[_Token], num_vars: int | None):
        self.lineno = lineno
        self.tokens = tokens
        self.num_vars = num_vars

    def fail(self, token: _Token | None, message: str) -> ModelParseError:
        column = token.column if token else (self.tokens[-1].column if self.tokens else 1)
        return ModelParseError(self.lineno, column, message)

    def integer(self, token: _Token, what: str) -> int:
        try:
            return int(token.text)
        except ValueError:
            raise self.fail(token, f"expected integer {what}, got {token.text!r}") from None

    def real(self, token: _Token, what: str) -> float:
        try:
            value = float(token.text)
        except ValueError:
            raise self.fail(token, f"expected number {what}, got {token.text!r}") from None
        if not math.isfinite(value):
            raise self.fail(token, f"{what} must be finite")
        return value

    def variable(self, token: _Token) -> int:
        value = self.integer(token, "variable")
        if self.num_vars is None:
            raise self.fail(token, "'vars' must be declared before variables are used")
        if not 1 <= value <= self.num_vars:
            raise self.fail(token, f"variable {value} out of range 1..{self.num_vars}")
        return value - 1

    def distinct(self, tokens: list[_Token], values: list[int], what: str) -> None:
        seen: set[int] = set()
        for token, value in zip(tokens, values):
            if value in seen:
                raise self.fail(token, f"duplicate variable {value + 1} in {what}")
            seen.add(value)

    def clause(self) -> WeightedClause:
        if len(self.tokens) < 3:
            raise self.fail(None, "clause needs a weight and at least one literal")
        weight_token, lit_tokens = self.tokens[1], self.tokens[2:]
        weight = HARD if weight_token.text == HARD else self.real(weight_token, "clause weight")
        signed_values = []
        for token in lit_tokens:
            signed = self.integer(token, "literal")
            if signed == 0:
                raise self.fail(token, "literal 0 is not allowed")
            signed_values.append(signed)
        self.distinct(lit_tokens, [abs(s) - 1 for s in signed_values], "clause")
        literals = tuple(
            ClauseLiteral(
                var=self.variable(_Token(str(abs(signed)), token.column)),
                positive=signed > 0,
            )
            for token, signed in zip(lit_tokens, signed_values)
        )
        return WeightedClause(weight=weight, literals=literals)

    def factor(self) -> SymFactor:
        if len(self.tokens) < 2:
            raise self.fail(None, "factor needs an arity")
        arity = self.integer(self.tokens[1], "arity")
        if arity < 1:
            raise self.fail(self.tokens[1], "factor arity must be >= 1")
        expected = 2 + arity + arity + 1
        if len(self.tokens) != expected:
            raise self.fail(
                None,
                f"factor of arity {arity} needs {arity} variables"
                f" and {arity + 1} table entries",
            )
        var_tokens = self.tokens[2 : 2 + arity]
        scope = [self.variable(token) for token in var_tokens]
        self.distinct(var_tokens, scope, "factor")
        table = tuple(self.real(token, "table entry") for token in self.tokens[2 + arity :])
        return SymFactor(scope=tuple(scope), count_table=table)

    def evidence(self) -> EvidencePredicate:
        if len(self.tokens) < 2:
            raise self.fail(None, "evidence needs 'true' or 'card'")
        kind = self.tokens[1]
        if kind.text == EvidenceKind.TRUE.value:
            if len(self.tokens) != 2:
                raise self.fail(self.tokens[2], "unexpected token after 'evidence true'")
            return EvidencePredicate.always()
        if kind.text != EvidenceKind.CARDINALITY.value:
            raise self.fail(kind, f"unknown evidence kind {kind.text!r}")
        if len(self.tokens) < 4:
            raise self.fail(None, "card evidence needs a comparator and a bound")
        try:
            comparator = Comparator(self.tokens[2].text)
        except ValueError:
            raise self.fail(self.tokens[2], f"unknown comparator {self.tokens[2].text!r}") from None
        bound = self.integer(self.tokens[3], "bound")
        var_tokens = self.tokens[4:]
        subset = [self.variable(token) for token in var_tokens]
        self.distinct(var_tokens, subset, "evidence")
        if not 0 <= bound <= len(subset):
            raise self.fail(self.tokens[3], f"bound {bound} outside [0, {len(subset)}]")
        return EvidencePredicate.cardinality(subset, comparator, bound)


def parse_model(text: str) -> Model:
    num_vars: int | None = None
    clauses: list[WeightedClause] = []
    factors: list[SymFactor] = []
    evidence: EvidencePredicate | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw)
        if not tokens:
            continue
        parser = _LineParser(lineno, tokens, num_vars)
        head = tokens[0]
        if head.text == "vars":
            if num_vars is not None:
                raise parser.fail(head, "'vars' declared twice")
            if len(tokens) != 2:
                raise parser.fail(None, "'vars' takes exactly one integer")
            num_vars = parser.integer(tokens[1], "variable count")
            if num_vars < 1:
                raise parser.fail(tokens[1], "a model needs at least one variable")
        elif head.text == "clause":
            clauses.append(parser.clause())
        elif head.text == "factor":
            factors.append(parser.factor())
        elif head.text == "evidence":
            if evidence is not None:
                raise parser.fail(head, "evidence declared twice")
            evidence = parser.evidence()
        else:
            raise parser.fail(head, f"unknown directive {head.text!r}")
    if num_vars is None:
        raise ModelParseError(1, 1, "missing 'vars' declaration")
    return Model(
        num_vars=num_vars,
        clauses=tuple(clauses),
        factors=tuple(factors),
        evidence=evidence or EvidencePredicate.always(),
    )


def parse_evidence(text: str, num_vars: int) -> EvidencePredicate:
    """Parse the body of an ``evidence`` line, e.g. ``card ge 1 1 2 3``."""
    tokens = [_Token("evidence", 0), *_tokenize(text)]
    return _LineParser(1, tokens, num_vars).evidence()


def _number(value: float) -> str:
    return repr(float(value))


def serialize_model(m: Model) -> str:
    lines = [f"vars {m.num_vars}"]
    for clause in m.clauses:
        weight = HARD if clause.is_hard else _number(clause.weight)
        literals = " ".join(
            str(lit.var + 1) if lit.positive else str(-(lit.var + 1)) for lit in clause.literals
        )
        lines.append(f"clause {weight} {literals}")
    for factor in m.factors:
        scope = " ".join(str(v + 1) for v in factor.scope)
        table = " ".join(_number(v) for v in factor.count_table)
        lines.append(f"factor {factor.arity} {scope} {table}")
    if m.evidence.kind == EvidenceKind.TRUE:
        lines.append("evidence true")
    else:
        subset = " ".join(str(v + 1) for v in m.evidence.subset)
        lines.append(
            f"evidence card {m.evidence.comparator.value} {m.evidence.bound} {subset}".rstrip()
        )
    return "\n".join(lines) + "\n"


def load_model(path: str | Path) -> Model:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def save_model(m: Model, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_model(m), encoding="utf-8")
    return path


__all__ = [
    "ModelParseError",
    "load_model",
    "parse_evidence",
    "parse_model",
    "save_model",
    "serialize_model",
]
