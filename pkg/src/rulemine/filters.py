"""Tiny filter-expression language over rule sets.

Grammar (conjunctions only):

    expr    := clause ("and" clause)*
    clause  := COLUMN OP NUMBER          e.g.  lift >= 2.5
             | "lhs" "~" 'substring'     substring of the rendered LHS label
             | "rhs" "~" 'substring'
    OP      := < | <= | > | >= | ==

Parse errors carry the character position of the offending token.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .assoc import Rules

__all__ = ["FilterError", "parse_filter", "rule_mask"]

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>-?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<op><=|>=|==|<|>)
  | (?P<tilde>~)
  | (?P<str>'[^']*')
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)


class FilterError(ValueError):
    """Bad filter expression; `position` is the zero-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Comparison:
    column: str
    op: str
    value: float


@dataclass(frozen=True)
class LabelContains:
    side: str  # lhs | rhs
    needle: str


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FilterError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return out


def parse_filter(text: str) -> list:
    """Parse into a list of clauses (conjunction)."""
    tokens = _tokenize(text)
    if not tokens:
        raise FilterError("empty filter expression", 0)
    clauses = []
    i = 0
    while True:
        if i >= len(tokens):
            raise FilterError("expected a clause", len(text))
        kind, value, pos = tokens[i]
        if kind != "ident":
            raise FilterError(f"expected a column name, found {value!r}", pos)
        name = value
        i += 1
        if i >= len(tokens):
            raise FilterError("expected a comparison operator", len(text))
        kind, value, pos = tokens[i]
        if kind == "tilde":
            if name not in ("lhs", "rhs"):
                raise FilterError("label containment applies to lhs or rhs only", pos)
            i += 1
            if i >= len(tokens) or tokens[i][0] != "str":
                raise FilterError("expected a quoted substring",
                                  tokens[i][2] if i < len(tokens) else len(text))
            clauses.append(LabelContains(name, tokens[i][1][1:-1]))
            i += 1
        elif kind == "op":
            op = value
            i += 1
            if i >= len(tokens) or tokens[i][0] != "num":
                raise FilterError("expected a number",
                                  tokens[i][2] if i < len(tokens) else len(text))
            clauses.append(Comparison(name, op, float(tokens[i][1])))
            i += 1
        else:
            raise FilterError(f"expected an operator, found {value!r}", pos)
        if i == len(tokens):
            return clauses
        kind, value, pos = tokens[i]
        if kind == "ident" and value.lower() == "and":
            i += 1
            continue
        raise FilterError(f"expected 'and', found {value!r}", pos)


_OPS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
}


def rule_mask(rules: Rules, clauses: list) -> list[bool]:
    """Evaluate a parsed conjunction to a row mask."""
    mask = [True] * len(rules)
    lhs_labels = rhs_labels = None
    for clause in clauses:
        if isinstance(clause, LabelContains):
            if clause.side == "lhs":
                if lhs_labels is None:
                    lhs_labels = rules.lhs_labels()
                hay = lhs_labels
            else:
                if rhs_labels is None:
                    rhs_labels = rules.rhs_labels()
                hay = rhs_labels
            for i, lab in enumerate(hay):
                if mask[i] and clause.needle not in lab:
                    mask[i] = False
        else:
            if clause.column not in rules.quality:
                raise FilterError(f"unknown quality column {clause.column!r}", 0)
            col = rules.quality[clause.column]
            op = _OPS[clause.op]
            for i, v in enumerate(col):
                if mask[i] and not op(v, clause.value):
                    mask[i] = False
    return mask
