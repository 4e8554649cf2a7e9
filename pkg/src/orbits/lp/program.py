"""Normal logic programs and their text format.

Text format, one rule per line::

    head(X, c) :- pos(X), not neg(X, 'Boa').
    fact(a).

Variables start with an uppercase letter or ``_``. Constants are lowercase
identifiers, integers, or single-quoted strings (needed for anything else).
``%`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from ..errors import ParseError


@dataclass(frozen=True, order=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[Variable, str]


@dataclass(frozen=True, order=True)
class LAtom:
    predicate: str
    args: tuple = ()

    @property
    def ground(self) -> bool:
        return not any(isinstance(t, Variable) for t in self.args)

    def variables(self) -> set[Variable]:
        return {t for t in self.args if isinstance(t, Variable)}

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({', '.join(_term(t) for t in self.args)})"


_PLAIN = re.compile(r"[a-z0-9][A-Za-z0-9_]*\Z")


def _term(t: Term) -> str:
    if isinstance(t, Variable):
        return t.name
    if _PLAIN.match(t):
        return t
    return "'" + t.replace("\\", "\\\\").replace("'", "\\'") + "'"


@dataclass(frozen=True)
class Rule:
    head: LAtom
    pos: tuple[LAtom, ...] = ()
    neg: tuple[LAtom, ...] = ()

    def __post_init__(self):
        # negative literals must be bound too, so grounding never enumerates blindly
        bound = {v for a in self.pos for v in a.variables()}
        loose = {v for a in (self.head, *self.neg) for v in a.variables()} - bound
        if loose:
            raise ValueError(f"unsafe rule {self}: {', '.join(sorted(v.name for v in loose))} not bound")

    @property
    def is_fact(self) -> bool:
        return not self.pos and not self.neg

    def __str__(self) -> str:
        body = [str(a) for a in self.pos] + ["not " + str(a) for a in self.neg]
        return f"{self.head}." if not body else f"{self.head} :- {', '.join(body)}."


@dataclass(frozen=True)
class NormalProgram:
    rules: tuple[Rule, ...]

    def __add__(self, other: "NormalProgram") -> "NormalProgram":
        return NormalProgram(self.rules + other.rules)

    @classmethod
    def of(cls, rules: Iterable[Rule]) -> "NormalProgram":
        seen, out = set(), []
        for r in rules:
            if r not in seen:
                seen.add(r)
                out.append(r)
        return cls(tuple(out))

    def predicates(self) -> set[str]:
        out = set()
        for r in self.rules:
            out.add(r.head.predicate)
            out |= {a.predicate for a in (*r.pos, *r.neg)}
        return out

    def constants(self) -> set[str]:
        return {t for r in self.rules for a in (r.head, *r.pos, *r.neg) for t in a.args
                if not isinstance(t, Variable)}

    def __str__(self) -> str:
        return "".join(str(r) + "\n" for r in self.rules)


def fact(predicate: str, *args: str) -> Rule:
    return Rule(LAtom(predicate, tuple(args)))


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(r"""\s*(?:(:-)|(not)\b|([A-Za-z0-9_]+)|('(?:[^'\\]|\\.)*')|([(),.]))""")


def _tokens(line: str, lineno: int) -> list[tuple[str, str]]:
    out, pos = [], 0
    line = line.rstrip()
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m or m.end() == pos:
            raise ParseError(lineno, f"unexpected text {line[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1):
            out.append(("arrow", ":-"))
        elif m.group(2):
            out.append(("not", "not"))
        elif m.group(3):
            out.append(("name", m.group(3)))
        elif m.group(4):
            body = m.group(4)[1:-1]
            out.append(("quoted", re.sub(r"\\(.)", r"\1", body)))
        else:
            out.append((m.group(5), m.group(5)))
    return out


def _strip_comment(line: str) -> str:
    quoted = False
    for i, ch in enumerate(line):
        if ch == "'" and (i == 0 or line[i - 1] != "\\"):
            quoted = not quoted
        elif ch == "%" and not quoted:
            return line[:i]
    return line


def parse_program(text: str) -> NormalProgram:
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        toks = _tokens(line, lineno)
        pos = 0

        def expect(kind):
            nonlocal pos
            if pos >= len(toks) or toks[pos][0] != kind:
                got = toks[pos][1] if pos < len(toks) else "end of line"
                raise ParseError(lineno, f"expected {kind}, got {got!r}")
            pos += 1
            return toks[pos - 1][1]

        def atom():
            nonlocal pos
            pred = expect("name")
            args = []
            if pos < len(toks) and toks[pos][0] == "(":
                pos += 1
                while True:
                    kind, val = toks[pos] if pos < len(toks) else ("eol", "")
                    if kind == "name":
                        args.append(Variable(val) if val[0].isupper() or val[0] == "_" else val)
                    elif kind == "quoted":
                        args.append(val)
                    else:
                        raise ParseError(lineno, f"expected a term, got {val!r}")
                    pos += 1
                    if pos < len(toks) and toks[pos][0] == ",":
                        pos += 1
                        continue
                    expect(")")
                    break
            return LAtom(pred, tuple(args))

        head = atom()
        pos_body, neg_body = [], []
        if pos < len(toks) and toks[pos][0] == "arrow":
            pos += 1
            while True:
                negated = pos < len(toks) and toks[pos][0] == "not"
                if negated:
                    pos += 1
                (neg_body if negated else pos_body).append(atom())
                if pos < len(toks) and toks[pos][0] == ",":
                    pos += 1
                    continue
                break
        expect(".")
        if pos != len(toks):
            raise ParseError(lineno, "trailing text after rule")
        try:
            rules.append(Rule(head, tuple(pos_body), tuple(neg_body)))
        except ValueError as e:
            raise ParseError(lineno, str(e)) from None
    return NormalProgram(tuple(rules))


def format_program(p: NormalProgram) -> str:
    return str(p)
