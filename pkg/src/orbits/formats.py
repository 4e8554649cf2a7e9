"""Parsers and serializers for KB, query, SETAF and preorder files.

KB files have sections ``[concepts] [roles] [tbox] [abox] [pref]`` in that
order, or ``[facts] [conflicts] [pref]`` in hypergraph mode. ``#`` starts a
comment. See README.md for examples.
"""

from __future__ import annotations

import re
from typing import Iterable, Optional

from .argumentation import PSETAF, SETAF
from .dllite import BCQ, Atom, Var
from .errors import ParseError, UndeclaredName
from .kb import (
    Assertion,
    AtomicConcept,
    ConceptInclusion,
    Exists,
    PrioritizedKB,
    Role,
    RoleInclusion,
    TBox,
)

HYPER_PREDICATE = "holds"
_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_IDENT = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*\Z")
TBOX_SECTIONS = ("concepts", "roles", "tbox", "abox", "pref")
HYPER_SECTIONS = ("facts", "conflicts", "pref")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _sections(text: str) -> tuple[list[tuple[str, list[tuple[int, str]]]], int]:
    out: list[tuple[str, list[tuple[int, str]]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        m = re.fullmatch(r"\[([a-z]+)\]", line)
        if m:
            out.append((m.group(1), []))
            continue
        if not out:
            raise ParseError(lineno, "content before the first section header")
        out[-1][1].append((lineno, line))
    return out, len(text.splitlines())


def _check_order(found: list[str], allowed: tuple[str, ...], lineno: int = 0) -> None:
    idx = [allowed.index(s) if s in allowed else -1 for s in found]
    for s, i in zip(found, idx):
        if i < 0:
            raise ParseError(lineno, f"unknown section [{s}] (expected one of {', '.join(allowed)})")
    if idx != sorted(idx) or len(set(idx)) != len(idx):
        raise ParseError(lineno, f"sections must appear once each, in the order {', '.join(allowed)}")


def parse_kb(text: str) -> PrioritizedKB:
    sections, _ = _sections(text)
    names = [s for s, _ in sections]
    if any(s in ("facts", "conflicts") for s in names):
        _check_order(names, HYPER_SECTIONS)
        return _parse_hyper(dict(sections))
    _check_order(names, TBOX_SECTIONS)
    body = dict(sections)
    concepts = [w for _, line in body.get("concepts", []) for w in line.split()]
    roles = [w for _, line in body.get("roles", []) for w in line.split()]
    for n in concepts + roles:
        if not re.fullmatch(_NAME, n):
            raise ParseError(0, f"bad name {n!r}")
    cset, rset = set(concepts), set(roles)
    if cset & rset:
        raise ParseError(0, f"names declared both as concept and role: {', '.join(sorted(cset & rset))}")

    axioms = []
    for lineno, line in body.get("tbox", []):
        axioms.append(_parse_axiom(line, lineno, cset, rset))
    tbox = TBox(tuple(axioms), tuple(concepts), tuple(roles))

    abox = []
    for k, (lineno, line) in enumerate(body.get("abox", []), 1):
        abox.append(_parse_assertion(line, lineno, k, cset, rset))
    ids = {a.id for a in abox}
    prio = _parse_pref(body.get("pref", []), ids)
    return PrioritizedKB(tbox, tuple(abox), frozenset(prio))


def _parse_role(tok: str, lineno: int, rset) -> Role:
    inverse = tok.endswith("-")
    name = tok[:-1] if inverse else tok
    if not re.fullmatch(_NAME, name):
        raise ParseError(lineno, f"bad role expression {tok!r}")
    if name not in rset:
        raise UndeclaredName(lineno, f"undeclared role {name}")
    return Role(name, inverse)


def _parse_basic(tok: str, lineno: int, cset, rset):
    words = tok.split()
    if len(words) == 2 and words[0] == "exists":
        return Exists(_parse_role(words[1], lineno, rset))
    if len(words) == 1 and re.fullmatch(_NAME, words[0]) and words[0] not in ("exists", "not"):
        if words[0] not in cset:
            raise UndeclaredName(lineno, f"undeclared concept {words[0]}")
        return AtomicConcept(words[0])
    raise ParseError(lineno, f"bad concept {tok!r}")


def _parse_axiom(line: str, lineno: int, cset, rset):
    parts = line.split("<=")
    if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
        raise ParseError(lineno, "expected exactly one '<=' between two sides")
    lhs, rhs = parts[0].strip(), parts[1].strip()
    negated = False
    if rhs.startswith("not "):
        negated, rhs = True, rhs[4:].strip()
    # role inclusion when both sides are (possibly inverted) role names
    lname, rname = lhs.rstrip("-"), rhs.rstrip("-")
    if lname in rset and rname in rset and "&" not in lhs and " " not in lhs and " " not in rhs:
        return RoleInclusion(_parse_role(lhs, lineno, rset), _parse_role(rhs, lineno, rset), negated)
    conj = tuple(_parse_basic(t.strip(), lineno, cset, rset) for t in lhs.split("&"))
    if any(not t.strip() for t in lhs.split("&")):
        raise ParseError(lineno, "empty conjunct")
    return ConceptInclusion(conj, _parse_basic(rhs, lineno, cset, rset), negated)


_ASSERTION = re.compile(r"(?:([A-Za-z0-9_][A-Za-z0-9_.\-]*)\s*:\s*)?(" + _NAME + r")\(([^()]*)\)\Z")


def _parse_assertion(line: str, lineno: int, k: int, cset, rset) -> Assertion:
    m = _ASSERTION.fullmatch(line)
    if not m:
        raise ParseError(lineno, f"bad assertion {line!r}")
    ident = m.group(1) or f"f{k}"
    pred = m.group(2)
    args = tuple(a.strip() for a in m.group(3).split(","))
    if any(not _IDENT.match(a) for a in args):
        raise ParseError(lineno, f"bad individual in {line!r}")
    if pred in cset:
        if len(args) != 1:
            raise ParseError(lineno, f"concept {pred} takes one argument")
    elif pred in rset:
        if len(args) != 2:
            raise ParseError(lineno, f"role {pred} takes two arguments")
    else:
        raise UndeclaredName(lineno, f"undeclared predicate {pred}")
    return Assertion(ident, pred, args)


def _parse_pref(lines, ids) -> set[tuple[str, str]]:
    prio = set()
    for lineno, line in lines:
        m = re.fullmatch(r"(\S+)\s*>\s*(\S+)", line)
        if not m:
            raise ParseError(lineno, "expected 'id > id'")
        a, b = m.groups()
        for x in (a, b):
            if x not in ids:
                raise UndeclaredName(lineno, f"unknown assertion id {x}")
        prio.add((a, b))
    return prio


def _parse_hyper(body) -> PrioritizedKB:
    ids = []
    for lineno, line in body.get("facts", []):
        for w in line.split():
            if not _IDENT.match(w):
                raise ParseError(lineno, f"bad fact id {w!r}")
            ids.append(w)
    idset = set(ids)
    edges = []
    for lineno, line in body.get("conflicts", []):
        rest = line
        while rest:
            m = re.match(r"\s*\{([^{}]*)\}\s*", rest)
            if not m:
                raise ParseError(lineno, "expected conflicts written as {a b ...}")
            members = m.group(1).split()
            for x in members:
                if x not in idset:
                    raise UndeclaredName(lineno, f"unknown fact {x}")
            if len(set(members)) < 2:
                raise ParseError(lineno, "a conflict needs at least two facts")
            edges.append(frozenset(members))
            rest = rest[m.end():]
    for e in edges:
        if any(o < e for o in edges):
            raise ParseError(0, f"conflict {{{' '.join(sorted(e))}}} is not minimal")
    abox = tuple(Assertion(i, HYPER_PREDICATE, (i,)) for i in ids)
    prio = _parse_pref(body.get("pref", []), idset)
    return PrioritizedKB(TBox(), abox, frozenset(prio), hyperedges=frozenset(edges))


def serialize_kb(kb: PrioritizedKB) -> str:
    out = []
    if kb.hypergraph_mode:
        out.append("[facts]")
        out.append(" ".join(a.id for a in kb.abox))
        out.append("[conflicts]")
        for e in sorted(tuple(sorted(e)) for e in kb.hyperedges):
            out.append("{" + " ".join(e) + "}")
    else:
        out.append("[concepts]")
        out.append(" ".join(kb.tbox.concepts))
        out.append("[roles]")
        out.append(" ".join(kb.tbox.roles))
        out.append("[tbox]")
        out += [str(ax) for ax in kb.tbox.axioms]
        out.append("[abox]")
        out += [f"{a.id}: {a}" for a in kb.abox]
    out.append("[pref]")
    out += [f"{a} > {b}" for a, b in sorted(kb.priority)]
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------- queries

_QATOM = re.compile(r"\s*(" + _NAME + r")\(([^()]*)\)\s*(?:,|\Z)")


def _term(tok: str, lineno: int, individuals) -> object:
    tok = tok.strip()
    if len(tok) >= 2 and tok[0] == tok[-1] and tok[0] in "'\"":
        return tok[1:-1]
    if not _IDENT.match(tok):
        raise ParseError(lineno, f"bad term {tok!r}")
    if individuals is not None and tok in individuals:
        return tok
    return Var(tok)


def parse_query_line(line: str, individuals: Optional[Iterable[str]] = None, lineno: int = 1) -> BCQ:
    """``q(x) :- A(x), R(x,'b')``; quoted or declared names are individuals."""
    inds = set(individuals) if individuals is not None else None
    m = re.fullmatch(r"\s*(" + _NAME + r")\s*\(([^()]*)\)\s*:-\s*(.+?)\s*\.?\s*", line)
    if not m:
        raise ParseError(lineno, "expected 'q(vars) :- atom, ...'")
    head_vars = [t.strip() for t in m.group(2).split(",") if t.strip()]
    body = m.group(3)
    atoms, pos = [], 0
    while pos < len(body):
        am = _QATOM.match(body, pos)
        if not am:
            raise ParseError(lineno, f"bad atom near {body[pos:pos + 15]!r}")
        terms = tuple(_term(t, lineno, inds) for t in am.group(2).split(","))
        if len(terms) not in (1, 2):
            raise ParseError(lineno, f"atom {am.group(1)} must have one or two terms")
        atoms.append(Atom(am.group(1), terms))
        pos = am.end()
    answer = []
    for v in head_vars:
        t = _term(v, lineno, inds)
        if not isinstance(t, Var):
            raise ParseError(lineno, f"answer position {v} is not a variable")
        answer.append(t)
    q = BCQ(tuple(atoms), tuple(answer))
    missing = set(q.answer_vars) - q.variables
    if missing:
        raise ParseError(lineno, f"answer variables not in the body: {', '.join(sorted(map(str, missing)))}")
    return q


def parse_queries(text: str, individuals: Optional[Iterable[str]] = None) -> list[BCQ]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if line:
            out.append(parse_query_line(line, individuals, lineno))
    if not out:
        raise ParseError(0, "no query found")
    return out


def serialize_query(q: BCQ) -> str:
    def term(t):
        return str(t) if isinstance(t, Var) else f"'{t}'"
    head = "q(" + ",".join(map(str, q.answer_vars)) + ")"
    return head + " :- " + ", ".join(f"{a.predicate}({','.join(term(t) for t in a.terms)})" for a in q.atoms)


# -------------------------------------------------------------------- SETAFs


def parse_setaf(text: str) -> PSETAF:
    """``setaf n`` header, ``att {i j} k`` attacks and ``pref i j`` lines.
    Arguments are named "1".."n"."""
    n = None
    attacks, prefs = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        words = line.split()
        if n is None:
            if len(words) != 2 or words[0] != "setaf" or not words[1].isdigit():
                raise ParseError(lineno, "expected header 'setaf <n>'")
            n = int(words[1])
            continue
        m = re.fullmatch(r"att\s*\{([^{}]*)\}\s*(\d+)", line)
        if m:
            src = m.group(1).split()
            if not src:
                raise ParseError(lineno, "attack source must be non-empty")
            idx = [*src, m.group(2)]
            for i in idx:
                if not i.isdigit() or not 1 <= int(i) <= n:
                    raise ParseError(lineno, f"argument index {i} outside 1..{n}")
            attacks.append(({str(int(i)) for i in src}, str(int(m.group(2)))))
            continue
        m = re.fullmatch(r"pref\s+(\d+)\s+(\d+)", line)
        if m:
            for i in m.groups():
                if not 1 <= int(i) <= n:
                    raise ParseError(lineno, f"argument index {i} outside 1..{n}")
            prefs.append((str(int(m.group(1))), str(int(m.group(2)))))
            continue
        raise ParseError(lineno, f"unrecognised line {line!r}")
    if n is None:
        raise ParseError(0, "missing 'setaf <n>' header")
    f = SETAF.of((str(i) for i in range(1, n + 1)), attacks)
    try:
        return PSETAF(f, frozenset(prefs))
    except ValueError as e:
        raise ParseError(0, str(e)) from None


def serialize_setaf(p, names: Optional[dict[str, str]] = None) -> str:
    """Write a (P)SETAF; arguments are numbered in sorted order unless they
    are already "1".."n". ``names`` adds comment lines for readers."""
    f = p.setaf if isinstance(p, PSETAF) else p
    pref = p.preference if isinstance(p, PSETAF) else frozenset()
    args = list(f.arguments)
    if set(args) == {str(i) for i in range(1, len(args) + 1)}:
        num = {a: a for a in args}
    else:
        num = {a: str(i) for i, a in enumerate(args, 1)}
    out = [f"setaf {len(args)}"]
    for a in sorted(args, key=lambda a: int(num[a])):
        label = (names or {}).get(a, a if num[a] != a else None)
        if label is not None:
            out.append(f"# {num[a]} = {label}")
    for src, tgt in sorted(
            (sorted((num[a] for a in s), key=int), num[t]) for s, t in f.attacks):
        out.append(f"att {{{' '.join(src)}}} {tgt}")
    for a, b in sorted((num[a], num[b]) for a, b in pref):
        out.append(f"pref {a} {b}")
    return "\n".join(out) + "\n"


def setaf_index(f: SETAF) -> dict[str, str]:
    """Map from argument name to the number used by serialize_setaf."""
    args = list(f.arguments)
    if set(args) == {str(i) for i in range(1, len(args) + 1)}:
        return {a: a for a in args}
    return {a: str(i) for i, a in enumerate(args, 1)}


# ----------------------------------------------------------------- preorders


def parse_preorder(text: str, ids: Iterable[str]) -> set[tuple[str, str]]:
    """Lines ``a >= b``; ``a > b`` is shorthand for a strict pair, which is
    written to the relation as ``a >= b`` only."""
    ids = set(ids)
    pairs = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        m = re.fullmatch(r"(\S+)\s*>=\s*(\S+)", line) or re.fullmatch(r"(\S+)\s*>\s*(\S+)", line)
        if not m:
            raise ParseError(lineno, "expected 'id >= id'")
        for x in m.groups():
            if x not in ids:
                raise UndeclaredName(lineno, f"unknown assertion id {x}")
        pairs.add(m.groups())
    return pairs
