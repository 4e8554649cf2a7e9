import pytest

from orbits.dllite import Var
from orbits.errors import ParseError, UndeclaredName
from orbits.formats import (
    parse_kb,
    parse_preorder,
    parse_queries,
    parse_query_line,
    parse_setaf,
    serialize_kb,
    serialize_query,
    serialize_setaf,
)
from orbits.kb import RoleInclusion
from orbits.oracle import kb_corpus, random_psetaf

from conftest import DOCS


def test_zoo_file_contents():
    kb = parse_kb((DOCS / "zoo.okb").read_text())
    assert len(kb.abox) == 9
    assert len(kb.tbox.axioms) == 14
    assert len(kb.priority) == 6
    assert sum(isinstance(ax, RoleInclusion) for ax in kb.tbox.axioms) == 2


def test_hypergraph_mode():
    kb = parse_kb("[facts]\na b c\n[conflicts]\n{a b} {b c}\n[pref]\na > b\n")
    assert kb.hypergraph_mode
    assert kb.hyperedges == {frozenset("ab"), frozenset("bc")}
    assert kb.priority == {("a", "b")}


@pytest.mark.parametrize("text,line", [
    ("[concepts]\nBoa Snake\n[tbox]\nBoa <= <= Snake\n", 4),
    ("[concepts]\nA\n[abox]\nA(a, b)\n", 4),
    ("stray\n[concepts]\nA\n", 1),
    ("[facts]\na b\n[conflicts]\n{a}\n", 4),
])
def test_parse_errors_report_the_line(text, line):
    with pytest.raises(ParseError) as err:
        parse_kb(text)
    assert err.value.line == line


def test_undeclared_names():
    with pytest.raises(UndeclaredName):
        parse_kb("[concepts]\nA\n[tbox]\nA <= B\n")
    with pytest.raises(UndeclaredName):
        parse_kb("[concepts]\nA\n[abox]\nx: A(a)\n[pref]\nx > y\n")
    with pytest.raises(UndeclaredName):
        parse_kb("[facts]\na\n[conflicts]\n{a z}\n")


def test_section_order_is_fixed():
    with pytest.raises(ParseError):
        parse_kb("[tbox]\n[concepts]\nA\n")


def test_non_minimal_conflicts_are_rejected():
    with pytest.raises(ParseError):
        parse_kb("[facts]\na b c\n[conflicts]\n{a b} {a b c}\n")


def test_kb_round_trip_on_corpus():
    for kb in kb_corpus(200, seed=3):
        assert parse_kb(serialize_kb(kb)) == kb


def test_queries():
    q = parse_query_line("q(x) :- Eat(x, y), Stone(y)", individuals=[])
    assert q.answer_vars == (Var("x"),)
    q = parse_query_line("q() :- Eat('a', y), Stone(b)", individuals=["b"])
    assert q.atoms[0].terms == ("a", Var("y"))
    assert q.atoms[1].terms == ("b",)
    assert parse_query_line(serialize_query(q), individuals=["a", "b"]) == q
    with pytest.raises(ParseError):
        parse_query_line("q(z) :- A(x)")
    with pytest.raises(ParseError):
        parse_queries("# nothing\n")


def test_setaf_format():
    p = parse_setaf("setaf 3\natt {1 2} 3\natt {3} 1\npref 1 3\n")
    assert p.setaf.k == 2
    assert p.preference == {("1", "3")}
    assert parse_setaf(serialize_setaf(p)) == p
    for bad in ["att {1} 2\n", "setaf 2\natt {} 1\n", "setaf 2\natt {1} 3\n", "setaf 2\npref 1 2\npref 2 1\n"]:
        with pytest.raises(ParseError):
            parse_setaf(bad)


def test_setaf_round_trip_random():
    import random

    rng = random.Random(1)
    for _ in range(100):
        p = random_psetaf(rng, rng.randint(1, 8), rng.randint(0, 12))
        assert parse_setaf(serialize_setaf(p)) == p


def test_preorder_file():
    pairs = parse_preorder("a >= b\nb > c  # strict\n", ["a", "b", "c"])
    assert pairs == {("a", "b"), ("b", "c")}
    with pytest.raises(UndeclaredName):
        parse_preorder("a >= z\n", ["a"])
