import random

import pytest

from orbits.argumentation import SETAF, grounded_extension, kb_to_psetaf, reduce_preferences
from orbits.dllite import close_tbox
from orbits.errors import NotStratified, ParseError
from orbits.lp import (
    LAtom,
    accepted,
    gen_gamma_d_program,
    gen_kb_program,
    gen_setaf_program,
    kb_facts,
    kb_signature,
    num_strata,
    parse_program,
    stratified_minimal_model,
    stratify,
    well_founded_model,
)
from orbits.lp.generators import guard_literals
from orbits.oracle import random_setaf
from orbits.semantics import grounded_approx, grounded_set


def atom(text):
    prog = parse_program(text + ".")
    return prog.rules[0].head


def test_parse_and_print_round_trip():
    text = "p(X, 'Big Co') :- q(X), not r(X, c).\nq(a).\nr(a, c).\n"
    prog = parse_program(text)
    assert str(prog) == text
    assert parse_program(str(prog)) == prog


def test_comments_and_errors():
    prog = parse_program("% header\np(a). % trailing\n")
    assert len(prog.rules) == 1
    with pytest.raises(ParseError) as err:
        parse_program("p(a).\np(X) :- not q(X).\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_program("p(a) :- \n")


def test_wfs_classic_programs():
    m = well_founded_model(parse_program("p :- not q.\nq :- not p.\n"))
    assert m.value(atom("p")) == "unknown" and m.value(atom("q")) == "unknown"
    m = well_founded_model(parse_program("a.\nb :- a, not c.\nd :- not b.\n"))
    assert m.value(atom("b")) == "true"
    assert m.value(atom("c")) == "false"
    assert m.value(atom("d")) == "false"
    m = well_founded_model(parse_program("p :- not p.\nq :- not r.\n"))
    assert m.value(atom("p")) == "unknown" and m.value(atom("q")) == "true"


def test_win_move_game():
    text = """
win(X) :- move(X, Y), not win(Y).
move(a, b).
move(b, c).
move(c, d).
move(e, f).
move(f, e).
"""
    m = well_founded_model(parse_program(text))
    assert m.true_args("win") == {("c",), ("a",)}
    assert m.value(LAtom("win", ("b",))) == "false"
    assert m.value(LAtom("win", ("e",))) == "unknown"


def test_stratification():
    prog = parse_program("p(X) :- q(X), not r(X).\nr(X) :- s(X).\nq(a).\ns(a).\nq(b).\n")
    levels = stratify(prog)
    assert levels["p"] > levels["r"]
    assert num_strata(prog) == 2
    assert stratified_minimal_model(prog) >= {LAtom("p", ("b",))}
    assert LAtom("p", ("a",)) not in stratified_minimal_model(prog)
    with pytest.raises(NotStratified) as err:
        stratify(parse_program("p(X) :- q(X), not p(X).\nq(a).\n"))
    assert "p" in err.value.cycle


def test_setaf_program_matches_grounded_extension():
    rng = random.Random(6)
    for _ in range(200):
        f = random_setaf(rng, rng.randint(1, 12), rng.randint(0, 18))
        assert accepted(well_founded_model(gen_setaf_program(f))) == grounded_extension(f)


def test_setaf_program_on_a_collective_attack():
    f = SETAF.of("abc", [("ab", "c"), ("c", "a")])
    m = well_founded_model(gen_setaf_program(f))
    assert accepted(m) == {"b"}
    assert m.value(LAtom("acc", ("a",))) == "unknown"


def test_guard_shape():
    g = guard_literals(2)
    assert [(pos, a.args[0]) for pos, a in g] == [(False, "0"), (True, "1"), (False, "2"), (True, "3"), (False, "4")]


def _kb_program_checks(kb, h):
    ct = close_tbox(kb.tbox)
    cs, rs = kb_signature(kb)
    facts = kb_facts(kb)
    m = well_founded_model(gen_kb_program(ct, cs, rs) + facts)
    assert accepted(m) == grounded_set(kb, h)
    for d in sorted({1, 2, 3, max(1, len(kb.abox))}):
        mm = stratified_minimal_model(gen_gamma_d_program(ct, d, cs, rs) + facts)
        got = frozenset(a.args[0] for a in mm if a.predicate == f"acc_{2 * d}")
        assert got == grounded_approx(kb, h, d)


def test_kb_programs_on_zoo(zoo):
    kb, h = zoo
    _kb_program_checks(kb, h)
    f = reduce_preferences(kb_to_psetaf(kb, h))
    ct = close_tbox(kb.tbox)
    m = well_founded_model(gen_kb_program(ct, *kb_signature(kb)) + kb_facts(kb))
    assert (m.value(LAtom("acc", ("eatmeat",))) == "true") == ("eatmeat" in grounded_extension(f))


def test_kb_programs_on_elect_example():
    from conftest import load_doc_kb

    kb, h = load_doc_kb("elect.okb")
    _kb_program_checks(kb, h)
    ct = close_tbox(kb.tbox)
    m = well_founded_model(gen_kb_program(ct, *kb_signature(kb)) + kb_facts(kb))
    assert accepted(m) == {"alpha", "gamma"}


def test_kb_programs_on_corpus(small_corpus):
    for kb, h in small_corpus:
        if not kb.hypergraph_mode:
            _kb_program_checks(kb, h)


def test_generated_names_must_not_clash():
    from orbits.formats import parse_kb

    kb = parse_kb("[concepts]\narg B\n[tbox]\narg <= not B\n[abox]\narg(a)\nB(a)\n")
    with pytest.raises(ValueError):
        gen_kb_program(close_tbox(kb.tbox), *kb_signature(kb))
