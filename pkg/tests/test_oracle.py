import random

import pytest

from orbits.argumentation import classify_symmetry, is_coherent
from orbits.dllite import close_tbox, conflicts, prepare
from orbits.errors import TooLarge
from orbits.kb import Assertion, PrioritizedKB, TBox
from orbits.oracle import (
    CNF,
    ConsistentSpace,
    brute_conflicts,
    brute_optimal,
    find_incoherent_symm1,
    gadget_kb_from_cnf,
    kb_corpus,
    random_hypergraph,
    small_cnfs,
    uniqueness_gadget_kb,
)
from orbits.repairs import check_repair, enumerate_optimal


def hyper_kb(h, prio=frozenset()):
    abox = tuple(Assertion(i, "holds", (i,)) for i in sorted(h.vertices))
    return PrioritizedKB(TBox(), abox, prio, hyperedges=h.edges)


def test_gadget_abox_size():
    kb, cand = gadget_kb_from_cnf(CNF.of([[1, 2], [-1]], 2))
    # two Unsat, three literal facts, two Block and one Exist
    assert len(kb.abox) == 8
    assert cand == {"u1", "u2", "b1", "b2"}


def test_gadget_on_tiny_formulas():
    kb, cand = gadget_kb_from_cnf(CNF.of([[1], [-1]]))
    kb, h = prepare(kb)
    assert check_repair(kb, h, cand, "G") == (True, None)
    sat = CNF.of([[1]])
    kb, cand = gadget_kb_from_cnf(sat)
    kb, h = prepare(kb)
    ok, witness = check_repair(kb, h, cand, "G")
    assert not ok and witness.flavor == "global"
    # the improvement follows the satisfying assignment x1 = true
    assert "p1_1" in witness.improved and "b1" not in witness.improved


def test_small_cnf_enumeration():
    cnfs = list(small_cnfs(2, 3))
    assert len(cnfs) == 92
    assert len(set(cnfs)) == 92
    assert sum(not c.satisfiable() for c in cnfs) > 0
    with pytest.raises(ValueError):
        CNF.of([[0]])
    with pytest.raises(ValueError):
        CNF.of([])


def test_uniqueness_gadget_on_one_formula():
    for phi, unique in ((CNF.of([[1], [-1]]), True), (CNF.of([[1, -1]]), False)):
        kb, cand = uniqueness_gadget_kb(phi)
        kb, h = prepare(kb)
        prep = {r.ids for r in enumerate_optimal(kb, h, "P")}
        assert (prep == {cand}) is unique


def test_brute_force_matches_zoo(zoo):
    kb, h = zoo
    assert brute_conflicts(close_tbox(kb.tbox), kb.abox) == h
    for kind in "SPGC":
        assert brute_optimal(kb, h, kind) == set(enumerate_optimal(kb, h, kind))


def test_empty_priority_makes_every_kind_plain_repairs():
    rng = random.Random(3)
    for _ in range(40):
        h = random_hypergraph(rng, rng.randint(1, 8), rng.randint(0, 6))
        kb = hyper_kb(h)
        reps = {r.ids for r in brute_optimal(kb, h, "S")}
        for kind in "PGC":
            assert {r.ids for r in brute_optimal(kb, h, kind)} == reps


def test_consistent_abox_has_no_conflicts():
    for kb in kb_corpus(60, seed=11):
        if kb.hypergraph_mode:
            continue
        ct = close_tbox(kb.tbox)
        h = conflicts(ct, kb.abox)
        free = [a for a in kb.abox if not any(a.id in e for e in h.edges)]
        assert brute_conflicts(ct, free).edges == frozenset()


def test_consistent_space_counts():
    h = random_hypergraph(random.Random(0), 0, 0)
    assert ConsistentSpace(h, set()).repairs == [0]
    rng = random.Random(5)
    for _ in range(30):
        kb, hh = prepare(hyper_kb(random_hypergraph(rng, rng.randint(1, 7), rng.randint(0, 5))))
        space = ConsistentSpace(hh, set())
        assert all(hh.is_independent(space.unmask(m)) for m in space.consistent)
        assert {space.unmask(m) for m in space.repairs} == {r.ids for r in enumerate_optimal(kb, hh, "S")}


def test_size_limits():
    big = random_hypergraph(random.Random(1), 20, 3)
    kb = hyper_kb(big)
    with pytest.raises(TooLarge):
        brute_optimal(kb, big, "S")
    with pytest.raises(TooLarge):
        brute_conflicts(close_tbox(kb.tbox), kb.abox)


def test_symm1_search_finds_a_small_witness():
    f = find_incoherent_symm1(max_args=3, seed=0, trials=20000)
    assert f is not None
    assert "symm1_setaf" in classify_symmetry(f)
    assert not is_coherent(f)[0]
