"""Property-based checks on small random frameworks and hypergraph KBs."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from orbits.argumentation import PSETAF, SETAF, extensions, kb_to_psetaf, reduce_preferences
from orbits.dllite import prepare
from orbits.formats import parse_kb, parse_setaf, serialize_kb, serialize_setaf, setaf_index
from orbits.kb import Assertion, ConflictHypergraph, PrioritizedKB, TBox
from orbits.oracle import brute_extensions, brute_optimal
from orbits.repairs import check_repair, enumerate_optimal

SETTINGS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def setafs(draw, max_args=7):
    n = draw(st.integers(1, max_args))
    args = [f"a{i}" for i in range(n)]
    attack = st.tuples(st.sets(st.sampled_from(args), min_size=1, max_size=3), st.sampled_from(args))
    return SETAF.of(args, draw(st.lists(attack, max_size=2 * n)))


@st.composite
def ranked_preference(draw, args, allowed):
    """An acyclic preference: pairs only go down a drawn ranking."""
    order = draw(st.permutations(sorted(args)))
    rank = {x: i for i, x in enumerate(order)}
    pairs = sorted(p for p in allowed if rank[p[0]] < rank[p[1]])
    return frozenset(draw(st.sets(st.sampled_from(pairs)))) if pairs else frozenset()


@st.composite
def psetafs(draw):
    f = draw(setafs())
    allowed = {(a, b) for a in f.arguments for b in f.arguments if a != b}
    return PSETAF(f, draw(ranked_preference(f.arguments, allowed)))


@st.composite
def hyper_kbs(draw, max_facts=8):
    n = draw(st.integers(2, max_facts))
    ids = [f"v{i}" for i in range(n)]
    raw = draw(st.lists(st.sets(st.sampled_from(ids), min_size=2, max_size=3), max_size=2 * n))
    edges = []
    for e in map(frozenset, raw):
        if not any(o <= e for o in edges):
            edges = [o for o in edges if not e <= o] + [e]
    h = ConflictHypergraph.of(ids, edges)
    allowed = {(a, b) for e in edges for a in e for b in e if a != b}
    prio = draw(ranked_preference(ids, allowed))
    abox = tuple(Assertion(i, "holds", (i,)) for i in ids)
    return PrioritizedKB(TBox(), abox, prio, hyperedges=h.edges)


@SETTINGS
@given(setafs())
def test_extensions_agree_with_definitions(f):
    for sem in ("grounded", "complete", "preferred", "stable"):
        assert {e.arguments for e in extensions(f, sem)} == {e.arguments for e in brute_extensions(f, sem)}


@SETTINGS
@given(setafs())
def test_semantics_nest(f):
    ext = {sem: {e.arguments for e in extensions(f, sem)} for sem in ("grounded", "complete", "preferred", "stable")}
    assert ext["stable"] <= ext["preferred"] <= ext["complete"]
    (g,) = ext["grounded"]
    assert all(g <= c for c in ext["complete"])


@SETTINGS
@given(psetafs())
def test_setaf_text_round_trip(p):
    # the format numbers arguments, so compare after renaming
    idx = setaf_index(p.setaf)
    renamed = PSETAF(SETAF.of(idx.values(), ((map(idx.get, s), idx[b]) for s, b in p.attacks)),
                     frozenset((idx[a], idx[b]) for a, b in p.preference))
    assert parse_setaf(serialize_setaf(p)) == renamed


@SETTINGS
@given(hyper_kbs())
def test_kb_text_round_trip(kb):
    assert parse_kb(serialize_kb(kb)) == kb


@SETTINGS
@given(hyper_kbs())
def test_repair_kinds_form_a_chain(kb):
    kb, h = prepare(kb)
    sets = {k: {r.ids for r in enumerate_optimal(kb, h, k)} for k in "SPGC"}
    assert sets["C"] and sets["C"] <= sets["G"] <= sets["P"] <= sets["S"]
    for k in "SPGC":
        assert sets[k] == {r.ids for r in brute_optimal(kb, h, k)}


@SETTINGS
@given(hyper_kbs())
def test_pareto_repairs_are_stable_extensions(kb):
    kb, h = prepare(kb)
    f = reduce_preferences(kb_to_psetaf(kb, h))
    assert {e.arguments for e in extensions(f, "stable")} == {r.ids for r in enumerate_optimal(kb, h, "P")}


@SETTINGS
@given(hyper_kbs(), st.data())
def test_check_repair_agrees_with_enumeration(kb, data):
    kb, h = prepare(kb)
    ids = sorted(h.vertices)
    cand = frozenset(data.draw(st.sets(st.sampled_from(ids))))
    for k in "SPGC":
        ok, witness = check_repair(kb, h, cand, k)
        assert ok == (cand in {r.ids for r in enumerate_optimal(kb, h, k)})
        if ok:
            assert witness is None
