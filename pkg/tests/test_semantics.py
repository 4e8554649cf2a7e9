import random
import time

import pytest

from orbits.dllite import parse_atom_shorthand, prepare
from orbits.errors import NotAPreorder
from orbits.oracle import random_hyper_kb
from orbits.repairs import enumerate_optimal
from orbits.semantics import (
    PartialPreorder,
    SemanticsSpec,
    elect,
    entails,
    grounded_approx,
    grounded_set,
    partial_pr,
    total_extensions,
)

from conftest import load_doc_kb

# (query, kind, mode, expected) for every claim about the zoo KB
ZOO_FACTS = [
    ("Carnivorous(a)", "C", "IAR", True),
    ("Snake(a)", "C", "AR", True),
    ("Snake(a)", "C", "IAR", False),
    ("Boa(a)", "C", "brave", True),
    ("Boa(a)", "C", "AR", False),
    ("Snake(a)", "G", "AR", False),
    ("Carnivorous(a)", "G", "AR", True),
    ("Carnivorous(a)", "P", "AR", False),
    ("Eat(a,y)", "P", "AR", True),
    ("Eat(a,y)", "S", "AR", False),
]


@pytest.mark.parametrize("query,kind,mode,expected", ZOO_FACTS)
def test_zoo_entailment_claims(zoo, query, kind, mode, expected):
    kb, h = zoo
    assert entails(kb, h, parse_atom_shorthand(query), SemanticsSpec(kind, mode)) is expected


def test_semantics_are_ordered_iar_ar_brave(small_corpus):
    for kb, h in small_corpus[:40]:
        if kb.hypergraph_mode:
            qs = [parse_atom_shorthand(f"holds({i})") for i in kb.ids]
        else:
            qs = [parse_atom_shorthand(f"{a.predicate}({','.join(a.args)})") for a in kb.abox]
        for q in qs[:4]:
            for kind in "SPGC":
                iar, ar, brave = (entails(kb, h, q, SemanticsSpec(kind, m)) for m in ("IAR", "AR", "brave"))
                assert (not iar or ar) and (not ar or brave)


def test_bad_spec():
    with pytest.raises(ValueError):
        SemanticsSpec("X", "AR")
    with pytest.raises(ValueError):
        SemanticsSpec(special="grounded_d")
    with pytest.raises(ValueError):
        SemanticsSpec(special="nope")


def test_elect_and_grounded_examples():
    kb, h = load_doc_kb("elect.okb")
    assert elect(kb, h) == {"alpha"}
    assert grounded_set(kb, h) == {"alpha", "gamma"}
    kb, h = load_doc_kb("grounded-strict.okb")
    assert grounded_set(kb, h) == frozenset()
    prep = [r.ids for r in enumerate_optimal(kb, h, "P")]
    assert frozenset.intersection(*prep) == {"delta"}


def test_grounded_entailment_and_approximation():
    kb, h = load_doc_kb("elect.okb")
    spec = SemanticsSpec(special="grounded")
    assert entails(kb, h, parse_atom_shorthand("C(a)"), spec)
    assert not entails(kb, h, parse_atom_shorthand("B(a)"), spec)
    assert grounded_approx(kb, h, 1) == {"alpha"}
    assert grounded_approx(kb, h, 2) == {"alpha", "gamma"}
    d1 = SemanticsSpec(special="grounded_d", depth=1)
    assert not entails(kb, h, parse_atom_shorthand("C(a)"), d1)
    assert entails(kb, h, parse_atom_shorthand("A(a)"), SemanticsSpec(special="elect"))


def test_preorder_validation():
    ids = ["a", "b", "c"]
    PartialPreorder.generated([("a", "b"), ("b", "c")], ids).check(ids)
    assert ("a", "c") in PartialPreorder.generated([("a", "b"), ("b", "c")], ids).pairs
    with pytest.raises(NotAPreorder):
        PartialPreorder(frozenset({("a", "a")})).check(ids)
    refl = {(i, i) for i in ids}
    with pytest.raises(NotAPreorder):
        PartialPreorder(frozenset(refl | {("a", "b"), ("b", "c")})).check(ids)


def test_total_extensions_count_ordered_partitions():
    ids = ["a", "b", "c"]
    # three unrelated elements have 13 total preorders
    assert len(list(total_extensions(ids, PartialPreorder.generated([], ids)))) == 13
    chain = PartialPreorder.generated([("a", "b"), ("b", "c")], ids)
    assert len(list(total_extensions(ids, chain))) == 1
    eq = PartialPreorder.generated([("a", "b"), ("b", "a")], ids)
    levels = list(total_extensions(ids, eq))
    assert all(lv["a"] == lv["b"] for lv in levels)
    assert len(levels) == 3


def test_partial_pr_paths_agree():
    rng = random.Random(21)
    for _ in range(60):
        kb, h = prepare(random_hyper_kb(rng, rng.randint(2, 6)))
        ids = sorted(h.vertices)
        pairs = [(a, b) for a in ids for b in ids if a != b and rng.random() < 0.2]
        pre = PartialPreorder.generated(pairs, ids)
        assert partial_pr(kb, pre, h) == partial_pr(kb, pre, h, literal=True)


def test_zoo_runtime_budget(zoo):
    kb, h = zoo
    start = time.perf_counter()
    for kind in "SPGC":
        list(enumerate_optimal(kb, h, kind))
    for q, kind, mode, _ in ZOO_FACTS:
        entails(kb, h, parse_atom_shorthand(q), SemanticsSpec(kind, mode))
    assert time.perf_counter() - start < 5
