"""Program generators: SETAF grounded program, conflict program, guarded
combination, and the stratified depth-bounded approximation."""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterable

from ..argumentation import SETAF
from ..dllite import ClosedTBox, Var
from ..kb import PrioritizedKB
from .engine import num_strata
from .program import LAtom, NormalProgram, Rule, Variable, fact

RESERVED = {"arg", "acc", "def", "pref", "odd", "next"}


def _v(name: str) -> Variable:
    return Variable(name)


def _att(i: int) -> str:
    return f"att_{i}"


def _guarded(rule: Rule, guard: list[tuple[bool, LAtom]]) -> Rule:
    return Rule(rule.head, rule.pos + tuple(a for pos, a in guard if pos),
                rule.neg + tuple(a for pos, a in guard if not pos))


def argumentation_rules(k: int) -> list[Rule]:
    """r_acc and r_def^i for 1 <= i <= k."""
    x = _v("X")
    rules = []
    for i in range(1, max(k, 1) + 1):
        ys = [_v(f"Y{j}") for j in range(1, i + 1)]
        rules.append(Rule(LAtom("def", (x,)),
                          (LAtom(_att(i), (*ys, x)), *(LAtom("acc", (y,)) for y in ys))))
    rules.append(Rule(LAtom("acc", (x,)), (LAtom("arg", (x,)),), (LAtom("def", (x,)),)))
    return rules


def gen_setaf_program(f: SETAF) -> NormalProgram:
    rules = argumentation_rules(f.k)
    rules += [fact("arg", a) for a in f.arguments]
    for src, tgt in f.sorted_attacks():
        rules.append(fact(_att(len(src)), *src, tgt))
    return NormalProgram.of(rules)


def accepted(model, predicate: str = "acc") -> frozenset[str]:
    return frozenset(args[0] for args in model.true_args(predicate))


# ---------------------------------------------------------- conflict program


def _check_names(names: Iterable[str]) -> None:
    for n in names:
        if n in RESERVED or n.startswith(("att_", "confl_", "acc_", "def_")):
            raise ValueError(f"predicate name {n!r} clashes with a generated predicate")


def _signature(ctbox: ClosedTBox, concepts: Iterable[str], roles: Iterable[str]):
    cs = sorted(set(ctbox.concept_names) | set(concepts))
    rs = sorted(set(ctbox.role_names) | set(roles))
    _check_names(cs + rs)
    return cs, rs


def max_conflict_size(ctbox: ClosedTBox) -> int:
    return max((p.arity for p in ctbox.patterns), default=1)


def gen_conflict_program(ctbox: ClosedTBox, concepts: Iterable[str] = (),
                         roles: Iterable[str] = ()) -> NormalProgram:
    """Rules deriving confl_k for conflicts of k+1 assertions, the attacks
    they induce under the priority, and the argument set."""
    cs, rs = _signature(ctbox, concepts, roles)
    n = max_conflict_size(ctbox)
    rules: list[Rule] = []
    for pat in ctbox.patterns:
        for order in dict.fromkeys(permutations(pat.atoms)):
            k = len(order) - 1
            zs = [_v(f"Z{j}") for j in range(1, k + 2)]
            body = tuple(
                LAtom(a.predicate, tuple(_v("X" + t.name[1:]) if isinstance(t, Var) else t for t in a.terms) + (z,))
                for a, z in zip(order, zs))
            neg = tuple(LAtom(f"confl_{j}", tup) for j in range(k) for tup in product(zs, repeat=j + 1))
            rules.append(Rule(LAtom(f"confl_{k}", tuple(zs)), body, neg))
    for i in range(1, n):
        zs = [_v(f"Z{j}") for j in range(1, i + 2)]
        neg = tuple(LAtom("pref", (zs[i], zs[l])) for l in range(i))
        rules.append(Rule(LAtom(_att(i), tuple(zs)), (LAtom(f"confl_{i}", tuple(zs)),), neg))
    z, x, y = _v("Z1"), _v("X"), _v("Y")
    for c in cs:
        rules.append(Rule(LAtom("arg", (z,)), (LAtom(c, (x, z)),), (LAtom("confl_0", (z,)),)))
    for r in rs:
        rules.append(Rule(LAtom("arg", (z,)), (LAtom(r, (x, y, z)),), (LAtom("confl_0", (z,)),)))
    return NormalProgram.of(rules)


def guard_literals(p: int) -> list[tuple[bool, LAtom]]:
    """not odd(0), odd(1), not odd(2), ..., odd(2p-1), not odd(2p)."""
    return [(i % 2 == 1, LAtom("odd", (str(i),))) for i in range(2 * p + 1)]


def guard_program(p: int) -> list[Rule]:
    x, y = _v("X"), _v("Y")
    rules = [Rule(LAtom("odd", (x,)), (LAtom("next", (y, x)),), (LAtom("odd", (y,)),))]
    rules += [fact("next", str(i), str(i + 1)) for i in range(2 * p)]
    return rules


def combine(first: NormalProgram, second: Iterable[Rule]) -> NormalProgram:
    """Delay ``second`` until the stratified ``first`` has stabilised."""
    p = num_strata(first)
    guard = guard_literals(p)
    return NormalProgram.of(list(first.rules) + [_guarded(r, guard) for r in second] + guard_program(p))


def gen_kb_program(ctbox: ClosedTBox, concepts: Iterable[str] = (), roles: Iterable[str] = ()) -> NormalProgram:
    confl = gen_conflict_program(ctbox, concepts, roles)
    return combine(confl, argumentation_rules(max_conflict_size(ctbox) - 1))


def gen_gamma_d_program(ctbox: ClosedTBox, d: int, concepts: Iterable[str] = (),
                        roles: Iterable[str] = ()) -> NormalProgram:
    """Stratified program whose minimal model has acc_{2d}(id) iff the
    assertion lies in d applications of the characteristic function."""
    if d < 1:
        raise ValueError("depth must be at least 1")
    n = max_conflict_size(ctbox)
    x = _v("X")
    rules = list(gen_conflict_program(ctbox, concepts, roles).rules)
    rules.append(Rule(LAtom("acc_1", (x,)), (LAtom("arg", (x,)),)))

    def defs(j):
        out = []
        for i in range(1, n):
            ys = [_v(f"Y{m}") for m in range(1, i + 1)]
            out.append(Rule(LAtom(f"def_{j}", (x,)),
                            (LAtom(_att(i), (*ys, x)), *(LAtom(f"acc_{j}", (yy,)) for yy in ys))))
        return out

    rules += defs(1)
    for j in range(1, 2 * d):
        rules.append(Rule(LAtom(f"acc_{j + 1}", (x,)), (LAtom("arg", (x,)),), (LAtom(f"def_{j}", (x,)),)))
        rules += defs(j + 1)
    return NormalProgram.of(rules)


def kb_facts(kb: PrioritizedKB) -> NormalProgram:
    """Id-annotated assertions and pref facts."""
    rules = [fact(a.predicate, *a.args, a.id) for a in sorted(kb.abox, key=lambda a: a.id)]
    rules += [fact("pref", a, b) for a, b in sorted(kb.priority)]
    return NormalProgram.of(rules)


def kb_signature(kb: PrioritizedKB) -> tuple[list[str], list[str]]:
    concepts = sorted({a.predicate for a in kb.abox if not a.is_role} | set(kb.tbox.concepts))
    roles = sorted({a.predicate for a in kb.abox if a.is_role} | set(kb.tbox.roles))
    return concepts, roles
