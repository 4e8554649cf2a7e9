"""Grounding, well-founded models and stratified evaluation."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator

from ..errors import NotStratified, TooLarge
from .program import LAtom, NormalProgram, Rule, Variable

GroundAtom = tuple  # (predicate, args)


@dataclass(frozen=True)
class ThreeValuedModel:
    true: frozenset[LAtom]
    false: frozenset[LAtom]
    base: frozenset[LAtom] = field(default=frozenset(), compare=False, repr=False)

    def __post_init__(self):
        if self.true & self.false:
            raise ValueError("an atom cannot be both true and false")

    def value(self, atom: LAtom) -> str:
        if atom in self.true:
            return "true"
        if atom in self.false or atom not in self.base:
            return "false"
        return "unknown"

    @property
    def unknown(self) -> frozenset[LAtom]:
        return self.base - self.true - self.false

    def true_args(self, predicate: str) -> set[tuple]:
        return {a.args for a in self.true if a.predicate == predicate}


# ---------------------------------------------------------------- grounding


def _order_body(rule: Rule) -> list[LAtom]:
    """Greedy join order: prefer atoms sharing variables with what is bound."""
    left = list(rule.pos)
    bound: set = set()
    out = []
    while left:
        best = max(left, key=lambda a: (len(a.variables() & bound) + sum(not isinstance(t, Variable) for t in a.args),
                                        -len(a.variables())))
        left.remove(best)
        out.append(best)
        bound |= best.variables()
    return out


class _DB:
    def __init__(self):
        self.rows: dict[str, set[tuple]] = defaultdict(set)
        self.index: dict[tuple, list[tuple]] = defaultdict(list)
        self.size = 0

    def add(self, pred: str, args: tuple) -> bool:
        if args in self.rows[pred]:
            return False
        self.rows[pred].add(args)
        self.size += 1
        for i, v in enumerate(args):
            self.index[(pred, i, v)].append(args)
        return True

    def candidates(self, atom: LAtom, binding: dict):
        best = None
        for i, t in enumerate(atom.args):
            v = binding.get(t, None) if isinstance(t, Variable) else t
            if v is not None:
                lst = self.index.get((atom.predicate, i, v), ())
                if best is None or len(lst) < len(best):
                    best = lst
        if best is None:
            return list(self.rows.get(atom.predicate, ()))
        return list(best)


def _matches(body: list[LAtom], db: _DB, binding: dict) -> Iterator[dict]:
    if not body:
        yield binding
        return
    atom, rest = body[0], body[1:]
    n = len(atom.args)
    for row in db.candidates(atom, binding):
        if len(row) != n:
            continue
        b = binding
        ok = True
        for t, v in zip(atom.args, row):
            if isinstance(t, Variable):
                cur = b.get(t)
                if cur is None:
                    if b is binding:
                        b = dict(binding)
                    b[t] = v
                elif cur != v:
                    ok = False
                    break
            elif t != v:
                ok = False
                break
        if ok:
            yield from _matches(rest, db, b)


def _inst(atom: LAtom, binding: dict) -> GroundAtom:
    return (atom.predicate, tuple(binding[t] if isinstance(t, Variable) else t for t in atom.args))


@dataclass
class GroundProgram:
    atoms: list[GroundAtom]
    rules: list[tuple[int, tuple[int, ...], tuple[int, ...]]]

    def atom(self, i: int) -> LAtom:
        p, a = self.atoms[i]
        return LAtom(p, a)


def ground(p: NormalProgram, budget: int = 2_000_000) -> GroundProgram:
    """Instantiate rules over the atoms that are derivable at all.

    The over-approximation ignores negative literals, so every atom that could
    become true under any interpretation is kept; other atoms are false in all
    the models computed here and their negative literals can be dropped.
    """
    orders = [(_order_body(r), r) for r in p.rules]
    db = _DB()
    for r in p.rules:
        if not r.pos:
            db.add(*_inst(r.head, {}))
    changed = True
    while changed:
        changed = False
        for body, r in orders:
            if not r.pos:
                continue
            new = [_inst(r.head, b) for b in _matches(body, db, {})]
            for h in new:
                if db.add(*h):
                    changed = True
                    if db.size > budget:
                        raise TooLarge(f"grounding exceeds {budget} atoms")
    index: dict[GroundAtom, int] = {}
    atoms: list[GroundAtom] = []

    def idx(a):
        i = index.get(a)
        if i is None:
            i = index[a] = len(atoms)
            atoms.append(a)
        return i

    rules = []
    seen = set()
    for body, r in orders:
        for b in _matches(body, db, {}):
            head = idx(_inst(r.head, b))
            pos = tuple(sorted({idx(_inst(a, b)) for a in r.pos}))
            neg = []
            for a in r.neg:
                g = _inst(a, b)
                if g[1] in db.rows.get(g[0], ()):
                    neg.append(idx(g))
            key = (head, pos, tuple(sorted(set(neg))))
            if key not in seen:
                seen.add(key)
                rules.append(key)
                if len(rules) > budget:
                    raise TooLarge(f"grounding exceeds {budget} rules")
    return GroundProgram(atoms, rules)


# ---------------------------------------------------------------------- WFS


class _Evaluator:
    def __init__(self, g: GroundProgram):
        self.g = g
        self.watch: list[list[int]] = [[] for _ in g.atoms]
        for k, (_, pos, _) in enumerate(g.rules):
            for a in pos:
                self.watch[a].append(k)

    def least_model(self, assumed: set[int]) -> frozenset[int]:
        """mm of the reduct: rules whose negative body meets ``assumed`` are dropped."""
        rules = self.g.rules
        need = []
        queue = []
        model: set[int] = set()
        for k, (h, pos, neg) in enumerate(rules):
            if any(a in assumed for a in neg):
                need.append(-1)
                continue
            need.append(len(pos))
            if not pos and h not in model:
                model.add(h)
                queue.append(h)
        while queue:
            a = queue.pop()
            for k in self.watch[a]:
                if need[k] > 0:
                    need[k] -= 1
                    if need[k] == 0:
                        h = rules[k][0]
                        if h not in model:
                            model.add(h)
                            queue.append(h)
        return frozenset(model)


def alternating_sequence(g: GroundProgram) -> list[frozenset[int]]:
    """I_0, I_1, ... up to the point where both subsequences are stable."""
    ev = _Evaluator(g)
    seq = [frozenset()]
    while True:
        seq.append(ev.least_model(set(seq[-1])))
        if len(seq) >= 4 and len(seq) % 2 == 0 and seq[-2] == seq[-4] and seq[-1] == seq[-3]:
            return seq


def well_founded_model(p: NormalProgram, budget: int = 2_000_000) -> ThreeValuedModel:
    g = ground(p, budget)
    seq = alternating_sequence(g)
    lower, upper = seq[-2], seq[-1]
    base = range(len(g.atoms))
    true = frozenset(g.atom(i) for i in lower)
    false = frozenset(g.atom(i) for i in base if i not in upper)
    return ThreeValuedModel(true, false, frozenset(g.atom(i) for i in base))


# --------------------------------------------------------------- stratified


def _graph(p: NormalProgram):
    edges: dict[str, set[tuple[str, bool]]] = defaultdict(set)
    preds = p.predicates()
    for r in p.rules:
        for a in r.pos:
            edges[r.head.predicate].add((a.predicate, False))
        for a in r.neg:
            edges[r.head.predicate].add((a.predicate, True))
    return preds, edges


def _sccs(nodes, succ) -> list[list[str]]:
    index, low, on, stack, out = {}, {}, set(), [], []
    counter = [0]

    def visit(v):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on.add(v)
        for w in sorted(succ.get(v, ())):
            if w not in index:
                visit(w)
                low[v] = min(low[v], low[w])
            elif w in on:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on.discard(w)
                comp.append(w)
                if w == v:
                    break
            out.append(comp)

    for v in sorted(nodes):
        if v not in index:
            visit(v)
    return out


def stratify(p: NormalProgram) -> dict[str, int]:
    """Smallest stratum per predicate; raises NotStratified with a cycle."""
    preds, edges = _graph(p)
    succ = {h: {b for b, _ in es} for h, es in edges.items()}
    comp_of = {}
    comps = _sccs(preds, succ)
    for k, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = k
    for h, es in edges.items():
        for b, negative in es:
            if negative and comp_of[h] == comp_of[b]:
                raise NotStratified(_cycle(h, b, succ, comp_of))
    # Tarjan emits components in reverse topological order (dependencies first)
    level: dict[str, int] = {}
    for comp in comps:
        lv = 0
        for h in comp:
            for b, negative in edges.get(h, ()):
                if comp_of[b] != comp_of[h]:
                    lv = max(lv, level[b] + (1 if negative else 0))
        for h in comp:
            level[h] = lv
    return level


def _cycle(head, body, succ, comp_of) -> list[str]:
    # path body -> ... -> head inside the component, closed by the negative edge
    prev = {body: None}
    queue = [body]
    while queue:
        v = queue.pop(0)
        if v == head:
            break
        for w in sorted(succ.get(v, ())):
            if w not in prev and comp_of.get(w) == comp_of[head]:
                prev[w] = v
                queue.append(w)
    path = []
    v = head
    while v is not None:
        path.append(v)
        v = prev[v]
    path.reverse()
    return [head] + path if path[0] != head else path + [path[0]]


def num_strata(p: NormalProgram) -> int:
    levels = stratify(p)
    return len(set(levels.values())) if levels else 0


def stratified_minimal_model(p: NormalProgram, budget: int = 2_000_000) -> frozenset[LAtom]:
    levels = stratify(p)
    g = ground(p, budget)
    by_level: dict[int, list] = defaultdict(list)
    for r in g.rules:
        by_level[levels[g.atoms[r[0]][0]]].append(r)
    model: set[int] = set()
    for lv in sorted(by_level):
        rules = by_level[lv]
        changed = True
        while changed:
            changed = False
            for h, pos, neg in rules:
                if h in model:
                    continue
                if all(a in model for a in pos) and not any(a in model for a in neg):
                    model.add(h)
                    changed = True
    return frozenset(g.atom(i) for i in model)
