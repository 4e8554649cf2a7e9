"""Brute-force reference implementations and random instance generators.

Everything here follows the raw definitions by exhaustive search and shares
no search code with the main modules, so agreement between the two is
meaningful evidence. Inputs are kept at desk scale.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Optional

from .argumentation import PSETAF, SETAF, Extension
from .dllite import ClosedTBox, is_consistent
from .kb import (
    Assertion,
    AtomicConcept,
    ConceptInclusion,
    ConflictHypergraph,
    Exists,
    PrioritizedKB,
    Role,
    RoleInclusion,
    TBox,
    check_size,
    completions,
    find_cycle,
)
from .repairs import Repair

CONFLICT_LIMIT = 12
REPAIR_LIMIT = 12
EXTENSION_LIMIT = 14


# ------------------------------------------------------------------ conflicts


def brute_conflicts(ctbox: ClosedTBox, abox: Iterable[Assertion],
                    consistent: Optional[Callable] = None, force: bool = False) -> ConflictHypergraph:
    """Minimal inconsistent subsets by increasing size; ``consistent`` defaults
    to the pattern-based check and may be swapped for the chase."""
    abox = list(abox)
    check_size(len(abox), CONFLICT_LIMIT, "ABox for brute-force conflicts", force)
    test = consistent or is_consistent
    found: list[frozenset[str]] = []
    for size in range(1, len(abox) + 1):
        for combo in combinations(abox, size):
            ids = frozenset(a.id for a in combo)
            if any(e <= ids for e in found):
                continue
            if not test(ctbox, combo):
                found.append(ids)
    return ConflictHypergraph.of((a.id for a in abox), found)


# -------------------------------------------------------------------- repairs


class ConsistentSpace:
    """All conflict-free subsets of the vertex set as bitmasks."""

    def __init__(self, conflicts: ConflictHypergraph, priority):
        self.ids = sorted(conflicts.vertices)
        pos = {x: i for i, x in enumerate(self.ids)}
        self.n = len(self.ids)
        edges = [sum(1 << pos[x] for x in e) for e in conflicts.edges]
        self.consistent = [m for m in range(1 << self.n) if not any(m & e == e for e in edges)]
        cons = set(self.consistent)
        self.repairs = [m for m in self.consistent
                        if not any(m | 1 << i in cons for i in range(self.n) if not m >> i & 1)]
        self.beats = [0] * self.n
        for a, b in priority:
            if a in pos and b in pos:
                self.beats[pos[a]] |= 1 << pos[b]

    def unmask(self, m: int) -> frozenset[str]:
        return frozenset(self.ids[i] for i in range(self.n) if m >> i & 1)

    def _members(self, m: int) -> list[int]:
        return [i for i in range(self.n) if m >> i & 1]

    def pareto_improved(self, a: int) -> bool:
        for b in self.consistent:
            if b == a:
                continue
            lost, gained = a & ~b, b & ~a
            # some single new fact beats everything that was lost
            if any(self.beats[j] & lost == lost for j in self._members(gained)):
                return True
        return False

    def globally_improved(self, a: int) -> bool:
        for b in self.consistent:
            if b == a:
                continue
            lost, gained = a & ~b, b & ~a
            cover = 0
            for j in self._members(gained):
                cover |= self.beats[j]
            if cover & lost == lost:
                return True
        return False


def plain_greedy(space: ConsistentSpace, priority) -> int:
    """Repeatedly take a ≻-maximal unconsidered fact (smallest id on ties),
    keeping it when that stays conflict-free."""
    cons = set(space.consistent)
    pos = {x: i for i, x in enumerate(space.ids)}
    above = {i: set() for i in range(space.n)}
    for a, b in priority:
        above[pos[b]].add(pos[a])
    left = set(range(space.n))
    current = 0
    while left:
        top = min(i for i in left if not (above[i] & left))
        left.discard(top)
        if current | 1 << top in cons:
            current |= 1 << top
    return current


def brute_optimal(kb: PrioritizedKB, conflicts: ConflictHypergraph, kind: str,
                  force: bool = False) -> set[Repair]:
    check_size(len(conflicts.vertices), REPAIR_LIMIT, "ABox for brute-force repairs", force)
    space = ConsistentSpace(conflicts, kb.priority)
    if kind == "S":
        chosen = space.repairs
    elif kind == "P":
        chosen = [m for m in space.repairs if not space.pareto_improved(m)]
    elif kind == "G":
        chosen = [m for m in space.repairs if not space.globally_improved(m)]
    elif kind == "C":
        chosen = {plain_greedy(space, comp) for comp in completions(kb, conflicts)}
    else:
        raise ValueError(f"unknown repair kind {kind!r}")
    return {Repair(space.unmask(m), kind) for m in chosen}


# ----------------------------------------------------------------- extensions


def brute_extensions(f: SETAF, sem: str, force: bool = False) -> set[Extension]:
    """Powerset scan applying the definitions of each semantics literally."""
    args = list(f.arguments)
    check_size(len(args), EXTENSION_LIMIT, "framework for brute-force extensions", force)
    attacks = [(s, b) for s, b in f.attacks]
    subsets = [frozenset(c) for r in range(len(args) + 1) for c in combinations(args, r)]

    def attacked_by(e):
        return {b for s, b in attacks if s <= e}

    def conflict_free(e):
        return not (attacked_by(e) & e)

    def defends(e, a):
        plus = attacked_by(e)
        return all(s & plus for s, b in attacks if b == a)

    def defended(e):
        return frozenset(a for a in args if defends(e, a))

    cf = [e for e in subsets if conflict_free(e)]
    admissible = [e for e in cf if all(defends(e, a) for a in e)]
    if sem == "stable":
        out = [e for e in cf if attacked_by(e) == set(args) - e]
    elif sem == "complete":
        out = [e for e in admissible if defended(e) == e]
    elif sem == "preferred":
        out = [e for e in admissible if not any(e < o for o in admissible)]
    elif sem == "grounded":
        complete = [e for e in admissible if defended(e) == e]
        out = [frozenset.intersection(*complete)]
    else:
        raise ValueError(f"unknown semantics {sem!r}")
    return {Extension(e, sem) for e in out}


# ------------------------------------------------------------------- gadgets


@dataclass(frozen=True)
class CNF:
    """Clauses as frozensets of signed variable indices (1..n)."""

    clauses: tuple[frozenset[int], ...]
    n: int

    def __post_init__(self):
        if not self.clauses:
            raise ValueError("a CNF needs at least one clause")
        for c in self.clauses:
            if not c or any(v == 0 or abs(v) > self.n for v in c):
                raise ValueError(f"bad clause {sorted(c)}")

    @classmethod
    def of(cls, clauses: Iterable[Iterable[int]], n: Optional[int] = None) -> "CNF":
        cs = tuple(frozenset(c) for c in clauses)
        return cls(cs, n if n is not None else max((abs(v) for c in cs for v in c), default=0))

    def satisfiable(self) -> bool:
        return any(all(any((v > 0) == bits[abs(v) - 1] for v in c) for c in self.clauses)
                   for bits in product((False, True), repeat=self.n))


def _gadget_tbox(extra: tuple = ()) -> TBox:
    P, N, U, B = Role("P"), Role("N"), Role("Unsat"), Role("Block")
    ex = AtomicConcept("Exist")
    axioms = (
        ConceptInclusion((Exists(P.inv()),), Exists(N.inv()), True),
        ConceptInclusion((Exists(P),), Exists(U.inv()), True),
        ConceptInclusion((Exists(N),), Exists(U.inv()), True),
        ConceptInclusion((Exists(B.inv()),), Exists(P.inv()), True),
        ConceptInclusion((Exists(B.inv()),), Exists(N.inv()), True),
        ConceptInclusion((ex,), Exists(B), True),
        ConceptInclusion((ex,), Exists(U), True),
    ) + extra
    concepts = ("Exist", "NoExist") if extra else ("Exist",)
    return TBox(axioms, concepts, ("Block", "N", "P", "Unsat"))


def _gadget_abox(phi: CNF) -> tuple[list[Assertion], dict]:
    abox, lits = [], {}
    for i in range(1, len(phi.clauses) + 1):
        abox.append(Assertion(f"u{i}", "Unsat", ("a", f"c{i}")))
    for i, c in enumerate(phi.clauses, 1):
        for v in sorted(c, key=lambda v: (abs(v), v)):
            ident = f"{'p' if v > 0 else 'n'}{i}_{abs(v)}"
            abox.append(Assertion(ident, "P" if v > 0 else "N", (f"c{i}", f"x{abs(v)}")))
            lits[ident] = (i, abs(v))
    for j in range(1, phi.n + 1):
        abox.append(Assertion(f"b{j}", "Block", ("a", f"x{j}")))
    abox.append(Assertion("e", "Exist", ("a",)))
    return abox, lits


def gadget_kb_from_cnf(phi: CNF) -> tuple[PrioritizedKB, frozenset[str]]:
    """KB in which the Unsat and Block facts form a globally-optimal repair
    exactly when ``phi`` is unsatisfiable."""
    abox, lits = _gadget_abox(phi)
    prio = {("e", f"b{j}") for j in range(1, phi.n + 1)}
    for ident, (i, j) in lits.items():
        prio.add((f"b{j}", ident))
        prio.add((ident, f"u{i}"))
    cand = frozenset(a.id for a in abox if a.predicate in ("Unsat", "Block"))
    return PrioritizedKB(_gadget_tbox(), tuple(abox), frozenset(prio)), cand


def uniqueness_gadget_kb(phi: CNF) -> tuple[PrioritizedKB, frozenset[str]]:
    """KB with a single Pareto-optimal repair exactly when ``phi`` is
    unsatisfiable; also returns that repair."""
    abox, lits = _gadget_abox(phi)
    abox.append(Assertion("ne", "NoExist", ("a",)))
    extra = (ConceptInclusion((AtomicConcept("Exist"),), AtomicConcept("NoExist"), True),)
    prio = {(f"u{i}", "e") for i in range(1, len(phi.clauses) + 1)}
    prio |= {("e", f"b{j}") for j in range(1, phi.n + 1)}
    for ident, (_, j) in lits.items():
        prio.add((f"b{j}", ident))
    cand = frozenset(a.id for a in abox if a.predicate in ("Unsat", "Block", "NoExist"))
    return PrioritizedKB(_gadget_tbox(extra), tuple(abox), frozenset(prio)), cand


def small_cnfs(n: int = 2, max_clauses: int = 3) -> Iterator[CNF]:
    """Every CNF over ``n`` variables with 1..max_clauses distinct clauses."""
    lits = [v for j in range(1, n + 1) for v in (j, -j)]
    clauses = []
    for r in range(1, n + 1):
        for c in combinations(lits, r):
            if not any(-v in c for v in c):
                clauses.append(frozenset(c))
    for k in range(1, max_clauses + 1):
        for cs in combinations(clauses, k):
            yield CNF(tuple(cs), n)


# ----------------------------------------------------------------- generators


def random_tbox(rng: random.Random, n_concepts: int = 4, n_roles: int = 2,
                n_pos: int = 4, n_neg: int = 3, horn: bool = True) -> TBox:
    """A random DL-Lite TBox with some positive and some negative inclusions."""
    cs = [f"C{i}" for i in range(n_concepts)]
    rs = [f"R{i}" for i in range(n_roles)]

    def role():
        return Role(rng.choice(rs), rng.random() < 0.4)

    def basic():
        if rs and rng.random() < 0.35:
            return Exists(role())
        return AtomicConcept(rng.choice(cs))

    axioms = []
    for _ in range(n_pos):
        if rs and rng.random() < 0.2:
            r1, r2 = role(), role()
            if r1.name != r2.name:
                axioms.append(RoleInclusion(r1, r2))
                continue
        lhs = (basic(),) if not horn or rng.random() < 0.75 else (basic(), basic())
        rhs = basic()
        if rhs not in lhs:
            axioms.append(ConceptInclusion(tuple(dict.fromkeys(lhs)), rhs))
    for _ in range(n_neg):
        if rs and rng.random() < 0.1:
            r1, r2 = role(), role()
            if r1.name != r2.name:
                axioms.append(RoleInclusion(r1, r2, True))
                continue
        lhs = (basic(), basic()) if horn and rng.random() < 0.3 else (basic(),)
        rhs = basic()
        if rhs not in lhs:
            axioms.append(ConceptInclusion(tuple(dict.fromkeys(lhs)), rhs, True))
    return TBox(tuple(dict.fromkeys(axioms)), tuple(cs), tuple(rs))


def random_abox(rng: random.Random, tbox: TBox, size: int, n_inds: int = 3,
                role_share: float = 0.35) -> tuple[Assertion, ...]:
    inds = [f"i{k}" for k in range(n_inds)]
    atoms = set()
    tries = 0
    while len(atoms) < size and tries < 50 * size:
        tries += 1
        if tbox.roles and rng.random() < role_share:
            atoms.add((rng.choice(tbox.roles), (rng.choice(inds), rng.choice(inds))))
        else:
            atoms.add((rng.choice(tbox.concepts), (rng.choice(inds),)))
    return tuple(Assertion(f"a{k}", p, args) for k, (p, args) in enumerate(sorted(atoms)))


def random_priority(rng: random.Random, ids: Iterable[str], conflicts: ConflictHypergraph,
                    density: float = 0.5, transitive: bool = False,
                    max_unordered: Optional[int] = None) -> frozenset[tuple[str, str]]:
    """Orient conflicting pairs along a random ranking (so the result is
    acyclic). With ``transitive`` the ranking is applied to every pair, with
    ties making unordered pairs; ``max_unordered`` orients extra pairs so the
    number of completions stays small."""
    ids = sorted(ids)
    pairs = sorted(tuple(sorted(p)) for p in conflicts.conflicting_pairs())
    if transitive:
        levels = {i: rng.randrange(max(2, int(1 + density * 4))) for i in ids}
        prio = {(a, b) if levels[a] > levels[b] else (b, a)
                for a, b in pairs if levels[a] != levels[b]}
        unordered = [p for p in pairs if levels[p[0]] == levels[p[1]]]
        rank = {i: (levels[i], rng.random()) for i in ids}
    else:
        rank = {i: rng.random() for i in ids}
        prio, unordered = set(), []
        for a, b in pairs:
            if rng.random() < density:
                prio.add((a, b) if rank[a] > rank[b] else (b, a))
            else:
                unordered.append((a, b))
    if max_unordered is not None and len(unordered) > max_unordered:
        if transitive:
            # refining ties keeps the relation score-structured-free but transitive
            rng.shuffle(unordered)
        for a, b in unordered[max_unordered:]:
            prio.add((a, b) if rank[a] > rank[b] else (b, a))
    if find_cycle(ids, prio):
        raise AssertionError("random priority must be acyclic")
    return frozenset(prio)


def random_kb(rng: random.Random, max_facts: int = 10, max_unordered: int = 10,
              transitive: Optional[bool] = None) -> PrioritizedKB:
    """Random prioritized KB whose priority is valid for its conflicts."""
    from .dllite import close_tbox, conflicts as find_conflicts

    tbox = random_tbox(rng, n_concepts=rng.randint(3, 5), n_roles=rng.randint(1, 2),
                       n_pos=rng.randint(1, 4), n_neg=rng.randint(3, 6))
    abox = random_abox(rng, tbox, rng.randint(max(3, max_facts - 4), max_facts), n_inds=rng.randint(1, 2))
    ctbox = close_tbox(tbox)
    hyper = find_conflicts(ctbox, abox)
    # self-contradictory facts are dropped here so the priority stays valid
    bad = {next(iter(e)) for e in hyper.edges if len(e) == 1}
    abox = tuple(a for a in abox if a.id not in bad)
    hyper = ConflictHypergraph.of((a.id for a in abox), (e for e in hyper.edges if not e & bad))
    trans = rng.random() < 0.3 if transitive is None else transitive
    prio = random_priority(rng, (a.id for a in abox), hyper, rng.uniform(0.2, 0.9), trans, max_unordered)
    if trans:
        prio = _transitive_on_conflicts(prio, hyper)
    return PrioritizedKB(tbox, abox, prio)


def _transitive_on_conflicts(prio, hyper: ConflictHypergraph):
    """Add a > c for conflicting a, c whenever a > ... > c; the input comes
    from a ranking, so the closure stays acyclic."""
    below: dict[str, set[str]] = {}
    for a, b in prio:
        below.setdefault(a, set()).add(b)
    changed = True
    while changed:
        changed = False
        for a in list(below):
            extra = set().union(*(below.get(b, set()) for b in below[a])) - below[a]
            if extra:
                below[a] |= extra
                changed = True
    pairs = hyper.conflicting_pairs()
    return frozenset(prio) | {(a, c) for a in below for c in below[a] if frozenset((a, c)) in pairs}


def random_hypergraph(rng: random.Random, n: int, n_edges: int, max_edge: int = 3) -> ConflictHypergraph:
    ids = [f"v{i}" for i in range(n)]
    edges: list[frozenset[str]] = []
    for _ in range(n_edges if n >= 2 else 0):
        e = frozenset(rng.sample(ids, rng.randint(2, max(2, min(max_edge, n)))))
        if any(o <= e for o in edges):
            continue
        edges = [o for o in edges if not e <= o] + [e]
    return ConflictHypergraph.of(ids, edges)


def random_hyper_kb(rng: random.Random, n: int = 8, max_unordered: int = 10) -> PrioritizedKB:
    hyper = random_hypergraph(rng, n, rng.randint(1, 2 * n), rng.randint(2, 3))
    abox = tuple(Assertion(i, "holds", (i,)) for i in sorted(hyper.vertices))
    prio = random_priority(rng, hyper.vertices, hyper, rng.uniform(0.2, 0.9), False, max_unordered)
    return PrioritizedKB(TBox(), abox, prio, hyperedges=hyper.edges)


def kb_corpus(size: int = 1000, seed: int = 0, max_facts: int = 10) -> list[PrioritizedKB]:
    """Seeded mix of DL-Lite KBs (seven in ten) and plain hypergraph KBs."""
    out = []
    for k in range(size):
        rng = random.Random(seed * 1_000_003 + k)
        if k % 10 < 7:
            out.append(random_kb(rng, max_facts=max_facts))
        else:
            out.append(random_hyper_kb(rng, rng.randint(min(4, max_facts), max_facts)))
    return out


def random_transitive_preference(rng: random.Random, args, density: float = 0.4) -> frozenset:
    """Transitive closure of random pairs oriented along a random ranking."""
    rank = {a: rng.random() for a in args}
    pairs = {(a, b) for a in args for b in args if rank[a] > rank[b] and rng.random() < density}
    changed = True
    while changed:
        extra = {(a, d) for a, b in pairs for c, d in pairs if b == c} - pairs
        changed = bool(extra)
        pairs |= extra
    return frozenset(pairs)


def random_setaf(rng: random.Random, n: int, n_attacks: int, max_source: int = 3,
                 self_attacks: bool = True) -> SETAF:
    args = [str(i) for i in range(1, n + 1)]
    attacks = []
    for _ in range(n_attacks):
        b = rng.choice(args)
        pool = args if self_attacks else [a for a in args if a != b]
        if not pool:
            continue
        src = rng.sample(pool, rng.randint(1, min(max_source, len(pool))))
        attacks.append((src, b))
    return SETAF.of(args, attacks)


def random_psetaf(rng: random.Random, n: int, n_attacks: int, density: float = 0.3) -> PSETAF:
    f = random_setaf(rng, n, n_attacks)
    rank = {a: rng.random() for a in f.arguments}
    pref = {(a, b) for a in f.arguments for b in f.arguments if rank[a] > rank[b] and rng.random() < density}
    return PSETAF(f, frozenset(pref))


def symmetric_closure_setaf(f: SETAF) -> SETAF:
    """Smallest strongly symmetric SETAF containing ``f`` (self-attacks dropped)."""
    attacks = {(s, b) for s, b in f.attacks if b not in s}
    changed = True
    while changed:
        changed = False
        for s, b in list(attacks):
            for a in s:
                new = (s - {a} | {b}, a)
                if new not in attacks:
                    attacks.add(new)
                    changed = True
    return SETAF(f.arguments, frozenset(attacks))


# ------------------------------------------------------------------- witnesses


def find_incoherent_symm1(max_args: int = 4, seed: int = 0, trials: int = 20000) -> Optional[SETAF]:
    """Search for an irreflexive (Symm-1) SETAF with a preferred extension that
    is not stable; random search, smallest framework first."""
    from .argumentation import classify_symmetry, is_coherent

    rng = random.Random(seed)
    for n in range(2, max_args + 1):
        for _ in range(trials):
            f = random_setaf(rng, n, rng.randint(1, 2 * n), max_source=min(3, n - 1), self_attacks=False)
            if "symm1_setaf" in classify_symmetry(f) and not is_coherent(f)[0]:
                return f
    return None


__all__ = [
    "CNF", "ConsistentSpace", "brute_conflicts", "brute_extensions", "brute_optimal",
    "find_incoherent_symm1", "gadget_kb_from_cnf", "kb_corpus", "plain_greedy",
    "random_abox", "random_hyper_kb", "random_hypergraph", "random_kb", "random_priority",
    "random_psetaf", "random_setaf", "random_transitive_preference", "random_tbox", "small_cnfs", "symmetric_closure_setaf",
    "uniqueness_gadget_kb",
]
