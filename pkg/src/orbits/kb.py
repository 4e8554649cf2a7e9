"""Knowledge-base data model: DL-Lite syntax, assertions, priority relations.

All values are frozen dataclasses so they can be hashed, shared between
threads and used as dictionary keys.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterator, Optional, Sequence, Union

from .errors import CyclicPriority, DuplicateAssertion, PriorityOutsideConflict, TooLarge

Pair = tuple[str, str]


def desk_limit(default: int) -> int:
    """Size guard for exhaustive procedures, overridable by ``ORBITS_MAX_SIZE``."""
    value = os.environ.get("ORBITS_MAX_SIZE")
    return int(value) if value else default


def check_size(n: int, default: int, what: str, force: bool = False) -> None:
    limit = desk_limit(default)
    if not force and n > limit:
        raise TooLarge(f"{what} has size {n} > {limit}; set ORBITS_MAX_SIZE or pass force")


# ---------------------------------------------------------------- TBox syntax


@dataclass(frozen=True, order=True)
class Role:
    name: str
    inverse: bool = False

    def inv(self) -> "Role":
        return Role(self.name, not self.inverse)

    def __str__(self) -> str:
        return self.name + ("-" if self.inverse else "")


@dataclass(frozen=True, order=True)
class AtomicConcept:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Exists:
    role: Role

    def __str__(self) -> str:
        return f"exists {self.role}"


BasicConcept = Union[AtomicConcept, Exists]


def basic_key(b: BasicConcept) -> tuple:
    if isinstance(b, AtomicConcept):
        return (0, b.name, False)
    return (1, b.role.name, b.role.inverse)


@dataclass(frozen=True)
class ConceptInclusion:
    """``B1 & ... & Bn <= C`` or ``B1 & ... & Bn <= not C``."""

    lhs: tuple[BasicConcept, ...]
    rhs: BasicConcept
    negated: bool = False

    def __post_init__(self):
        if not self.lhs:
            raise ValueError("concept inclusion needs a non-empty left-hand side")

    def __str__(self) -> str:
        neg = "not " if self.negated else ""
        return " & ".join(map(str, self.lhs)) + f" <= {neg}{self.rhs}"


@dataclass(frozen=True)
class RoleInclusion:
    lhs: Role
    rhs: Role
    negated: bool = False

    def __str__(self) -> str:
        neg = "not " if self.negated else ""
        return f"{self.lhs} <= {neg}{self.rhs}"


Axiom = Union[ConceptInclusion, RoleInclusion]


@dataclass(frozen=True)
class TBox:
    axioms: tuple[Axiom, ...] = ()
    concepts: tuple[str, ...] = ()
    roles: tuple[str, ...] = ()
    core: bool = False

    def __post_init__(self):
        if self.core:
            for ax in self.axioms:
                if isinstance(ax, RoleInclusion):
                    raise ValueError("role inclusions are not allowed in DL-Lite_core")
                if len(ax.lhs) != 1:
                    raise ValueError("conjunctions are not allowed in DL-Lite_core")

    @property
    def empty(self) -> bool:
        return not self.axioms


# --------------------------------------------------------------------- ABox


@dataclass(frozen=True)
class Assertion:
    id: str
    predicate: str
    args: tuple[str, ...]

    def __post_init__(self):
        if len(self.args) not in (1, 2):
            raise ValueError(f"assertion {self.id} must have arity 1 or 2")

    @property
    def is_role(self) -> bool:
        return len(self.args) == 2

    @property
    def atom(self) -> tuple[str, tuple[str, ...]]:
        return (self.predicate, self.args)

    def __str__(self) -> str:
        return f"{self.predicate}({','.join(self.args)})"


@dataclass(frozen=True)
class ConflictHypergraph:
    vertices: frozenset[str]
    edges: frozenset[frozenset[str]]

    @classmethod
    def of(cls, vertices, edges) -> "ConflictHypergraph":
        return cls(frozenset(vertices), frozenset(frozenset(e) for e in edges))

    def sorted_edges(self) -> list[tuple[str, ...]]:
        return sorted((tuple(sorted(e)) for e in self.edges), key=lambda t: (len(t), t))

    def conflicting_pairs(self) -> set[frozenset[str]]:
        """Unordered pairs of distinct vertices that co-occur in some edge."""
        pairs = set()
        for e in self.edges:
            for a, b in combinations(sorted(e), 2):
                pairs.add(frozenset((a, b)))
        return pairs

    def is_independent(self, subset) -> bool:
        s = set(subset)
        return not any(e <= s for e in self.edges)

    @property
    def max_edge(self) -> int:
        return max((len(e) for e in self.edges), default=0)


@dataclass(frozen=True)
class PrioritizedKB:
    """A KB with a priority relation over assertion ids.

    In hypergraph mode (``hyperedges`` is not None) the TBox is empty and the
    conflicts are taken from the file rather than computed.
    """

    tbox: TBox
    abox: tuple[Assertion, ...]
    priority: frozenset[Pair] = frozenset()
    hyperedges: Optional[frozenset[frozenset[str]]] = None
    removed: tuple[str, ...] = ()
    validated: bool = False

    @property
    def hypergraph_mode(self) -> bool:
        return self.hyperedges is not None

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(sorted(a.id for a in self.abox))

    def assertion(self, ident: str) -> Assertion:
        for a in self.abox:
            if a.id == ident:
                return a
        raise KeyError(ident)

    def by_id(self) -> dict[str, Assertion]:
        return {a.id: a for a in self.abox}

    def with_priority(self, priority) -> "PrioritizedKB":
        return replace(self, priority=frozenset(priority))

    def individuals(self) -> tuple[str, ...]:
        return tuple(sorted({x for a in self.abox for x in a.args}))


ValidatedKB = PrioritizedKB


@dataclass(frozen=True)
class ScoreAssignment:
    scores: tuple[tuple[str, int], ...]

    def __getitem__(self, ident: str) -> int:
        return dict(self.scores)[ident]

    def as_dict(self) -> dict[str, int]:
        return dict(self.scores)


# ----------------------------------------------------------- priority checks


def find_cycle(nodes, pairs) -> Optional[list[str]]:
    """Return a directed cycle ``[v0, v1, ..., v0]`` or None."""
    succ: dict[str, list[str]] = {n: [] for n in nodes}
    for a, b in pairs:
        succ.setdefault(a, []).append(b)
        succ.setdefault(b, [])
    for n in succ:
        succ[n].sort()
    colour = dict.fromkeys(succ, 0)
    stack: list[str] = []

    def visit(v):
        colour[v] = 1
        stack.append(v)
        for w in succ[v]:
            if colour[w] == 1:
                return stack[stack.index(w):] + [w]
            if colour[w] == 0:
                found = visit(w)
                if found:
                    return found
        stack.pop()
        colour[v] = 2
        return None

    for n in sorted(succ):
        if colour[n] == 0:
            found = visit(n)
            if found:
                return found
    return None


def validate_kb(kb: PrioritizedKB, conflicts: ConflictHypergraph) -> ValidatedKB:
    """Check the priority relation and drop self-contradictory assertions.

    ``conflicts`` may contain singleton edges; their members are removed and
    recorded in ``removed``. Priority pairs touching a removed assertion are
    dropped as well, since those assertions take part in no repair.
    """
    seen_ids: set[str] = set()
    seen_atoms: dict[tuple, str] = {}
    for a in kb.abox:
        if a.id in seen_ids:
            raise DuplicateAssertion(a.id)
        seen_ids.add(a.id)
        if a.atom in seen_atoms:
            raise DuplicateAssertion(a.id, f"same fact as {seen_atoms[a.atom]}")
        seen_atoms[a.atom] = a.id

    bad = {next(iter(e)) for e in conflicts.edges if len(e) == 1}
    removed = tuple(sorted(set(kb.removed) | bad))
    abox = tuple(a for a in kb.abox if a.id not in bad)
    edges = [e for e in conflicts.edges if len(e) >= 2 and not (e & bad)]
    pairs = ConflictHypergraph.of(seen_ids - bad, edges).conflicting_pairs()

    priority = set()
    for a, b in sorted(kb.priority):
        if a == b:
            raise CyclicPriority([a, a])
        if a in bad or b in bad:
            continue
        if a not in seen_ids or b not in seen_ids:
            raise PriorityOutsideConflict((a, b))
        if frozenset((a, b)) not in pairs:
            raise PriorityOutsideConflict((a, b))
        priority.add((a, b))
    cycle = find_cycle(seen_ids - bad, priority)
    if cycle:
        raise CyclicPriority(cycle)

    hyper = kb.hyperedges
    if hyper is not None:
        hyper = frozenset(frozenset(e) for e in edges)
    return replace(kb, abox=abox, priority=frozenset(priority), hyperedges=hyper,
                   removed=removed, validated=True)


def _closure(ids, priority) -> dict[str, set[str]]:
    below: dict[str, set[str]] = {i: set() for i in ids}
    for a, b in priority:
        below.setdefault(a, set()).add(b)
        below.setdefault(b, set())
    changed = True
    while changed:
        changed = False
        for a in below:
            extra = set()
            for b in below[a]:
                extra |= below[b]
            if not extra <= below[a]:
                below[a] |= extra
                changed = True
    return below


def is_transitive_priority(kb: ValidatedKB, conflicts: ConflictHypergraph) -> bool:
    below = _closure(kb.ids, kb.priority)
    pairs = conflicts.conflicting_pairs()
    for a, lower in below.items():
        for b in lower:
            if frozenset((a, b)) in pairs and (a, b) not in kb.priority:
                return False
    return True


def score_structured(kb: ValidatedKB, conflicts: ConflictHypergraph) -> Optional[ScoreAssignment]:
    """Find scores inducing the priority relation, or None if there are none.

    Conflicting pairs left unordered must share a score, so they are merged
    with union-find; strict pairs must then run between distinct classes and
    form a DAG, and scores are longest-path heights in that DAG.
    """
    ids = kb.ids
    parent = {i: i for i in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    prio = kb.priority
    for pair in conflicts.conflicting_pairs():
        a, b = sorted(pair)
        if (a, b) not in prio and (b, a) not in prio:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    below: dict[str, set[str]] = {find(i): set() for i in ids}
    for a, b in prio:
        ra, rb = find(a), find(b)
        if ra == rb:
            return None
        below[ra].add(rb)
    if find_cycle(below, [(a, b) for a in below for b in below[a]]):
        return None

    height: dict[str, int] = {}

    def h(c):
        if c not in height:
            height[c] = 1 + max((h(d) for d in below[c]), default=0)
        return height[c]

    scores = {i: h(find(i)) for i in ids}
    derived = set()
    for pair in conflicts.conflicting_pairs():
        a, b = sorted(pair)
        if scores[a] > scores[b]:
            derived.add((a, b))
        elif scores[b] > scores[a]:
            derived.add((b, a))
    if derived != set(prio):
        return None
    return ScoreAssignment(tuple(sorted(scores.items())))


def completions(kb: ValidatedKB, conflicts: ConflictHypergraph,
                cap: Optional[int] = None) -> Iterator[frozenset[Pair]]:
    """Stream the completions of the priority relation in a fixed order.

    Unordered conflicting pairs are oriented one at a time in lexicographic
    order, trying ``a > b`` before ``b > a``; orientations that close a cycle
    are pruned.
    """
    prio = set(kb.priority)
    todo = sorted(tuple(sorted(p)) for p in conflicts.conflicting_pairs()
                  if tuple(sorted(p)) not in prio and tuple(sorted(p))[::-1] not in prio)
    succ: dict[str, set[str]] = {i: set() for i in kb.ids}
    for a, b in prio:
        succ[a].add(b)

    def reaches(src, dst):
        stack, seen = [src], {src}
        while stack:
            v = stack.pop()
            if v == dst:
                return True
            for w in succ[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    emitted = 0

    def rec(k):
        nonlocal emitted
        if cap is not None and emitted >= cap:
            return
        if k == len(todo):
            emitted += 1
            yield frozenset((a, b) for a in succ for b in succ[a])
            return
        a, b = todo[k]
        for hi, lo in ((a, b), (b, a)):
            if reaches(lo, hi):
                continue
            succ[hi].add(lo)
            yield from rec(k + 1)
            succ[hi].discard(lo)
            if cap is not None and emitted >= cap:
                return

    yield from rec(0)


def dominated(priority, ids: Sequence[str]) -> dict[str, set[str]]:
    """Map each id to the set of ids it is strictly preferred to."""
    out: dict[str, set[str]] = {i: set() for i in ids}
    for a, b in priority:
        out.setdefault(a, set()).add(b)
    return out
