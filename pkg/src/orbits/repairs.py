"""Classical and optimal repairs of a prioritized KB.

Everything works on the conflict hypergraph: a set of assertions is
consistent iff it contains no hyperedge. Sets are handled internally as
integer bitmasks over the sorted assertion ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import NotASubset
from .kb import ConflictHypergraph, PrioritizedKB, check_size

KINDS = ("S", "P", "G", "C")
DESK_LIMIT = 24


@dataclass(frozen=True)
class Repair:
    ids: frozenset[str]
    kind: str = "S"

    def sorted(self) -> tuple[str, ...]:
        return tuple(sorted(self.ids))

    def __str__(self) -> str:
        return "{" + ", ".join(self.sorted()) + "}"


@dataclass(frozen=True)
class ImprovementWitness:
    """A consistent set improving on a candidate repair."""

    improved: frozenset[str]
    entering: frozenset[str]
    exiting: frozenset[str]
    flavor: str  # "pareto" or "global"


class Frame:
    """Bitmask view of a hypergraph plus a priority relation."""

    def __init__(self, conflicts: ConflictHypergraph, priority: Iterable[tuple[str, str]] = ()):
        self.ids: list[str] = sorted(conflicts.vertices)
        self.index = {v: i for i, v in enumerate(self.ids)}
        self.n = len(self.ids)
        self.full = (1 << self.n) - 1
        self.edges = sorted({self.mask(e) for e in conflicts.edges})
        self.edges_of: list[list[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            for i in self.bits(e):
                self.edges_of[i].append(e)
        # dom[i]: what i beats; above[i]: what beats i
        self.dom = [0] * self.n
        self.above = [0] * self.n
        for a, b in priority:
            if a in self.index and b in self.index:
                self.dom[self.index[a]] |= 1 << self.index[b]
                self.above[self.index[b]] |= 1 << self.index[a]

    def mask(self, ids: Iterable[str]) -> int:
        m = 0
        for v in ids:
            m |= 1 << self.index[v]
        return m

    def unmask(self, m: int) -> frozenset[str]:
        return frozenset(self.ids[i] for i in self.bits(m))

    @staticmethod
    def bits(m: int) -> Iterator[int]:
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def independent(self, m: int) -> bool:
        return not any(e & m == e for e in self.edges)

    def addable(self, m: int, i: int) -> bool:
        """Whether ``m ∪ {i}`` stays independent, assuming m is."""
        m |= 1 << i
        return not any(e & m == e for e in self.edges_of[i])

    def maximal(self, m: int) -> bool:
        return all(not self.addable(m, i) for i in range(self.n) if not m >> i & 1)


# ------------------------------------------------------------ enumeration


def _mis(frame: Frame) -> Iterator[int]:
    """Maximal independent sets, include-first so output is lexicographic."""
    n = frame.n

    def blockable(i, excluded):
        # i can still be kept out only if some edge through i avoids the excluded set
        return any(not (e & ~(1 << i) & excluded) for e in frame.edges_of[i])

    def rec(i, chosen, excluded):
        if i == n:
            if frame.maximal(chosen):
                yield chosen
            return
        if frame.addable(chosen, i):
            yield from rec(i + 1, chosen | 1 << i, excluded)
            if blockable(i, excluded):
                yield from rec(i + 1, chosen, excluded | 1 << i)
        else:
            yield from rec(i + 1, chosen, excluded | 1 << i)

    yield from rec(0, 0, 0)


def enumerate_repairs(conflicts: ConflictHypergraph, force: bool = False) -> Iterator[Repair]:
    check_size(len(conflicts.vertices), DESK_LIMIT, "ABox", force)
    frame = Frame(conflicts)
    for m in _mis(frame):
        yield Repair(frame.unmask(m), "S")


# --------------------------------------------------------------- checking


def _pareto_witness(frame: Frame, m: int) -> Optional[int]:
    for b in range(frame.n):
        if m >> b & 1:
            continue
        cand = (m & ~frame.dom[b]) | 1 << b
        if frame.independent(cand):
            return cand
    return None


def _global_witness(frame: Frame, m: int) -> Optional[int]:
    """Search B ⊆ A∖A′ independent and non-empty, dropping from A′ everything
    some member of B beats; removing more can only help consistency."""
    outside = [i for i in range(frame.n) if not m >> i & 1]

    def rec(k, b, beaten):
        if b:
            cand = b | (m & ~beaten)
            if frame.independent(cand):
                return cand
        for j in range(k, len(outside)):
            i = outside[j]
            if frame.addable(b, i):
                found = rec(j + 1, b | 1 << i, beaten | frame.dom[i])
                if found is not None:
                    return found
        return None

    return rec(0, 0, 0)


def _completion_check(frame: Frame, m: int) -> bool:
    """Greedy run that favours the candidate; succeeds iff it rebuilds it."""
    todo = frame.full
    current = 0
    while todo:
        frontier = [i for i in frame.bits(todo) if not frame.above[i] & todo]
        inside = [i for i in frontier if m >> i & 1]
        if inside:
            pick = inside[0]
            current |= 1 << pick
        else:
            rejected = [i for i in frontier if not frame.addable(current, i)]
            if not rejected:
                return False
            pick = rejected[0]
        todo &= ~(1 << pick)
    return current == m


def _witness(frame: Frame, m: int, cand: int, flavor: str) -> ImprovementWitness:
    return ImprovementWitness(frame.unmask(cand), frame.unmask(cand & ~m), frame.unmask(m & ~cand), flavor)


def check_repair(kb: PrioritizedKB, conflicts: ConflictHypergraph, candidate: Iterable[str],
                 kind: str, frame: Optional[Frame] = None) -> tuple[bool, Optional[ImprovementWitness]]:
    """Decide whether ``candidate`` is a kind-optimal repair.

    Returns the verdict and, when the answer is negative and an improving set
    exists, a witness for it. A non-maximal candidate gets a one-fact
    extension as witness; an inconsistent one gets none.
    """
    kind = kind.upper()
    if kind not in KINDS:
        raise ValueError(f"unknown repair kind {kind!r}")
    candidate = set(candidate)
    unknown = candidate - set(conflicts.vertices)
    if unknown:
        raise NotASubset(sorted(unknown))
    frame = frame or Frame(conflicts, kb.priority)
    m = frame.mask(candidate)
    if not frame.independent(m):
        return False, None
    for i in range(frame.n):
        if not m >> i & 1 and frame.addable(m, i):
            return False, _witness(frame, m, m | 1 << i, "pareto")
    if kind == "S":
        return True, None
    p = _pareto_witness(frame, m)
    if p is not None:
        return False, _witness(frame, m, p, "pareto")
    if kind == "P":
        return True, None
    g = _global_witness(frame, m)
    if g is not None:
        return False, _witness(frame, m, g, "global")
    if kind == "G":
        return True, None
    return _completion_check(frame, m), None


def greedy_completion_repair(kb: PrioritizedKB, conflicts: ConflictHypergraph,
                             order: Sequence[str]) -> Repair:
    """Run the greedy procedure, breaking ties by position in ``order``."""
    frame = Frame(conflicts, kb.priority)
    rank = {v: k for k, v in enumerate(order)}
    missing = [v for v in frame.ids if v not in rank]
    for v in missing:
        rank[v] = len(rank)
    todo, current = frame.full, 0
    while todo:
        frontier = [i for i in frame.bits(todo) if not frame.above[i] & todo]
        pick = min(frontier, key=lambda i: rank[frame.ids[i]])
        if frame.addable(current, pick):
            current |= 1 << pick
        todo &= ~(1 << pick)
    return Repair(frame.unmask(current), "C")


def enumerate_optimal(kb: PrioritizedKB, conflicts: ConflictHypergraph, kind: str,
                      force: bool = False) -> Iterator[Repair]:
    kind = kind.upper()
    check_size(len(conflicts.vertices), DESK_LIMIT, "ABox", force)
    frame = Frame(conflicts, kb.priority)
    for m in _mis(frame):
        ok = kind == "S" or _is_optimal(frame, m, kind)
        if ok:
            yield Repair(frame.unmask(m), kind)


def _is_optimal(frame: Frame, m: int, kind: str) -> bool:
    if _pareto_witness(frame, m) is not None:
        return False
    if kind == "P":
        return True
    if _global_witness(frame, m) is not None:
        return False
    if kind == "G":
        return True
    return _completion_check(frame, m)


def uniqueness(kb: PrioritizedKB, conflicts: ConflictHypergraph, kind: str, force: bool = False) -> bool:
    count = 0
    for _ in enumerate_optimal(kb, conflicts, kind, force):
        count += 1
        if count > 1:
            return False
    return count == 1
