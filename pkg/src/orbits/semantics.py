"""Query answering under repair-based and argumentation-based semantics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .argumentation import gamma, grounded_extension, kb_to_psetaf, reduce_preferences
from .dllite import BCQ, close_tbox, entails_bcq
from .errors import NotAPreorder
from .kb import ConflictHypergraph, PrioritizedKB, check_size
from .repairs import enumerate_optimal

MODES = ("AR", "IAR", "brave")


@dataclass(frozen=True)
class SemanticsSpec:
    """Either (kind, mode) or one of grounded / grounded_d / elect."""

    kind: Optional[str] = None
    mode: Optional[str] = None
    special: Optional[str] = None
    depth: Optional[int] = None

    def __post_init__(self):
        if self.special is None:
            if self.kind not in ("S", "P", "G", "C") or self.mode not in MODES:
                raise ValueError(f"bad semantics {self.kind}-{self.mode}")
        elif self.special not in ("grounded", "grounded_d", "elect"):
            raise ValueError(f"unknown semantics {self.special}")
        elif self.special == "grounded_d" and (self.depth is None or self.depth < 1):
            raise ValueError("grounded_d needs a depth of at least 1")


def _holds(kb: PrioritizedKB, ids: Iterable[str], q: BCQ) -> bool:
    by_id = kb.by_id()
    return entails_bcq(close_tbox(kb.tbox), [by_id[i] for i in ids], q, check=False)


def entails(kb: PrioritizedKB, conflicts: ConflictHypergraph, q: BCQ, spec: SemanticsSpec,
            force: bool = False) -> bool:
    if spec.special == "grounded":
        return grounded_entails(kb, conflicts, q)
    if spec.special == "grounded_d":
        return _holds(kb, grounded_approx(kb, conflicts, spec.depth), q)
    if spec.special == "elect":
        return _holds(kb, elect(kb, conflicts), q)
    repairs = [r.ids for r in enumerate_optimal(kb, conflicts, spec.kind, force)]
    if spec.mode == "IAR":
        inter = frozenset.intersection(*repairs) if repairs else frozenset()
        return _holds(kb, inter, q)
    if spec.mode == "AR":
        return all(_holds(kb, r, q) for r in repairs)
    return any(_holds(kb, r, q) for r in repairs)


def _framework(kb: PrioritizedKB, conflicts: ConflictHypergraph):
    return reduce_preferences(kb_to_psetaf(kb, conflicts))


def grounded_set(kb: PrioritizedKB, conflicts: ConflictHypergraph) -> frozenset[str]:
    return grounded_extension(_framework(kb, conflicts))


def grounded_entails(kb: PrioritizedKB, conflicts: ConflictHypergraph, q: BCQ) -> bool:
    return _holds(kb, grounded_set(kb, conflicts), q)


def grounded_approx(kb: PrioritizedKB, conflicts: ConflictHypergraph, d: int) -> frozenset[str]:
    return gamma(_framework(kb, conflicts), d)


def elect(kb: PrioritizedKB, conflicts: ConflictHypergraph) -> frozenset[str]:
    prio = kb.priority
    out = set()
    for a in conflicts.vertices:
        if all(any((a, b) in prio for b in c if b != a) for c in conflicts.edges if a in c):
            out.add(a)
    return frozenset(out)


# ------------------------------------------------------------ partial preorders


@dataclass(frozen=True)
class PartialPreorder:
    pairs: frozenset[tuple[str, str]]

    @classmethod
    def generated(cls, pairs: Iterable[tuple[str, str]], ids: Iterable[str]) -> "PartialPreorder":
        """Reflexive-transitive closure of ``pairs`` over ``ids``."""
        rel = {(i, i) for i in ids} | set(pairs)
        nodes = {x for p in rel for x in p}
        changed = True
        while changed:
            extra = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
            changed = bool(extra)
            rel |= extra
        return cls(frozenset(rel | {(n, n) for n in nodes}))

    def strict(self) -> set[tuple[str, str]]:
        return {(a, b) for a, b in self.pairs if (b, a) not in self.pairs}

    def check(self, ids: Iterable[str]) -> None:
        missing = [i for i in ids if (i, i) not in self.pairs]
        if missing:
            raise NotAPreorder(f"not reflexive on {', '.join(sorted(missing))}")
        succ: dict[str, set[str]] = {}
        for a, b in self.pairs:
            succ.setdefault(a, set()).add(b)
        for a, b in self.pairs:
            for c in succ.get(b, ()):
                if (a, c) not in self.pairs:
                    raise NotAPreorder(f"not transitive: {a} >= {b} >= {c} but not {a} >= {c}")


def induced_priority(conflicts: ConflictHypergraph, strict: Iterable[tuple[str, str]]) -> frozenset:
    pairs = conflicts.conflicting_pairs()
    return frozenset((a, b) for a, b in strict if frozenset((a, b)) in pairs)


def _intersection(kb, conflicts, kind, force=False) -> frozenset[str]:
    reps = [r.ids for r in enumerate_optimal(kb, conflicts, kind, force)]
    return frozenset.intersection(*reps) if reps else frozenset()


def partial_pr(kb: PrioritizedKB, preorder: PartialPreorder, conflicts: ConflictHypergraph,
               literal: bool = False, force: bool = False) -> frozenset[str]:
    """Intersection of preferred repairs over all total extensions of a preorder.

    By default this is the intersection of the completion-optimal repairs
    under the induced priority; ``literal=True`` enumerates the total
    extensions instead (small inputs only).
    """
    ids = sorted(conflicts.vertices)
    preorder.check(ids)
    if not literal:
        return _intersection(kb.with_priority(induced_priority(conflicts, preorder.strict())), conflicts, "C", force)
    check_size(len(ids), 8, "ABox for literal partial_pr", force)
    result: Optional[frozenset[str]] = None
    seen: dict[frozenset, frozenset[str]] = {}
    for levels in total_extensions(ids, preorder):
        strict = {(a, b) for a in ids for b in ids if levels[a] > levels[b]}
        prio = induced_priority(conflicts, strict)
        if prio not in seen:
            # total preorders induce score-structured priorities, so P suffices
            seen[prio] = _intersection(kb.with_priority(prio), conflicts, "P", force)
        result = seen[prio] if result is None else result & seen[prio]
    return result if result is not None else frozenset(ids)


def total_extensions(ids: list[str], preorder: PartialPreorder) -> Iterator[dict[str, int]]:
    """Total preorders (as level maps, higher is better) extending ``preorder``:
    weak pairs keep their direction and strict pairs stay strict."""
    weak = {(a, b) for a, b in preorder.pairs if a != b}
    strict = preorder.strict()

    def rec(remaining: frozenset, level: int, acc: dict):
        if not remaining:
            yield dict(acc)
            return
        rem = sorted(remaining)
        n = len(rem)
        for mask in range(1, 1 << n):
            block = {rem[i] for i in range(n) if mask >> i & 1}
            # everything above a block member must already be placed or in the block
            if any(b in block and a in remaining and a not in block for a, b in weak):
                continue
            if any(a in block and b in block for a, b in strict):
                continue
            for x in block:
                acc[x] = level
            yield from rec(remaining - block, level - 1, acc)
            for x in block:
                del acc[x]

    yield from rec(frozenset(ids), len(ids), {})

