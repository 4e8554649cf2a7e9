"""Abstract argumentation with collective attacks and preferences.

A plain AF is a SETAF whose attack sources are singletons, and a PAF is a
PSETAF of that shape, so one pair of types covers all four frameworks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .kb import ConflictHypergraph, PrioritizedKB, check_size, find_cycle

Attack = tuple[frozenset[str], str]
SEMANTICS = ("grounded", "complete", "preferred", "stable")
DESK_LIMIT = 22


@dataclass(frozen=True)
class SETAF:
    arguments: tuple[str, ...]
    attacks: frozenset[Attack]

    def __post_init__(self):
        args = set(self.arguments)
        for s, b in self.attacks:
            if not s:
                raise ValueError("attack source must be non-empty")
            if not s <= args or b not in args:
                raise ValueError(f"attack {sorted(s)} -> {b} mentions an unknown argument")

    @classmethod
    def of(cls, arguments: Iterable[str], attacks: Iterable[tuple[Iterable[str], str]]) -> "SETAF":
        return cls(tuple(sorted(set(arguments))), frozenset((frozenset(s), b) for s, b in attacks))

    @property
    def k(self) -> int:
        return max((len(s) for s, _ in self.attacks), default=0)

    @property
    def is_af(self) -> bool:
        return all(len(s) == 1 for s, _ in self.attacks)

    def sorted_attacks(self) -> list[tuple[tuple[str, ...], str]]:
        return sorted((tuple(sorted(s)), b) for s, b in self.attacks)


def af(arguments: Iterable[str], pairs: Iterable[tuple[str, str]]) -> SETAF:
    """A Dung AF given by ordinary attack pairs."""
    return SETAF.of(arguments, (({a}, b) for a, b in pairs))


@dataclass(frozen=True)
class PSETAF:
    setaf: SETAF
    preference: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        cycle = find_cycle(self.setaf.arguments, self.preference)
        if cycle:
            raise ValueError("preference relation is cyclic: " + " > ".join(cycle))

    @property
    def arguments(self) -> tuple[str, ...]:
        return self.setaf.arguments

    @property
    def attacks(self) -> frozenset[Attack]:
        return self.setaf.attacks


@dataclass(frozen=True)
class Extension:
    arguments: frozenset[str]
    semantics: str

    def sorted(self) -> tuple[str, ...]:
        return tuple(sorted(self.arguments))


# ------------------------------------------------------------ construction


def kb_to_psetaf(kb: PrioritizedKB, conflicts: ConflictHypergraph) -> PSETAF:
    attacks = []
    for c in conflicts.edges:
        for a in c:
            attacks.append((c - {a}, a))
    return PSETAF(SETAF.of(conflicts.vertices, attacks), frozenset(kb.priority))


def reduce_preferences(p: PSETAF) -> SETAF:
    pref = p.preference
    kept = [(s, a) for s, a in p.attacks if not any((a, b) in pref for b in s)]
    return SETAF(p.arguments, frozenset(kept))


# ------------------------------------------------------------------ solver


class _Core:
    """Bitmask encoding of a SETAF."""

    def __init__(self, f: SETAF):
        self.args = list(f.arguments)
        self.index = {a: i for i, a in enumerate(self.args)}
        self.n = len(self.args)
        self.full = (1 << self.n) - 1
        self.attackers: list[list[int]] = [[] for _ in range(self.n)]
        self.attacks: list[tuple[int, int]] = []
        for s, b in f.attacks:
            m = 0
            for a in s:
                m |= 1 << self.index[a]
            self.attackers[self.index[b]].append(m)
            self.attacks.append((m, self.index[b]))

    def unmask(self, m: int) -> frozenset[str]:
        return frozenset(self.args[i] for i in range(self.n) if m >> i & 1)

    def plus(self, e: int) -> int:
        out = 0
        for s, b in self.attacks:
            if s & e == s:
                out |= 1 << b
        return out

    def conflict_free(self, e: int) -> bool:
        return not any(s & e == s and e >> b & 1 for s, b in self.attacks)

    def defended(self, e: int) -> int:
        p = self.plus(e)
        out = 0
        for b in range(self.n):
            if all(s & p for s in self.attackers[b]):
                out |= 1 << b
        return out

    def grounded(self, steps: Optional[int] = None) -> int:
        e, k = 0, 0
        while steps is None or k < steps:
            nxt = self.defended(e)
            k += 1
            if nxt == e:
                break
            e = nxt
        return e

    def conflict_free_sets(self) -> Iterator[int]:
        """Depth-first over conflict-free sets, adding arguments in index order."""
        def rec(i, e):
            if i == self.n:
                yield e
                return
            with_i = e | 1 << i
            # only attacks that lie inside {0..i} can be completed at this point
            if all(not (s & with_i == s and with_i >> b & 1) for s, b in self.attacks
                   if (s | 1 << b) >> (i + 1) == 0):
                yield from rec(i + 1, with_i)
            yield from rec(i + 1, e)
        yield from rec(0, 0)


def _label_sort(masks: Iterable[frozenset[str]], sem: str) -> list[Extension]:
    return [Extension(m, sem) for m in sorted(set(masks), key=lambda s: (len(s), sorted(s)))]


def extensions(f: SETAF, sem: str, force: bool = False) -> list[Extension]:
    if sem not in SEMANTICS:
        raise ValueError(f"unknown semantics {sem!r}")
    core = _Core(f)
    if sem == "grounded":
        return [Extension(core.unmask(core.grounded()), "grounded")]
    check_size(core.n, DESK_LIMIT, "framework", force)
    found = []
    for e in core.conflict_free_sets():
        if sem == "stable":
            if core.plus(e) == core.full & ~e:
                found.append(e)
            continue
        d = core.defended(e)
        if sem == "complete" and d == e:
            found.append(e)
        elif sem == "preferred" and e & d == e:
            found.append(e)
    if sem == "preferred":
        found = [e for e in found if not any(o != e and o & e == e for o in found)]
    return _label_sort((core.unmask(e) for e in found), sem)


def grounded_extension(f: SETAF) -> frozenset[str]:
    core = _Core(f)
    return core.unmask(core.grounded())


def gamma(f: SETAF, d: int) -> frozenset[str]:
    """``d`` applications of the characteristic function to the empty set."""
    if d < 1:
        raise ValueError("depth must be at least 1")
    core = _Core(f)
    return core.unmask(core.grounded(d))


def is_coherent(f: SETAF, force: bool = False) -> tuple[bool, Optional[Extension]]:
    stable = {e.arguments for e in extensions(f, "stable", force)}
    bad = [e for e in extensions(f, "preferred", force) if e.arguments not in stable]
    if not bad:
        return True, None
    return False, min(bad, key=lambda e: e.sorted())


# ---------------------------------------------------------------- symmetry


def _irreflexive(f: SETAF) -> bool:
    return not any(b in s for s, b in f.attacks)


def satisfies_symm1(f: SETAF) -> bool:
    by_target: dict[str, list[frozenset[str]]] = {}
    for s, b in f.attacks:
        by_target.setdefault(b, []).append(s)
    for s, b in f.attacks:
        for a in s:
            if not any(b in t for t in by_target.get(a, ())):
                return False
    return True


def satisfies_symm2(f: SETAF) -> bool:
    return all((s - {a} | {b}, a) in f.attacks for s, b in f.attacks for a in s)


def classify_symmetry(x) -> set[str]:
    f = x.setaf if isinstance(x, PSETAF) else x
    labels = set()
    irr = _irreflexive(f)
    if f.is_af and irr and all((frozenset({b}), next(iter(s))) in f.attacks for s, b in f.attacks):
        labels.add("symmetric_paf")
    if irr and satisfies_symm1(f):
        labels.add("symm1_setaf")
    if irr and satisfies_symm2(f):
        labels.add("strongly_symmetric")
    return labels


def recover_symmetric_paf(f: SETAF) -> Optional[PSETAF]:
    """Find a symmetric PAF whose reduction is ``f``.

    Exists iff the one-way attacks form an acyclic graph (each cycle then
    uses some attack whose converse is present). Self-attacks cannot come from
    an irreflexive PAF, so they yield None.
    """
    if not f.is_af:
        raise ValueError("expected a plain AF")
    pairs = {(next(iter(s)), b) for s, b in f.attacks}
    if any(a == b for a, b in pairs):
        return None
    one_way = {(a, b) for a, b in pairs if (b, a) not in pairs}
    if find_cycle(f.arguments, one_way):
        return None
    closed = pairs | {(b, a) for a, b in pairs}
    return PSETAF(af(f.arguments, closed), frozenset(one_way))
