"""Consistency, conflicts and BCQ entailment for DL-Lite_core / DL-Lite^H_horn.

Inconsistency is characterised by a finite set of clash patterns: small
conjunctive queries over concept and role names obtained by rewriting every
negative inclusion backwards through the positive inclusions. Matching the
patterns against an ABox yields inconsistent subsets, and the ⊆-minimal
images are the conflicts.

Entailment of Boolean conjunctive queries is decided on a depth-bounded
canonical model (restricted chase) built from the ABox.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import InconsistentInput
from .kb import (
    Assertion,
    AtomicConcept,
    BasicConcept,
    ConceptInclusion,
    ConflictHypergraph,
    Exists,
    PrioritizedKB,
    Role,
    RoleInclusion,
    TBox,
    basic_key,
    validate_kb,
)

# ------------------------------------------------------------------ queries


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[Var, str]


@dataclass(frozen=True)
class Atom:
    predicate: str
    terms: tuple[Term, ...]

    def __str__(self) -> str:
        def show(t):
            return str(t) if isinstance(t, Var) else f"'{t}'" if not t[:1].islower() else t
        return f"{self.predicate}({','.join(show(t) for t in self.terms)})"


@dataclass(frozen=True)
class BCQ:
    """A conjunctive query; Boolean when ``answer_vars`` is empty."""

    atoms: tuple[Atom, ...]
    answer_vars: tuple[Var, ...] = ()

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a query needs at least one atom")

    @property
    def variables(self) -> set[Var]:
        return {t for a in self.atoms for t in a.terms if isinstance(t, Var)}

    def bind(self, binding: dict) -> "BCQ":
        atoms = tuple(Atom(a.predicate, tuple(binding.get(t, t) for t in a.terms)) for a in self.atoms)
        return BCQ(atoms)

    def __str__(self) -> str:
        head = "q(" + ",".join(map(str, self.answer_vars)) + ")"
        return head + " :- " + ", ".join(map(str, self.atoms))


def parse_atom_shorthand(text: str) -> BCQ:
    """Build a BCQ from ``"Snake(a)"`` or ``"Eat(a,y)"``; lowercase single
    letters x, y, z, u, v, w are variables, everything else is a constant."""
    import re

    from .formats import parse_query_line

    names = set(re.findall(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*", text))
    return parse_query_line("q() :- " + text, individuals=names - set("xyzuvw"))


# ------------------------------------------------------------- TBox closure


def role_hierarchy(tbox: TBox) -> dict[Role, frozenset[Role]]:
    """Reflexive-transitive closure of the role inclusions, inverses included."""
    roles = {Role(r, inv) for r in _role_names(tbox) for inv in (False, True)}
    up: dict[Role, set[Role]] = {r: {r} for r in roles}
    for ax in tbox.axioms:
        if isinstance(ax, RoleInclusion) and not ax.negated:
            up[ax.lhs].add(ax.rhs)
            up[ax.lhs.inv()].add(ax.rhs.inv())
    changed = True
    while changed:
        changed = False
        for r in up:
            extra = set().union(*(up[s] for s in up[r]))
            if not extra <= up[r]:
                up[r] |= extra
                changed = True
    return {r: frozenset(s) for r, s in up.items()}


def _role_names(tbox: TBox) -> set[str]:
    names = set(tbox.roles)
    for ax in tbox.axioms:
        if isinstance(ax, RoleInclusion):
            names |= {ax.lhs.name, ax.rhs.name}
        else:
            for b in (*ax.lhs, ax.rhs):
                if isinstance(b, Exists):
                    names.add(b.role.name)
    return names


def _concept_names(tbox: TBox) -> set[str]:
    names = set(tbox.concepts)
    for ax in tbox.axioms:
        if isinstance(ax, ConceptInclusion):
            for b in (*ax.lhs, ax.rhs):
                if isinstance(b, AtomicConcept):
                    names.add(b.name)
    return names


@dataclass(frozen=True)
class ClosedTBox:
    """A TBox together with everything it entails between basic concepts."""

    tbox: TBox
    positive: frozenset[tuple[BasicConcept, BasicConcept]]
    negative: frozenset[tuple[BasicConcept, BasicConcept]]
    unsat_concepts: frozenset[BasicConcept]
    unsat_roles: frozenset[Role]
    roles_up: tuple[tuple[Role, frozenset[Role]], ...]

    @cached_property
    def sups(self) -> dict[Role, frozenset[Role]]:
        return dict(self.roles_up)

    @cached_property
    def patterns(self) -> tuple["UnsatPattern", ...]:
        return unsat_patterns(self)

    @property
    def role_names(self) -> tuple[str, ...]:
        return tuple(sorted({r.name for r, _ in self.roles_up}))

    @property
    def concept_names(self) -> tuple[str, ...]:
        return tuple(sorted(_concept_names(self.tbox)))

    def entails(self, lhs: BasicConcept, rhs: BasicConcept, negated: bool = False) -> bool:
        return (lhs, rhs) in (self.negative if negated else self.positive)

    def as_tbox(self) -> TBox:
        """The original axioms plus every derived unary inclusion."""
        axioms = list(self.tbox.axioms)
        have = set(axioms)
        for lhs, rhs in sorted(self.positive, key=lambda p: (basic_key(p[0]), basic_key(p[1]))):
            ax = ConceptInclusion((lhs,), rhs)
            if lhs != rhs and ax not in have:
                axioms.append(ax)
        for lhs, rhs in sorted(self.negative, key=lambda p: (basic_key(p[0]), basic_key(p[1]))):
            ax = ConceptInclusion((lhs,), rhs, True)
            if ax not in have:
                axioms.append(ax)
        return TBox(tuple(axioms), self.tbox.concepts, self.tbox.roles)

    # type reasoning ---------------------------------------------------

    @cached_property
    def _horn(self) -> list[tuple[frozenset, BasicConcept]]:
        return [(frozenset(ax.lhs), ax.rhs) for ax in self.tbox.axioms
                if isinstance(ax, ConceptInclusion) and not ax.negated]

    @cached_property
    def _ni(self) -> list[tuple[frozenset, BasicConcept]]:
        return [(frozenset(ax.lhs), ax.rhs) for ax in self.tbox.axioms
                if isinstance(ax, ConceptInclusion) and ax.negated]

    @cached_property
    def _nri(self) -> list[tuple[Role, Role]]:
        out = []
        for ax in self.tbox.axioms:
            if isinstance(ax, RoleInclusion) and ax.negated:
                out.append((ax.lhs, ax.rhs))
                out.append((ax.lhs.inv(), ax.rhs.inv()))
        return out

    def close_type(self, concepts: Iterable[BasicConcept]) -> frozenset[BasicConcept]:
        return close_type(self.tbox, self.sups, self._horn, concepts)

    def type_clash(self, concepts: frozenset[BasicConcept]) -> bool:
        """Whether a closed type violates a negative concept inclusion."""
        return any(lhs <= concepts and rhs in concepts for lhs, rhs in self._ni)

    def roles_clash(self, roles: Iterable[Role]) -> bool:
        """Whether a pair of elements linked by ``roles`` (already closed
        upwards) violates a negative role inclusion."""
        rs = set(roles)
        return any(s in rs and q in rs for s, q in self._nri)


def close_type(tbox, sups, horn, concepts) -> frozenset[BasicConcept]:
    out = set(concepts)
    changed = True
    while changed:
        changed = False
        for b in list(out):
            if isinstance(b, Exists):
                for r in sups.get(b.role, (b.role,)):
                    if Exists(r) not in out:
                        out.add(Exists(r))
                        changed = True
        for lhs, rhs in horn:
            if rhs not in out and lhs <= out:
                out.add(rhs)
                changed = True
    return frozenset(out)


@lru_cache(maxsize=256)
def close_tbox(tbox: TBox) -> ClosedTBox:
    sups = role_hierarchy(tbox)
    horn = [(frozenset(ax.lhs), ax.rhs) for ax in tbox.axioms
            if isinstance(ax, ConceptInclusion) and not ax.negated]
    ni = [(frozenset(ax.lhs), ax.rhs) for ax in tbox.axioms
          if isinstance(ax, ConceptInclusion) and ax.negated]
    nri = []
    for ax in tbox.axioms:
        if isinstance(ax, RoleInclusion) and ax.negated:
            nri += [(ax.lhs, ax.rhs), (ax.lhs.inv(), ax.rhs.inv())]

    roles = sorted(sups)
    basics: list[BasicConcept] = [AtomicConcept(c) for c in sorted(_concept_names(tbox))]
    basics += [Exists(r) for r in roles]

    def ctype(cs):
        return close_type(tbox, sups, horn, cs)

    def direct_clash(t):
        return any(lhs <= t and rhs in t for lhs, rhs in ni)

    # a role is unsatisfiable if the pair it links clashes, or the anonymous
    # successor it creates (or its source) has an unsatisfiable type
    unsat_roles = {r for r in roles if any(s in sups[r] and q in sups[r] for s, q in nri)}
    changed = True
    while changed:
        changed = False
        for r in roles:
            if r in unsat_roles:
                continue
            t = ctype({Exists(r.inv())})
            if direct_clash(t) or any(isinstance(b, Exists) and b.role in unsat_roles for b in t):
                unsat_roles |= {r, r.inv()}
                changed = True

    def unsat(t):
        return direct_clash(t) or any(isinstance(b, Exists) and b.role in unsat_roles for b in t)

    positive = set()
    unsat_concepts = set()
    closed = {}
    for b in basics:
        t = ctype({b})
        closed[b] = t
        for c in t:
            positive.add((b, c))
        if unsat(t):
            unsat_concepts.add(b)
    negative = set()
    for b, c in combinations(basics, 2):
        if unsat(ctype(closed[b] | closed[c])):
            negative.add((b, c))
            negative.add((c, b))
    for b in unsat_concepts:
        negative.add((b, b))
    return ClosedTBox(
        tbox=tbox,
        positive=frozenset(positive),
        negative=frozenset(negative),
        unsat_concepts=frozenset(unsat_concepts),
        unsat_roles=frozenset(unsat_roles),
        roles_up=tuple(sorted(sups.items())),
    )


# ------------------------------------------------------ clash-pattern rewriting

# Internal query atoms: ("C", basic, v) and ("R", role_name, v, w); variables
# are small ints. ABox-level patterns use Atom/Var instead.


def _vars_of(atom) -> tuple:
    return atom[2:] if atom[0] == "R" else (atom[2],)


def _canon(q: frozenset) -> frozenset:
    vs = sorted({v for a in q for v in _vars_of(a)})
    best = None
    for perm in permutations(range(len(vs))):
        m = dict(zip(vs, perm))
        cand = tuple(sorted(
            (a[0], a[1], m[a[2]], m[a[3]]) if a[0] == "R" else (a[0], basic_key(a[1]), m[a[2]])
            for a in q))
        if best is None or cand < best[0]:
            best = (cand, m)
    m = best[1]
    return frozenset((a[0], a[1], m[a[2]], m[a[3]]) if a[0] == "R" else (a[0], a[1], m[a[2]]) for a in q)


def _normalize(q: frozenset) -> frozenset:
    q = set(q)
    while True:
        count = defaultdict(int)
        for a in q:
            for v in _vars_of(a):
                count[v] += 1
        change = False
        for a in list(q):
            if a[0] == "C" and isinstance(a[1], Exists):
                r, v = a[1].role, a[2]
                if any(b[0] == "R" and b[1] == r.name and (b[3] if r.inverse else b[2]) == v for b in q):
                    q.discard(a)
                    change = True
        if change:
            continue
        for a in list(q):
            if a[0] == "R":
                _, p, v, w = a
                if v != w and count[w] == 1:
                    q.discard(a)
                    q.add(("C", Exists(Role(p)), v))
                    change = True
                    break
                if v != w and count[v] == 1:
                    q.discard(a)
                    q.add(("C", Exists(Role(p, True)), w))
                    change = True
                    break
        if not change:
            return _canon(frozenset(q))


def _role_atom(role: Role, v, w):
    return ("R", role.name, w, v) if role.inverse else ("R", role.name, v, w)


def _rewrite_steps(q: frozenset, tbox: TBox) -> Iterator[frozenset]:
    cis = [ax for ax in tbox.axioms if isinstance(ax, ConceptInclusion) and not ax.negated]
    ris = []
    for ax in tbox.axioms:
        if isinstance(ax, RoleInclusion) and not ax.negated:
            ris += [(ax.lhs, ax.rhs), (ax.lhs.inv(), ax.rhs.inv())]
    count = defaultdict(int)
    for a in q:
        for v in _vars_of(a):
            count[v] += 1
    for a in q:
        rest = q - {a}
        if a[0] == "C":
            b, v = a[1], a[2]
            for ax in cis:
                if ax.rhs == b:
                    yield rest | {("C", c, v) for c in ax.lhs}
            if isinstance(b, Exists):
                for s, r in ris:
                    if r == b.role:
                        yield rest | {("C", Exists(s), v)}
                if count[v] == 1:
                    yield rest | {("C", Exists(b.role.inv()), v)}
        else:
            _, p, v, w = a
            for s, r in ris:
                if r == Role(p):
                    yield rest | {_role_atom(s, v, w)}
                elif r == Role(p, True):
                    yield rest | {_role_atom(s.inv(), v, w)}
    # unification of two atoms over the same predicate
    atoms = sorted(q, key=repr)
    for a, b in combinations(atoms, 2):
        if a[0] != b[0] or a[1] != b[1]:
            continue
        sub: dict = {}

        def res(x):
            while x in sub:
                x = sub[x]
            return x

        for x, y in zip(_vars_of(a), _vars_of(b)):
            x, y = res(x), res(y)
            if x != y:
                sub[max(x, y)] = min(x, y)
        yield frozenset(
            (c[0], c[1], res(c[2]), res(c[3])) if c[0] == "R" else (c[0], c[1], res(c[2])) for c in q)


def _initial_queries(tbox: TBox) -> list[frozenset]:
    out = []
    for ax in tbox.axioms:
        if isinstance(ax, ConceptInclusion) and ax.negated:
            out.append(frozenset({("C", b, 0) for b in ax.lhs} | {("C", ax.rhs, 0)}))
        elif isinstance(ax, RoleInclusion) and ax.negated:
            out.append(frozenset({_role_atom(ax.lhs, 0, 1), _role_atom(ax.rhs, 0, 1)}))
    return out


def rewrite_clashes(tbox: TBox, limit: int = 20000) -> set[frozenset]:
    """All rewritings of the negative inclusions (internal representation)."""
    seen: set[frozenset] = set()
    frontier = [_normalize(q) for q in _initial_queries(tbox)]
    seen.update(frontier)
    while frontier:
        nxt = []
        for q in frontier:
            for r in _rewrite_steps(q, tbox):
                r = _normalize(r)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
                    if len(seen) > limit:
                        raise RuntimeError("clash rewriting did not converge")
        frontier = nxt
    return seen


@dataclass(frozen=True)
class UnsatPattern:
    """A conjunction of ABox atoms whose matches witness inconsistency."""

    atoms: tuple[Atom, ...]

    @property
    def arity(self) -> int:
        return len(self.atoms)

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.atoms)) + "}"


def _to_abox_atoms(q: frozenset) -> list[tuple]:
    fresh = max((v for a in q for v in _vars_of(a)), default=-1) + 1
    out = []
    for a in q:
        if a[0] == "R":
            out.append((a[1], (a[2], a[3])))
        elif isinstance(a[1], AtomicConcept):
            out.append((a[1].name, (a[2],)))
        else:
            r = a[1].role
            out.append((r.name, (fresh, a[2]) if r.inverse else (a[2], fresh)))
            fresh += 1
    return out


def _canon_pattern(atoms) -> tuple:
    atoms = set(atoms)
    vs = sorted({v for _, args in atoms for v in args})
    best = None
    for perm in permutations(range(len(vs))):
        m = dict(zip(vs, perm))
        cand = tuple(sorted((p, tuple(m[x] for x in args)) for p, args in atoms))
        if best is None or cand < best:
            best = cand
    return best


def _merge_closure(patterns: set) -> set:
    """Close under identifying two atoms over the same predicate."""
    out = set(patterns)
    todo = list(patterns)
    while todo:
        p = todo.pop()
        for (pa, aa), (pb, ab) in combinations(p, 2):
            if pa != pb or len(aa) != len(ab):
                continue
            sub = {}

            def res(x):
                while x in sub:
                    x = sub[x]
                return x

            for x, y in zip(aa, ab):
                x, y = res(x), res(y)
                if x != y:
                    sub[max(x, y)] = min(x, y)
            merged = _canon_pattern((pr, tuple(res(x) for x in args)) for pr, args in p)
            if merged not in out:
                out.add(merged)
                todo.append(merged)
    return out


def _injective_hom(p: tuple, q: tuple) -> bool:
    """Is there a variable mapping sending the atoms of p injectively into q?"""
    def rec(i, m, used):
        if i == len(p):
            return True
        pred, args = p[i]
        for j, (qp, qargs) in enumerate(q):
            if j in used or qp != pred or len(qargs) != len(args):
                continue
            m2 = dict(m)
            if all(m2.setdefault(x, y) == y for x, y in zip(args, qargs)):
                if rec(i + 1, m2, used | {j}):
                    return True
        return False
    return rec(0, {}, frozenset())


def unsat_patterns(ctbox: ClosedTBox) -> tuple[UnsatPattern, ...]:
    """Clash patterns: an ABox is T-inconsistent iff one of them matches.

    The set is closed under merging atoms with the same predicate, so every
    conflict is matched injectively by a pattern with exactly as many atoms.
    """
    raw = {_canon_pattern(_to_abox_atoms(q)) for q in rewrite_clashes(ctbox.tbox)}
    pats = _merge_closure(raw)
    ordered = sorted(pats, key=lambda p: (len(p), p))
    kept: list[tuple] = []
    for p in ordered:
        if not any(_injective_hom(k, p) for k in kept):
            kept.append(p)
    out = []
    for p in kept:
        out.append(UnsatPattern(tuple(Atom(pr, tuple(Var(f"x{v}") for v in args)) for pr, args in p)))
    return tuple(out)


# ------------------------------------------------------------ pattern matching


def _index(abox: Iterable[Assertion]) -> dict[tuple[str, int], list[Assertion]]:
    idx: dict[tuple[str, int], list[Assertion]] = defaultdict(list)
    for a in abox:
        idx[(a.predicate, len(a.args))].append(a)
    return idx


def match_pattern(pattern: UnsatPattern, idx) -> Iterator[tuple[str, ...]]:
    """Yield the assertion ids matched by each atom, in pattern order."""
    atoms = pattern.atoms

    def rec(i, binding, chosen):
        if i == len(atoms):
            yield tuple(chosen)
            return
        atom = atoms[i]
        for a in idx.get((atom.predicate, len(atom.terms)), ()):
            b = dict(binding)
            if all(b.setdefault(t, c) == c if isinstance(t, Var) else t == c
                   for t, c in zip(atom.terms, a.args)):
                yield from rec(i + 1, b, chosen + [a.id])

    yield from rec(0, {}, [])


def is_consistent(ctbox: ClosedTBox, abox_subset: Iterable[Assertion]) -> bool:
    idx = _index(abox_subset)
    return not any(next(match_pattern(p, idx), None) is not None for p in ctbox.patterns)


def conflicts(ctbox: ClosedTBox, abox: Sequence[Assertion]) -> ConflictHypergraph:
    """Minimal T-inconsistent subsets (singletons included if present)."""
    idx = _index(abox)
    images = set()
    for p in ctbox.patterns:
        for m in match_pattern(p, idx):
            images.add(frozenset(m))
    minimal = [s for s in images if not any(t < s for t in images)]
    return ConflictHypergraph.of((a.id for a in abox), minimal)


# --------------------------------------------------------------------- chase


@dataclass
class Chase:
    """A depth-bounded canonical model: element types and role edges."""

    types: dict[str, set[BasicConcept]]
    edges: set[tuple[str, str, str]]
    depth: dict[str, int]

    def concept_facts(self) -> set[tuple[str, str]]:
        return {(b.name, e) for e, t in self.types.items() for b in t if isinstance(b, AtomicConcept)}


def chase(ctbox: ClosedTBox, abox: Iterable[Assertion], depth: int) -> Chase:
    """Canonical model cut at ``depth`` anonymous levels.

    Closed types already contain every ``exists S`` implied by the role
    hierarchy, so new anonymous successors never change their parent's type:
    the named part is saturated once and the trees are then grown breadth
    first.
    """
    sups = ctbox.sups
    types: dict[str, set[BasicConcept]] = defaultdict(set)
    edges: set[tuple[str, str, str]] = set()
    elem_depth: dict[str, int] = {}
    # roles along which an element already has a successor
    has: dict[str, set[Role]] = defaultdict(set)

    def add_edge(role: Role, e, f):
        for r in sups.get(role, (role,)):
            edges.add((r.name, f, e) if r.inverse else (r.name, e, f))
            has[e].add(r)
            has[f].add(r.inv())

    for a in abox:
        for x in a.args:
            elem_depth.setdefault(x, 0)
            types[x]
        if a.is_role:
            add_edge(Role(a.predicate), *a.args)
        else:
            types[a.args[0]].add(AtomicConcept(a.predicate))
    for x in list(types):
        types[x] = set(ctbox.close_type(types[x] | {Exists(r) for r in has[x]}))

    frontier = sorted(types)
    while frontier:
        nxt = []
        for x in frontier:
            if elem_depth[x] >= depth:
                continue
            for b in sorted((b for b in types[x] if isinstance(b, Exists)), key=basic_key):
                r = b.role
                if r in has[x]:
                    continue
                y = f"{x}.∃{r.name}{'⁻' if r.inverse else ''}"
                elem_depth[y] = elem_depth[x] + 1
                types[y] = set(ctbox.close_type({Exists(r.inv())}))
                add_edge(r, x, y)
                nxt.append(y)
        frontier = nxt
    return Chase(dict(types), edges, elem_depth)


def chase_consistent(ctbox: ClosedTBox, abox: Iterable[Assertion]) -> bool:
    """Consistency decided on the canonical model, without clash patterns."""
    c = chase(ctbox, abox, 2 * len(ctbox.role_names) + 2)
    if any(ctbox.type_clash(frozenset(t)) for t in c.types.values()):
        return False
    pairs: dict[tuple[str, str], set[Role]] = defaultdict(set)
    for n, e, f in c.edges:
        pairs[(e, f)].add(Role(n))
        pairs[(f, e)].add(Role(n, True))
    return not any(ctbox.roles_clash(rs) for rs in pairs.values())


def default_depth(ctbox: ClosedTBox, q: BCQ) -> int:
    return len(ctbox.role_names) + len(q.atoms)


def holds_in(c: Chase, q: BCQ) -> bool:
    concept = defaultdict(set)
    for name, e in c.concept_facts():
        concept[name].add(e)
    role = defaultdict(set)
    for n, e, f in c.edges:
        role[n].add((e, f))
    atoms = sorted(q.atoms, key=lambda a: -sum(not isinstance(t, Var) for t in a.terms))

    def rec(i, b):
        if i == len(atoms):
            return True
        a = atoms[i]
        if len(a.terms) == 1:
            (t,) = a.terms
            cands = [(e,) for e in concept.get(a.predicate, ())]
        else:
            cands = list(role.get(a.predicate, ()))
        for tup in cands:
            b2 = dict(b)
            if all(b2.setdefault(t, v) == v if isinstance(t, Var) else t == v for t, v in zip(a.terms, tup)):
                if rec(i + 1, b2):
                    return True
        return False

    return rec(0, {})


def entails_bcq(ctbox: ClosedTBox, abox_subset: Iterable[Assertion], q: BCQ,
                depth: Optional[int] = None, check: bool = True) -> bool:
    abox_subset = list(abox_subset)
    if check and not is_consistent(ctbox, abox_subset):
        raise InconsistentInput("entailment over an inconsistent set of assertions")
    d = default_depth(ctbox, q) if depth is None else depth
    return holds_in(chase(ctbox, abox_subset, d), q)


# ------------------------------------------------------------ KB preparation


def kb_conflicts(kb: PrioritizedKB) -> ConflictHypergraph:
    if kb.hypergraph_mode:
        return ConflictHypergraph.of(kb.ids, kb.hyperedges)
    return conflicts(close_tbox(kb.tbox), kb.abox)


def prepare(kb: PrioritizedKB) -> tuple[PrioritizedKB, ConflictHypergraph]:
    """Compute conflicts, validate, and return the cleaned KB with its hypergraph."""
    raw = kb_conflicts(kb)
    vkb = validate_kb(kb, raw)
    edges = [e for e in raw.edges if len(e) >= 2 and not (e & set(vkb.removed))]
    return vkb, ConflictHypergraph.of(vkb.ids, edges)
