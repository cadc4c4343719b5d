"""Finite groups as Cayley tables, subgroups, cosets, double cosets and conjugation.

Every group carries ``root_index``: the index of each element inside the outermost
("root") group it was cut out of. Groups built from a subgroup (:func:`as_group`)
share the root with their parent, which is what lets restriction, induction and
conjugation move data between a group and its subgroups.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as iproduct

from .errors import (
    GroupTooLarge,
    InverseMissing,
    MalformedInput,
    NoIdentity,
    NonAssociative,
    NotNormal,
)


def max_group_order() -> int:
    return int(os.environ.get("MACKEYKIT_MAX_GROUP", "512"))


@dataclass(eq=False)
class Group:
    """Validated finite group on indices ``0..order-1``; index 0 is the identity.

    Equality is identity: every cache downstream keys on the group object.
    """

    table: tuple[tuple[int, ...], ...]
    name: str = ""
    labels: tuple | None = None  # e.g. permutation images, for display only
    parent: "Group | None" = None
    root_index: tuple[int, ...] = ()
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.root_index:
            self.root_index = tuple(range(len(self.table)))

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"Group({self.name or '?'}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def root(self) -> "Group":
        g = self
        while g.parent is not None:
            g = g.parent
        return g

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for a, row in enumerate(self.table):
            inv[a] = row.index(0)
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, h: int) -> int:
        """``g h g^-1``."""
        return self.table[self.table[g][h]][self.inverses[g]]

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in index order."""
        gens: list[int] = []
        span = {0}
        for a in range(self.order):
            if a not in span:
                gens.append(a)
                span = set(closure(self, gens))
        return tuple(gens)

    @cached_property
    def local_index(self) -> dict[int, int]:
        """Root element index -> index in this group."""
        return {r: i for i, r in enumerate(self.root_index)}

    @property
    def elements(self) -> range:
        return range(self.order)

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))


@dataclass(frozen=True)
class Subgroup:
    """Sorted, duplicate-free element indices of ``group``, closed under products."""

    group: Group
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def index(self) -> int:
        return self.group.order // self.order

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __repr__(self):
        return f"Subgroup({list(self.elements)})"

    @cached_property
    def generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        span = {0}
        for a in self.elements:
            if a not in span:
                gens.append(a)
                span = set(closure(self.group, gens))
        return tuple(gens)


# ---------------------------------------------------------------------------
# construction


def _check_table(table: list[list[int]]) -> None:
    n = len(table)
    if n == 0:
        raise MalformedInput("empty Cayley table")
    for row in table:
        if len(row) != n or any(not isinstance(x, int) or not 0 <= x < n for x in row):
            raise MalformedInput("Cayley table must be square with entries in 0..n-1")
    ids = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    e = ids[0]
    for a in range(n):
        if not any(table[a][b] == e and table[b][a] == e for b in range(n)):
            raise InverseMissing(f"element {a} has no two-sided inverse", element=a)
    for a, b, c in iproduct(range(n), repeat=3):
        if table[a][table[b][c]] != table[table[a][b]][c]:
            raise NonAssociative(
                f"mul({a}, mul({b}, {c})) != mul(mul({a}, {b}), {c})", triple=[a, b, c]
            )


def from_cayley(table, name: str = "") -> Group:
    """Validate a Cayley table and relabel so the identity is index 0.

    The remaining elements keep their relative order, which is the breadth-first
    order over the generator list "all elements in input order".
    """
    table = [list(r) for r in table]
    if len(table) > max_group_order():
        raise GroupTooLarge(f"|G| = {len(table)} exceeds the bound {max_group_order()}", order=len(table))
    _check_table(table)
    n = len(table)
    e = next(x for x in range(n) if all(table[x][y] == y for y in range(n)))
    order = [e] + [x for x in range(n) if x != e]
    pos = {x: i for i, x in enumerate(order)}
    new = tuple(tuple(pos[table[a][b]] for b in order) for a in order)
    return Group(new, name=name)


def _compose(p, q):  # (p * q)(i) = p(q(i)): apply q first
    return tuple(p[i] for i in q)


def from_permutations(degree: int, generators, name: str = "") -> Group:
    """Close permutation generators by breadth-first search over words.

    The element order is identity first, then shortlex over generator words
    (each element named by its first word to appear), so the result is
    deterministic for a given generator list.
    """
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if sorted(g) != list(range(degree)):
            raise MalformedInput(f"{list(g)} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    ident = tuple(range(degree))
    seen = {ident: 0}
    order = [ident]
    queue = deque([ident])
    limit = max_group_order()
    while queue:
        w = queue.popleft()
        for s in gens:
            x = _compose(w, s)
            if x not in seen:
                seen[x] = len(order)
                order.append(x)
                if len(order) > limit:
                    raise GroupTooLarge(f"group order exceeds {limit}")
                queue.append(x)
    table = tuple(tuple(seen[_compose(a, b)] for b in order) for a in order)
    return Group(table, name=name, labels=tuple(order))


def load_group(desc: dict) -> Group:
    """Build a group from a JSON-style descriptor.

    ``{"kind": "cayley", "table": [[...]]}``, ``{"kind": "perm", "degree": n,
    "generators": [[...]]}`` or ``{"kind": "named", "name": "S3"}``.
    """
    if not isinstance(desc, dict) or "kind" not in desc:
        raise MalformedInput("group descriptor must be an object with a 'kind'")
    kind = desc["kind"]
    if kind == "cayley":
        return from_cayley(desc["table"], name=desc.get("name", ""))
    if kind == "perm":
        return from_permutations(int(desc["degree"]), desc.get("generators", []), name=desc.get("name", ""))
    if kind == "named":
        return named_group(desc["name"])
    raise MalformedInput(f"unknown group kind {kind!r}")


def cyclic_descriptor(n: int) -> dict:
    return {"kind": "perm", "degree": n, "generators": [[(i + 1) % n for i in range(n)]] if n > 1 else [], "name": f"C{n}"}


_NAMED = {
    "S3": {"kind": "perm", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]},
    "A3": {"kind": "perm", "degree": 3, "generators": [[1, 2, 0]]},
    # symmetries of a square, vertices 0..3 in cyclic order
    "D4": {"kind": "perm", "degree": 4, "generators": [[1, 2, 3, 0], [3, 2, 1, 0]]},
    "S4": {"kind": "perm", "degree": 4, "generators": [[1, 0, 2, 3], [1, 2, 3, 0]]},
    "A4": {"kind": "perm", "degree": 4, "generators": [[1, 2, 0, 3], [1, 0, 3, 2]]},
    "V4": {"kind": "perm", "degree": 4, "generators": [[1, 0, 3, 2], [2, 3, 0, 1]]},
}

_named_cache: dict[str, Group] = {}


def named_group(name: str) -> Group:
    """Shared instances of the small test groups: ``C1..Cn``, ``S3``, ``D4``, ``S4``, ``A4``, ``V4``."""
    if name in _named_cache:
        return _named_cache[name]
    if name.startswith("C") and name[1:].isdigit():
        desc = cyclic_descriptor(int(name[1:]))
    elif name in _NAMED:
        desc = _NAMED[name]
    else:
        raise MalformedInput(f"unknown named group {name!r}")
    G = from_permutations(desc["degree"], desc["generators"], name=name)
    _named_cache[name] = G
    return G


# ---------------------------------------------------------------------------
# subgroups


def closure(G: Group, gens) -> tuple[int, ...]:
    """Sorted elements of the subgroup generated by ``gens``."""
    elems = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = G.table[a][s]
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(sorted(elems))


def subgroup(G: Group, elements) -> Subgroup:
    """Validate an element list as a subgroup."""
    els = tuple(sorted(set(int(x) for x in elements)))
    if not els or els[0] != 0:
        raise MalformedInput("a subgroup must contain the identity 0")
    if els[-1] >= G.order:
        raise MalformedInput(f"element index out of range for group of order {G.order}")
    s = set(els)
    for a in els:
        if G.inv(a) not in s or any(G.table[a][b] not in s for b in els):
            raise MalformedInput(f"{list(els)} is not closed under the group law")
    return Subgroup(G, els)


def generated(G: Group, gens) -> Subgroup:
    return Subgroup(G, closure(G, gens))


def intersect(A: Subgroup, B: Subgroup) -> Subgroup:
    return Subgroup(A.group, tuple(sorted(A.members & B.members)))


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    """``g H g^-1``."""
    G = H.group
    return Subgroup(G, tuple(sorted({G.conj(g, h) for h in H.elements})))


def is_normal(N: Subgroup) -> bool:
    G = N.group
    return all(conjugate_subgroup(N, g) == N for g in G.generators)


def class_rep_under(L: Subgroup, S: Subgroup) -> Subgroup:
    """Canonical representative of the S-conjugacy class of L (lexicographically minimal)."""
    return min((conjugate_subgroup(L, s) for s in S.elements), key=lambda X: X.elements)


@dataclass(frozen=True)
class SubgroupLattice:
    """All subgroups sorted by ``(order, elements)`` plus their conjugacy classes.

    ``classes`` lists index sets into ``subgroups``; each class's first entry is its
    representative (the lexicographically minimal member).
    """

    group: Group
    subgroups: tuple[Subgroup, ...]
    classes: tuple[tuple[int, ...], ...]

    @property
    def representatives(self) -> list[Subgroup]:
        return [self.subgroups[c[0]] for c in self.classes]

    def class_of(self, H: Subgroup) -> int:
        i = self.position[H.elements]
        return self._class_index[i]

    def rep_of(self, H: Subgroup) -> Subgroup:
        return self.subgroups[self.classes[self.class_of(H)][0]]

    @cached_property
    def position(self) -> dict[tuple[int, ...], int]:
        return {H.elements: i for i, H in enumerate(self.subgroups)}

    @cached_property
    def _class_index(self) -> dict[int, int]:
        return {i: c for c, members in enumerate(self.classes) for i in members}


def all_subgroups(G: Group) -> SubgroupLattice:
    """Every subgroup of G, by closure from cyclic subgroups under pairwise joins."""
    if "subgroups" in G._cache:
        return G._cache["subgroups"]
    limit = max_group_order()
    if G.order > limit:
        raise GroupTooLarge(f"|G| = {G.order} exceeds the bound {limit}", order=G.order)
    cyclic = {closure(G, [a]) for a in range(G.order)}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyclic:
                if not set(C) <= set(A):
                    J = closure(G, list(A) + list(C))
                    if J not in found:
                        new.add(J)
        found |= new
        frontier = new
    subs = tuple(Subgroup(G, e) for e in sorted(found, key=lambda e: (len(e), e)))
    pos = {H.elements: i for i, H in enumerate(subs)}
    seen: set[int] = set()
    classes = []
    for i, H in enumerate(subs):
        if i in seen:
            continue
        members = sorted({pos[conjugate_subgroup(H, g).elements] for g in range(G.order)})
        seen.update(members)
        classes.append(tuple(members))
    lat = SubgroupLattice(G, subs, tuple(classes))
    G._cache["subgroups"] = lat
    return lat


def subgroups_of(S: Subgroup) -> list[Subgroup]:
    """Subgroups of G contained in S."""
    return [L for L in all_subgroups(S.group).subgroups if L.members <= S.members]


def subgroup_classes_within(S: Subgroup) -> list[Subgroup]:
    """Representatives of S-conjugacy classes of subgroups of S, sorted by (order, elements)."""
    reps = {class_rep_under(L, S).elements for L in subgroups_of(S)}
    return [Subgroup(S.group, e) for e in sorted(reps, key=lambda e: (len(e), e))]


# ---------------------------------------------------------------------------
# cosets


@dataclass(frozen=True)
class CosetSpace:
    """Left cosets gH; ``reps`` are the minimal indices, ascending."""

    subgroup: Subgroup
    reps: tuple[int, ...]
    lookup: tuple[int, ...]  # element -> position of its coset in reps

    def __len__(self):
        return len(self.reps)


def coset_space(H: Subgroup) -> CosetSpace:
    G = H.group
    key = ("cosets", H.elements)
    if key in G._cache:
        return G._cache[key]
    lookup = [-1] * G.order
    reps = []
    for g in range(G.order):
        if lookup[g] < 0:
            k = len(reps)
            reps.append(g)
            for h in H.elements:
                lookup[G.table[g][h]] = k
    cs = CosetSpace(H, tuple(reps), tuple(lookup))
    G._cache[key] = cs
    return cs


def double_cosets(G: Group, K: Subgroup, H: Subgroup) -> list[int]:
    """Minimal representative of each double coset K g H, ascending."""
    key = ("dc", K.elements, H.elements)
    if key in G._cache:
        return G._cache[key]
    seen = bytearray(G.order)
    reps = []
    t = G.table
    for g in range(G.order):
        if not seen[g]:
            reps.append(g)
            for k in K.elements:
                kg = t[k][g]
                for h in H.elements:
                    seen[t[kg][h]] = 1
    G._cache[key] = reps
    return reps


def double_coset_rep(G: Group, K: Subgroup, H: Subgroup, g: int) -> int:
    """Canonical representative of K g H."""
    t = G.table
    return min(t[t[k][g]][h] for k in K.elements for h in H.elements)


# ---------------------------------------------------------------------------
# subgroups as groups, quotients


def as_group(S: Subgroup) -> Group:
    """S as an abstract group (its own Cayley table) hanging off the root group.

    Elements are ordered by root index. Cached on the root, so a subgroup reached
    through any chain of subgroup-groups always yields the same Group object.
    """
    G = S.group
    R = G.root
    relems = tuple(sorted(G.root_index[a] for a in S.elements))
    if len(relems) == R.order:
        return R
    key = ("as_group", relems)
    if key in R._cache:
        return R._cache[key]
    pos = {g: i for i, g in enumerate(relems)}
    table = tuple(tuple(pos[R.table[a][b]] for b in relems) for a in relems)
    labels = tuple(R.labels[a] for a in relems) if R.labels else None
    H = Group(
        table,
        name=f"{R.name or 'G'}<{','.join(map(str, relems))}>",
        labels=labels,
        parent=R,
        root_index=relems,
    )
    R._cache[key] = H
    return H


def embed(sub: Group, sup: Group) -> tuple[int, ...]:
    """Indices in ``sup`` of the elements of ``sub`` (both cut from one root)."""
    if sub is sup:
        return tuple(range(sub.order))
    if sub.root is not sup.root:
        raise MalformedInput("groups do not share a root group")
    li = sup.local_index
    try:
        return tuple(li[r] for r in sub.root_index)
    except KeyError:
        raise MalformedInput(f"{sub!r} is not contained in {sup!r}") from None


def subgroup_in(sub: Group, sup: Group) -> Subgroup:
    """``sub`` as a Subgroup object of ``sup``."""
    return Subgroup(sup, tuple(sorted(embed(sub, sup))))


def transport(S: Subgroup, target: Group) -> Subgroup:
    """Re-express a subgroup (of any group sharing the root) inside ``target``."""
    li = target.local_index
    src = S.group.root_index
    try:
        return Subgroup(target, tuple(sorted(li[src[a]] for a in S.elements)))
    except KeyError:
        raise MalformedInput(f"{S!r} is not contained in {target!r}") from None


@dataclass(frozen=True)
class Quotient:
    group: Group  # G/N
    projection: tuple[int, ...]  # element of G -> element of G/N
    normal: Subgroup


def quotient(N: Subgroup) -> Quotient:
    """G/N with cosets ordered by minimal representative (so the identity coset is 0)."""
    if not is_normal(N):
        raise NotNormal(f"{list(N.elements)} is not normal")
    G = N.group
    cs = coset_space(N)
    table = tuple(tuple(cs.lookup[G.table[a][b]] for b in cs.reps) for a in cs.reps)
    Q = Group(table, name=f"{G.name or 'G'}/{N.order}")
    return Quotient(Q, cs.lookup, N)


def preimage(q: Quotient, Kbar: Subgroup) -> Subgroup:
    G = q.normal.group
    return Subgroup(G, tuple(g for g in range(G.order) if q.projection[g] in Kbar.members))
