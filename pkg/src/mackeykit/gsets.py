"""Finite G-sets with explicit action tables, equivariant maps, orbits, products, pullbacks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from .errors import MalformedInput, NotEquivariant, TooLarge
from .groups import (
    Group,
    Subgroup,
    as_group,
    coset_space,
    embed,
    subgroup_in,
    transport,
)

MAX_MAPS = 200_000


@dataclass(frozen=True)
class GSet:
    """``action[g][x]`` is the image of point x under group element g."""

    group: Group
    action: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.action[0]) if self.action else 0

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def validate(self) -> "GSet":
        G, n = self.group, self.size
        if len(self.action) != G.order:
            raise MalformedInput("action table needs one row per group element")
        for row in self.action:
            if len(row) != n or sorted(row) != list(range(n)):
                raise MalformedInput("each group element must act by a permutation of the points")
        if list(self.action[0]) != list(range(n)):
            raise MalformedInput("the identity must act trivially")
        for g in G.generators:
            for h in range(G.order):
                gh = G.table[g][h]
                for x in range(n):
                    if self.action[g][self.action[h][x]] != self.action[gh][x]:
                        raise MalformedInput(f"action is not compatible with the group law at g={g}, h={h}, x={x}")
        return self

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(self.group, tuple(g for g in range(self.group.order) if self.action[g][x] == x))

    def orbit(self, x: int) -> list[int]:
        return sorted({row[x] for row in self.action})

    @cached_property
    def orbit_of(self) -> tuple[int, ...]:
        """Point -> index of its orbit (orbits numbered by minimal point)."""
        lab = [-1] * self.size
        k = 0
        for x in range(self.size):
            if lab[x] < 0:
                for row in self.action:
                    lab[row[x]] = k
                k += 1
        return tuple(lab)

    @cached_property
    def orbit_reps(self) -> tuple[int, ...]:
        reps = []
        seen = set()
        for x, o in enumerate(self.orbit_of):
            if o not in seen:
                seen.add(o)
                reps.append(x)
        return tuple(reps)

    @cached_property
    def transversal(self) -> tuple[int, ...]:
        """Point x -> some g with g . (representative of x's orbit) == x."""
        car = [-1] * self.size
        for x0 in self.orbit_reps:
            for g, row in enumerate(self.action):
                if car[row[x0]] < 0:
                    car[row[x0]] = g
        return tuple(car)

    def fixed_points(self, H: Subgroup) -> list[int]:
        return [x for x in range(self.size) if all(self.action[h][x] == x for h in H.elements)]

    def __repr__(self):
        return f"GSet(order={self.group.order}, size={self.size})"


@dataclass(frozen=True)
class EquivariantMap:
    source: GSet
    target: GSet
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def validate(self) -> "EquivariantMap":
        if self.source.group is not self.target.group:
            raise MalformedInput("source and target are sets over different groups")
        if len(self.images) != self.source.size or any(not 0 <= y < self.target.size for y in self.images):
            raise MalformedInput("map images out of range")
        sa, ta = self.source.action, self.target.action
        for g in self.source.group.generators:
            for x in range(self.source.size):
                if self.images[sa[g][x]] != ta[g][self.images[x]]:
                    raise NotEquivariant(f"f(g.x) != g.f(x) at g={g}, x={x}", g=g, x=x)
        return self

    def compose(self, other: "EquivariantMap") -> "EquivariantMap":
        """``self ∘ other``."""
        return EquivariantMap(other.source, self.target, tuple(self.images[y] for y in other.images))


def identity_map(X: GSet) -> EquivariantMap:
    return EquivariantMap(X, X, tuple(range(X.size)))


# ---------------------------------------------------------------------------
# constructions


def transitive_gset(G: Group, H: Subgroup) -> GSet:
    """G/H with left translation; point i is the coset of the i-th minimal representative."""
    key = ("G/H", H.elements)
    if key in G._cache:
        return G._cache[key]
    cs = coset_space(H)
    t = G.table
    action = tuple(tuple(cs.lookup[t[g][r]] for r in cs.reps) for g in range(G.order))
    X = GSet(G, action)
    G._cache[key] = X
    return X


def point_gset(G: Group) -> GSet:
    return GSet(G, tuple((0,) for _ in range(G.order)))


def empty_gset(G: Group) -> GSet:
    return GSet(G, tuple(() for _ in range(G.order)))


def coproduct(*sets: GSet) -> GSet:
    """Disjoint union; the points of ``sets[i]`` follow those of ``sets[:i]``."""
    G = sets[0].group
    rows = []
    for g in range(G.order):
        row: list[int] = []
        off = 0
        for X in sets:
            row.extend(off + y for y in X.action[g])
            off += X.size
        rows.append(tuple(row))
    return GSet(G, tuple(rows))


def product(X: GSet, Y: GSet) -> GSet:
    """Diagonal action on X x Y; ``(x, y)`` sits at ``x * |Y| + y``."""
    if X.group is not Y.group:
        raise MalformedInput("product of sets over different groups")
    m = Y.size
    return GSet(
        X.group,
        tuple(tuple(ax[x] * m + ay[y] for x in range(X.size) for y in range(m)) for ax, ay in zip(X.action, Y.action)),
    )


def product_swap(X: GSet, Y: GSet) -> EquivariantMap:
    """Canonical isomorphism X x Y -> Y x X."""
    n, m = X.size, Y.size
    return EquivariantMap(product(X, Y), product(Y, X), tuple(y * n + x for x in range(n) for y in range(m)))


def product_assoc(X: GSet, Y: GSet, Z: GSet) -> EquivariantMap:
    """Canonical isomorphism (X x Y) x Z -> X x (Y x Z)."""
    # both orderings put (x, y, z) at the same linear index
    src = product(product(X, Y), Z)
    tgt = product(X, product(Y, Z))
    return EquivariantMap(src, tgt, tuple(range(src.size)))


def projections(X: GSet, Y: GSet) -> tuple[EquivariantMap, EquivariantMap]:
    P = product(X, Y)
    m = Y.size
    return (
        EquivariantMap(P, X, tuple(i // m for i in range(P.size))),
        EquivariantMap(P, Y, tuple(i % m for i in range(P.size))),
    )


def pullback(f: EquivariantMap, g: EquivariantMap) -> tuple[GSet, EquivariantMap, EquivariantMap]:
    """``X x_Z Y`` with its two projections; pairs listed in product order."""
    if f.target != g.target:
        raise MalformedInput("pullback needs maps with a common target")
    X, Y = f.source, g.source
    pairs = [(x, y) for x in range(X.size) for y in range(Y.size) if f.images[x] == g.images[y]]
    pos = {p: i for i, p in enumerate(pairs)}
    action = tuple(tuple(pos[(ax[x], ay[y])] for x, y in pairs) for ax, ay in zip(X.action, Y.action))
    P = GSet(X.group, action)
    return (
        P,
        EquivariantMap(P, X, tuple(x for x, _ in pairs)),
        EquivariantMap(P, Y, tuple(y for _, y in pairs)),
    )


def orbit_decompose(X: GSet) -> list[tuple[Subgroup, int]]:
    """(stabilizer of the minimal point, minimal point) for each orbit, by minimal point."""
    return [(X.stabilizer(x), x) for x in X.orbit_reps]


def orbit_embedding(X: GSet, x0: int) -> EquivariantMap:
    """The map G/Stab(x0) -> X sending the coset gH to g.x0."""
    H = X.stabilizer(x0)
    T = transitive_gset(X.group, H)
    cs = coset_space(H)
    return EquivariantMap(T, X, tuple(X.action[r][x0] for r in cs.reps))


def equivariant_maps(X: GSet, Y: GSet) -> list[EquivariantMap]:
    """All equivariant maps X -> Y: each orbit representative may go to any point fixed by its stabilizer."""
    if X.group is not Y.group:
        raise MalformedInput("sets over different groups")
    orbits = orbit_decompose(X)
    choices = [Y.fixed_points(S) for S, _ in orbits]
    total = 1
    for c in choices:
        total *= len(c)
    if total > MAX_MAPS:
        raise TooLarge(f"{total} equivariant maps exceeds the bound {MAX_MAPS}")
    orbit_of = X.orbit_of
    # for each point choose a group element carrying its orbit representative to it
    carrier = [0] * X.size
    for k, (_, x0) in enumerate(orbits):
        for g, row in enumerate(X.action):
            x = row[x0]
            if orbit_of[x] == k and carrier[x] == 0 and x != x0:
                carrier[x] = g
    out = []
    for pick in iproduct(*choices):
        images = tuple(Y.action[carrier[x]][pick[orbit_of[x]]] for x in range(X.size))
        out.append(EquivariantMap(X, Y, images))
    return out


def restrict_gset(X: GSet, K: Subgroup | Group) -> GSet:
    """Res to K; the result lives over ``as_group(K)`` (K's own Cayley table)."""
    if isinstance(K, Subgroup):
        Kg = as_group(K) if K.group is X.group else as_group(transport(K, X.group))
    else:
        Kg = K
    idx = embed(Kg, X.group)
    return GSet(Kg, tuple(X.action[i] for i in idx))


def induce_gset(Y: GSet, G: Group) -> tuple[GSet, list[tuple[int, int]]]:
    """``G x_H Y`` for an H-set Y with H inside G.

    Points are pairs (coset representative r of G/H, y), listed in that order;
    g.(r, y) = (r', h.y) where g r = r' h. Returns the G-set and the pair list.
    """
    H = Y.group
    Hs = subgroup_in(H, G)
    cs = coset_space(Hs)
    loc = {g: i for i, g in enumerate(embed(H, G))}
    t, inv = G.table, G.inverses
    pairs = [(k, y) for k in range(len(cs.reps)) for y in range(Y.size)]
    ny = Y.size
    rows = []
    for g in range(G.order):
        row = []
        for k, y in pairs:
            gr = t[g][cs.reps[k]]
            k2 = cs.lookup[gr]
            h = t[inv[cs.reps[k2]]][gr]
            row.append(k2 * ny + Y.action[loc[h]][y])
        rows.append(tuple(row))
    return GSet(G, tuple(rows)), pairs


def conjugate_gset(Y: GSet, g: int) -> GSet:
    """c_g: an H-set becomes a gHg^-1-set where x acts as g^-1 x g.

    ``g`` is an element index of the root group.
    """
    H = Y.group
    R = H.root
    conjH = Subgroup(R, tuple(sorted(R.conj(g, r) for r in H.root_index)))
    Hc = as_group(conjH)
    loc = H.local_index
    ginv = R.inv(g)
    rows = tuple(Y.action[loc[R.conj(ginv, r)]] for r in Hc.root_index)
    return GSet(Hc, rows)


def inflate_gset(X: GSet, projection, G: Group) -> GSet:
    """Pull a G/N-set back along the projection G -> G/N."""
    return GSet(G, tuple(X.action[projection[g]] for g in range(G.order)))
