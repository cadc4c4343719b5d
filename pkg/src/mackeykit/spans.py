"""The span category of finite G-sets and its additive hull Omega(G).

A hom element of Omega(G) between G-sets X and Y is a :class:`SpanSum`: an integer
combination of basis spans, one family per pair (orbit of X, orbit of Y). With the
orbits identified as G/K and G/H, a basis span is::

    G/K  <--  G/L  -->  G/H        [x]_L |-> [x g^-1]_K,  [x]_L |-> [x]_H

with g the canonical representative of its double coset in K\\G/H and L <= g^-1 K g ∩ H
the canonical representative of its (g^-1 K g ∩ H)-conjugacy class.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import MalformedInput, NotNested, SourceTargetMismatch
from .groups import (
    Group,
    Subgroup,
    class_rep_under,
    conjugate_subgroup,
    double_coset_rep,
    double_cosets,
    intersect,
    subgroup_classes_within,
)
from .gsets import (
    EquivariantMap,
    GSet,
    identity_map,
    product,
    pullback,
    transitive_gset,
)


@dataclass(frozen=True)
class BasisSpan:
    g: int
    L: Subgroup

    def key(self):
        return (self.g, self.L.elements)


@dataclass(frozen=True)
class Span:
    left: EquivariantMap  # Z -> X
    right: EquivariantMap  # Z -> Y

    def __post_init__(self):
        if self.left.source != self.right.source:
            raise MalformedInput("span legs must share their source")

    @property
    def middle(self) -> GSet:
        return self.left.source


# term key: (source orbit, target orbit, g, L elements)
TermKey = tuple[int, int, int, tuple[int, ...]]


@dataclass(frozen=True)
class SpanSum:
    source: GSet
    target: GSet
    terms: tuple[tuple[TermKey, int], ...]

    @classmethod
    def from_dict(cls, source: GSet, target: GSet, d: dict) -> "SpanSum":
        return cls(source, target, tuple(sorted((k, c) for k, c in d.items() if c)))

    @classmethod
    def zero(cls, source: GSet, target: GSet) -> "SpanSum":
        return cls(source, target, ())

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def group(self) -> Group:
        return self.source.group

    def _check_same(self, other):
        if self.source != other.source or self.target != other.target:
            raise SourceTargetMismatch("span sums with different endpoints")

    def __add__(self, other: "SpanSum") -> "SpanSum":
        self._check_same(other)
        d = defaultdict(int, self.terms)
        for k, c in other.terms:
            d[k] += c
        return SpanSum.from_dict(self.source, self.target, d)

    def scale(self, c: int) -> "SpanSum":
        return SpanSum.from_dict(self.source, self.target, {k: c * v for k, v in self.terms})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "SpanSum") -> "SpanSum":
        return self + (-other)

    def __bool__(self):
        return bool(self.terms)

    def basis_terms(self):
        for (i, j, g, L), c in self.terms:
            yield i, j, BasisSpan(g, Subgroup(self.group, L)), c


# ---------------------------------------------------------------------------
# canonical forms


def _orbit_points(Z: GSet) -> dict[int, list[int]]:
    pts = defaultdict(list)
    for z, o in enumerate(Z.orbit_of):
        pts[o].append(z)
    return pts


def span_canonicalize(s: Span) -> SpanSum:
    """Normal form of a span: one basis span per orbit of the middle object."""
    X, Y, Z = s.left.target, s.right.target, s.middle
    G = Z.group
    f, h = s.left.images, s.right.images
    inv = G.inverses
    d: dict = defaultdict(int)
    for o, pts in _orbit_points(Z).items():
        z0 = pts[0]
        i, j = X.orbit_of[f[z0]], Y.orbit_of[h[z0]]
        xi, yj = X.orbit_reps[i], Y.orbit_reps[j]
        K, H = X.stabilizer(xi), Y.stabilizer(yj)
        at_base = [z for z in pts if h[z] == yj]
        a0 = X.transversal[f[at_base[0]]]
        c = double_coset_rep(G, K, H, inv[a0])
        target_pt = X.action[inv[c]][xi]
        z = next(z for z in at_base if f[z] == target_pt)
        S = intersect(conjugate_subgroup(K, inv[c]), H)
        L = class_rep_under(Z.stabilizer(z), S)
        d[(i, j, c, L.elements)] += 1
    return SpanSum.from_dict(X, Y, d)


def realize_term(X: GSet, Y: GSet, i: int, j: int, g: int, L: Subgroup) -> Span:
    """The actual span X <- G/L -> Y for a basis term."""
    G = X.group
    Z = transitive_gset(G, L)
    from .groups import coset_space

    reps = coset_space(L).reps
    xi, yj = X.orbit_reps[i], Y.orbit_reps[j]
    ginv = G.inv(g)
    left = tuple(X.action[G.table[r][ginv]][xi] for r in reps)
    right = tuple(Y.action[r][yj] for r in reps)
    return Span(EquivariantMap(Z, X, left), EquivariantMap(Z, Y, right))


def realize(s: SpanSum):
    for (i, j, g, L), c in s.terms:
        yield realize_term(s.source, s.target, i, j, g, Subgroup(s.group, L)), c


def basis_span_sum(K: Subgroup, H: Subgroup, b: BasisSpan) -> SpanSum:
    G = K.group
    return SpanSum(transitive_gset(G, K), transitive_gset(G, H), (((0, 0, b.g, b.L.elements), 1),))


def identity_span(X: GSet) -> SpanSum:
    return span_canonicalize(Span(identity_map(X), identity_map(X)))


def covariant_span(f: EquivariantMap) -> SpanSum:
    """f_* = (X <- X -> Y)."""
    return span_canonicalize(Span(identity_map(f.source), f))


def contravariant_span(f: EquivariantMap) -> SpanSum:
    """f^* = (Y <- X -> X)."""
    return span_canonicalize(Span(f, identity_map(f.source)))


# ---------------------------------------------------------------------------
# operations


def _accumulate(d: dict, s: SpanSum, c: int) -> None:
    for k, v in s.terms:
        d[k] += c * v


def span_compose(s1: SpanSum, s2: SpanSum) -> SpanSum:
    """``s2 ∘ s1`` for s1: X ⇸ Y and s2: Y ⇸ W (composition by pullback)."""
    if s1.target != s2.source:
        raise SourceTargetMismatch("target of the first span sum is not the source of the second")
    d: dict = defaultdict(int)
    for (i1, j1, g1, L1), c1 in s1.terms:
        sp1 = None
        for (i2, j2, g2, L2), c2 in s2.terms:
            if i2 != j1:
                continue
            if sp1 is None:
                sp1 = realize_term(s1.source, s1.target, i1, j1, g1, Subgroup(s1.group, L1))
            sp2 = realize_term(s2.source, s2.target, i2, j2, g2, Subgroup(s1.group, L2))
            P, p1, p2 = pullback(sp1.right, sp2.left)
            comp = Span(sp1.left.compose(p1), sp2.right.compose(p2))
            _accumulate(d, span_canonicalize(comp), c1 * c2)
    return SpanSum.from_dict(s1.source, s2.target, d)


def span_dual(s: SpanSum) -> SpanSum:
    """Swap the legs: X ⇸ Y becomes Y ⇸ X."""
    d: dict = defaultdict(int)
    for sp, c in realize(s):
        _accumulate(d, span_canonicalize(Span(sp.right, sp.left)), c)
    return SpanSum.from_dict(s.target, s.source, d)


def span_tensor(s1: SpanSum, s2: SpanSum) -> SpanSum:
    """Pointwise product: X x X' ⇸ Y x Y'."""
    X, Y = product(s1.source, s2.source), product(s1.target, s2.target)
    d: dict = defaultdict(int)
    for sp1, c1 in realize(s1):
        for sp2, c2 in realize(s2):
            Z = product(sp1.middle, sp2.middle)
            m, ny = sp2.middle.size, s2.source.size
            mt = s2.target.size
            left = tuple(sp1.left.images[z // m] * ny + sp2.left.images[z % m] for z in range(Z.size))
            right = tuple(sp1.right.images[z // m] * mt + sp2.right.images[z % m] for z in range(Z.size))
            sp = Span(EquivariantMap(Z, X, left), EquivariantMap(Z, Y, right))
            _accumulate(d, span_canonicalize(sp), c1 * c2)
    return SpanSum.from_dict(X, Y, d)


def omega_hom_basis(K: Subgroup, H: Subgroup) -> list[BasisSpan]:
    """Basis of Hom_Omega(G/K, G/H): g over K\\G/H ascending, then L by (order, elements)."""
    G = K.group
    key = ("omega_basis", K.elements, H.elements)
    if key in G._cache:
        return G._cache[key]
    out = []
    for g in double_cosets(G, K, H):
        S = intersect(conjugate_subgroup(K, G.inv(g)), H)
        out.extend(BasisSpan(g, L) for L in subgroup_classes_within(S))
    G._cache[key] = out
    return out


def omega_basis_between(X: GSet, Y: GSet) -> list[TermKey]:
    out = []
    for i, xi in enumerate(X.orbit_reps):
        K = X.stabilizer(xi)
        for j, yj in enumerate(Y.orbit_reps):
            H = Y.stabilizer(yj)
            out.extend((i, j, b.g, b.L.elements) for b in omega_hom_basis(K, H))
    return out


def span_coordinates(s: SpanSum) -> list[int]:
    """Coefficient vector of ``s`` in :func:`omega_basis_between` order."""
    basis = omega_basis_between(s.source, s.target)
    pos = {k: n for n, k in enumerate(basis)}
    v = [0] * len(basis)
    for k, c in s.terms:
        v[pos[k]] = c
    return v


def projection_map(G: Group, K: Subgroup, H: Subgroup) -> EquivariantMap:
    """G/K -> G/H, [x]_K |-> [x]_H (requires K <= H)."""
    from .groups import coset_space

    if not K <= H:
        raise NotNested(f"{list(K.elements)} is not contained in {list(H.elements)}")
    cK, cH = coset_space(K), coset_space(H)
    return EquivariantMap(transitive_gset(G, K), transitive_gset(G, H), tuple(cH.lookup[r] for r in cK.reps))


def ideal_generator(K: Subgroup, H: Subgroup) -> SpanSum:
    """(G/H <- G/K -> G/H) - [H:K] id, for K <= H."""
    G = K.group
    pi = projection_map(G, K, H)
    X = pi.target
    s = span_canonicalize(Span(pi, pi))
    return s - identity_span(X).scale(H.order // K.order)
