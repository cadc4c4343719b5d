"""Cohomological Mackey functors as R-linear presheaves on permutation modules.

A :class:`MackeyFunctor` over G lives on the skeleton of perm(G; R): objects are
R(G/S) for S running over conjugacy-class representatives of subgroups, and it
assigns to each basis morphism ``[g]: R(G/S_a) -> R(G/S_b)`` a matrix
``M(b) -> M(a)`` (rows ``values[a]``, columns ``values[b]``). Values are free.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg
from .errors import MalformedInput
from .groups import (
    Group,
    Subgroup,
    all_subgroups,
    conjugate_subgroup,
    coset_space,
    double_cosets,
    intersect,
    subgroup_classes_within,
    transport,
)
from .gsets import GSet, transitive_gset
from .perm import (
    PermModule,
    PermMorphism,
    conjugate_morphism,
    equivariant_hom_solve,
    induce_morphism,
    linearize_span,
    perm_hom_basis,
    restrict_morphism,
)
from .rings import Ring
from .spans import (
    basis_span_sum,
    ideal_generator,
    omega_hom_basis,
    span_compose,
    span_coordinates,
)

# ---------------------------------------------------------------------------
# G-modules


@dataclass(eq=False)
class GModule:
    """A finite free R-module with a matrix for every group element."""

    group: Group
    ring: Ring
    rank: int
    action: tuple  # action[g] is rank x rank

    def validate(self) -> "GModule":
        G, R = self.group, self.ring
        if len(self.action) != G.order:
            raise MalformedInput("need one action matrix per group element")
        if self.action[0] != linalg.identity(self.rank, R):
            raise MalformedInput("identity must act trivially")
        for g in G.generators:
            for h in range(G.order):
                if linalg.mat_mul(self.action[g], self.action[h], R) != self.action[G.table[g][h]]:
                    raise MalformedInput(f"action(g) action(h) != action(gh) at g={g}, h={h}")
        return self

    @classmethod
    def from_perm(cls, P: PermModule) -> "GModule":
        return cls(P.group, P.ring, P.rank, tuple(P.action_matrix(g) for g in range(P.group.order)))

    @classmethod
    def trivial(cls, G: Group, R: Ring) -> "GModule":
        return cls(G, R, 1, tuple([[R.one]] for _ in range(G.order)))

    @classmethod
    def regular(cls, G: Group, R: Ring) -> "GModule":
        return cls.from_perm(PermModule(transitive_gset(G, G.trivial()), R))

    def fixed_basis(self, H: Subgroup) -> list[list]:
        """Canonical basis of M^H (RREF over a field, HNF over Z)."""
        key = ("fixed", H.elements)
        cache = self.__dict__.setdefault("_fixed", {})
        if key in cache:
            return cache[key]
        R = self.ring
        rows = []
        for h in H.generators:
            A = self.action[h]
            for i in range(self.rank):
                rows.append([R.sub(A[i][j], R.one if i == j else R.zero) for j in range(self.rank)])
        vecs = linalg.nullspace(rows, self.rank, R)
        basis = linalg.canonical_basis(vecs, self.rank, R)
        cache[key] = basis
        return basis


def direct_sum_modules(M: GModule, N: GModule) -> GModule:
    shapes = [(M.rank, M.rank), (N.rank, N.rank)]
    return GModule(
        M.group,
        M.ring,
        M.rank + N.rank,
        tuple(linalg.block_diag([a, b], shapes, M.ring) for a, b in zip(M.action, N.action)),
    )


def intertwiners(M: GModule, N: GModule) -> list[list]:
    """Basis of Hom_G(M, N) as N.rank x M.rank matrices."""
    R = M.ring
    m, n = M.rank, N.rank
    rows = []
    for g in M.group.generators:
        A, B = M.action[g], N.action[g]
        for i in range(n):
            for j in range(m):
                row: dict = {}
                # (X A)[i][j] - (B X)[i][j]
                for k in range(m):
                    if A[k][j]:
                        row[i * m + k] = R.add(row.get(i * m + k, 0), A[k][j])
                for k in range(n):
                    if B[i][k]:
                        row[k * m + j] = R.sub(row.get(k * m + j, 0), B[i][k])
                if any(row.values()):
                    rows.append(row)
    vecs = linalg.nullspace(rows, m * n, R)
    return [[list(v[i * m:(i + 1) * m]) for i in range(n)] for v in vecs]


# ---------------------------------------------------------------------------
# the skeleton of perm(G; R)


class Skeleton:
    """Transitive permutation modules on class representatives and their hom bases."""

    def __init__(self, G: Group, R: Ring):
        self.group = G
        self.ring = R
        self.reps: list[Subgroup] = all_subgroups(G).representatives
        self.sets: list[GSet] = [transitive_gset(G, S) for S in self.reps]
        self.modules = [PermModule(X, R) for X in self.sets]
        self._dc = {}
        self._compose = {}

    def double_cosets(self, a: int, b: int) -> list[int]:
        key = (a, b)
        if key not in self._dc:
            self._dc[key] = double_cosets(self.group, self.reps[a], self.reps[b])
        return self._dc[key]

    def basis(self, a: int, b: int) -> list[PermMorphism]:
        return perm_hom_basis(self.reps[a], self.reps[b], self.ring)

    def pairs(self):
        n = len(self.reps)
        return [(a, b) for a in range(n) for b in range(n)]

    def coords(self, A: PermMorphism, a: int, b: int) -> list:
        cH = coset_space(self.reps[b])
        return [A.matrix[cH.lookup[g]][0] for g in self.double_cosets(a, b)]

    def compose_coords(self, a: int, b: int, c: int, p: int, q: int) -> list:
        """Coordinates of basis_q(b->c) ∘ basis_p(a->b) in the basis of (a->c)."""
        key = (a, b, c, p, q)
        if key not in self._compose:
            comp = self.basis(b, c)[q].compose(self.basis(a, b)[p])
            self._compose[key] = self.coords(comp, a, c)
        return self._compose[key]

    def decompose(self, X: GSet) -> list[tuple[int, list[int]]]:
        """Explicit iso ⊕ R(G/S_a) ≅ R(X): per orbit, (rep index, point map into X)."""
        G = self.group
        lat = all_subgroups(G)
        rep_pos = {S.elements: i for i, S in enumerate(self.reps)}
        out = []
        for x0 in X.orbit_reps:
            stab = X.stabilizer(x0)
            Sa = lat.rep_of(stab)
            a = rep_pos[Sa.elements]
            # t with t Sa t^-1 = stab, then base point t^-1 . x0 has stabilizer Sa
            t = next(t for t in range(G.order) if conjugate_subgroup(Sa, t) == stab)
            base = X.action[G.inv(t)][x0]
            reps = coset_space(Sa).reps
            out.append((a, [X.action[r][base] for r in reps]))
        return out


def skeleton(G: Group, R: Ring) -> Skeleton:
    key = ("skeleton", str(R))
    if key not in G._cache:
        G._cache[key] = Skeleton(G, R)
    return G._cache[key]


# ---------------------------------------------------------------------------
# Mackey functors


@dataclass(eq=False)
class MackeyFunctor:
    group: Group
    ring: Ring
    values: tuple[int, ...]
    action: dict = field(repr=False)  # (a, b, p) -> values[a] x values[b] matrix

    @property
    def skeleton(self) -> Skeleton:
        return skeleton(self.group, self.ring)

    def __eq__(self, other):
        return (
            isinstance(other, MackeyFunctor)
            and self.group is other.group
            and self.ring == other.ring
            and self.values == other.values
            and self.action == other.action
        )

    def matrix(self, a: int, b: int, coords) -> list:
        """M of the morphism with the given coordinates in the basis of (a -> b)."""
        R = self.ring
        out = linalg.zeros(self.values[a], self.values[b], R)
        for p, c in enumerate(coords):
            if c:
                out = linalg.mat_add(out, linalg.mat_scale(R.coerce(c), self.action[(a, b, p)], R), R)
        return out

    def check(self) -> list[str]:
        """Violations of the identity and composition axioms (empty when valid)."""
        sk = self.skeleton
        R = self.ring
        n = len(sk.reps)
        problems = []
        for a in range(n):
            if self.action[(a, a, 0)] != linalg.identity(self.values[a], R):
                problems.append(f"identity of object {a} does not act as the identity")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for p in range(len(sk.double_cosets(a, b))):
                        for q in range(len(sk.double_cosets(b, c))):
                            lhs = linalg.mat_mul(
                                self.action[(a, b, p)], self.action[(b, c, q)], R, inner=self.values[b]
                            )
                            rhs = self.matrix(a, c, sk.compose_coords(a, b, c, p, q))
                            if lhs != rhs:
                                problems.append(f"composition fails for ({a}->{b} #{p}) then ({b}->{c} #{q})")
        return problems

    # evaluation on arbitrary permutation modules ------------------------------

    def evaluate(self, X: GSet) -> int:
        return sum(self.values[a] for a, _ in self.skeleton.decompose(X))

    def evaluate_morphism(self, A: PermMorphism) -> list:
        """M(A): M(target) -> M(source) for any equivariant A between permutation modules."""
        sk = self.skeleton
        src = sk.decompose(A.source.basis)
        tgt = sk.decompose(A.target.basis)
        rows = []
        for a, pts_a in src:
            blocks = []
            for b, pts_b in tgt:
                cH = coset_space(sk.reps[b])
                coords = [A.matrix[pts_b[cH.lookup[g]]][pts_a[0]] for g in sk.double_cosets(a, b)]
                blocks.append(self.matrix(a, b, coords))
            for i in range(self.values[a]):
                rows.append([x for blk in blocks for x in blk[i]])
        return rows


def direct_sum(M: MackeyFunctor, N: MackeyFunctor) -> MackeyFunctor:
    vals = tuple(x + y for x, y in zip(M.values, N.values))
    action = {}
    for k, A in M.action.items():
        a, b, _ = k
        action[k] = linalg.block_diag(
            [A, N.action[k]], [(M.values[a], M.values[b]), (N.values[a], N.values[b])], M.ring
        )
    return MackeyFunctor(M.group, M.ring, vals, action)


def zero_functor(G: Group, R: Ring) -> MackeyFunctor:
    sk = skeleton(G, R)
    action = {(a, b, p): [] for a, b in sk.pairs() for p in range(len(sk.double_cosets(a, b)))}
    return MackeyFunctor(G, R, tuple(0 for _ in sk.reps), action)


def _functor_from(G: Group, R: Ring, values, act) -> MackeyFunctor:
    sk = skeleton(G, R)
    action = {}
    for a, b in sk.pairs():
        for p, f in enumerate(sk.basis(a, b)):
            action[(a, b, p)] = act(a, b, p, f)
    return MackeyFunctor(G, R, tuple(values), action)


def fp_functor(M: GModule) -> MackeyFunctor:
    """Fixed points: R(G/H) |-> M^H, with [g]: R(G/K)->R(G/H) acting by m |-> sum_x x g m."""
    G, R = M.group, M.ring
    sk = skeleton(G, R)
    bases = [M.fixed_basis(S) for S in sk.reps]
    t = G.table

    def act(a, b, p, f):
        K, H = sk.reps[a], sk.reps[b]
        g = sk.double_cosets(a, b)[p]
        Kg = intersect(K, conjugate_subgroup(H, g))
        xs = [x for x in coset_space(Kg).reps if x in K.members]
        ops = [M.action[t[x][g]] for x in xs]
        cols = []
        for m in bases[b]:
            img = [R.zero] * M.rank
            for A in ops:
                img = [R.add(u, v) for u, v in zip(img, linalg.mat_vec(A, m, R))]
            c = linalg.span_coordinates(bases[a], img, R)
            assert c is not None, "transfer left the fixed points"
            cols.append(c)
        return linalg.transpose(cols, len(bases[a])) if cols else [[] for _ in bases[a]]

    return _functor_from(G, R, [len(B) for B in bases], act)


def yoneda(P: PermModule) -> MackeyFunctor:
    """Hom(-, P) with precomposition, computed from the equivariant solver.

    Each Hom(R(G/S), P) is identified with its image under evaluation at [e]_S and
    given the canonical basis of that image, so the result is directly comparable
    with :func:`fp_functor` of P.
    """
    G, R = P.group, P.ring
    sk = skeleton(G, R)
    homs = []  # per rep: (canonical vectors, matching hom morphisms)
    for S, X in zip(sk.reps, sk.sets):
        sol = equivariant_hom_solve(X, P.basis, R)
        vecs = [[row[0] for row in u.matrix] for u in sol]
        canon = linalg.canonical_basis(vecs, P.rank, R)
        morphs = []
        for c in canon:
            coeffs = linalg.span_coordinates(vecs, c, R)
            acc = linalg.zeros(P.rank, X.size, R)
            for k, u in zip(coeffs, sol):
                if k:
                    acc = linalg.mat_add(acc, linalg.mat_scale(k, u.matrix, R), R)
            morphs.append(acc)
        homs.append((canon, morphs))

    def act(a, b, p, f):
        canon_a = homs[a][0]
        cols = []
        for u in homs[b][1]:
            comp = linalg.mat_mul(u, f.matrix, R, inner=f.target.rank)
            v = [row[0] for row in comp]
            cols.append(linalg.span_coordinates(canon_a, v, R))
        return linalg.transpose(cols, len(canon_a)) if cols else [[] for _ in canon_a]

    return _functor_from(G, R, [len(h[0]) for h in homs], act)


# ---------------------------------------------------------------------------
# natural transformations


def nat_transforms(M: MackeyFunctor, N: MackeyFunctor) -> list[dict]:
    """Basis of Nat(M, N): families eta_a with eta_a M(f) = N(f) eta_b for every basis f: a -> b."""
    if M.group is not N.group or M.ring != N.ring:
        raise MalformedInput("functors over different groups or rings")
    R = M.ring
    sk = M.skeleton
    n = len(sk.reps)
    offs = []
    tot = 0
    for a in range(n):
        offs.append(tot)
        tot += N.values[a] * M.values[a]

    def var(a, i, j):  # eta_a[i][j]
        return offs[a] + i * M.values[a] + j

    rows = []
    for a, b in sk.pairs():
        for p in range(len(sk.double_cosets(a, b))):
            Mf, Nf = M.action[(a, b, p)], N.action[(a, b, p)]
            for i in range(N.values[a]):
                for j in range(M.values[b]):
                    row: dict = {}
                    for k in range(M.values[a]):
                        if Mf[k][j]:
                            v = var(a, i, k)
                            row[v] = R.add(row.get(v, 0), Mf[k][j])
                    for k in range(N.values[b]):
                        if Nf[i][k]:
                            v = var(b, k, j)
                            row[v] = R.sub(row.get(v, 0), Nf[i][k])
                    if any(row.values()):
                        rows.append(row)
    vecs = linalg.nullspace(rows, tot, R)
    return [_unflatten(v, M, N, offs) for v in vecs]


def _unflatten(v, M, N, offs) -> dict:
    out = {}
    for a in range(len(M.values)):
        m = M.values[a]
        out[a] = [list(v[offs[a] + i * m: offs[a] + (i + 1) * m]) for i in range(N.values[a])]
    return out


def _flatten(eta: dict, M, N) -> list:
    return [x for a in range(len(M.values)) for row in eta[a] for x in row]


def is_natural(eta: dict, M: MackeyFunctor, N: MackeyFunctor) -> bool:
    R = M.ring
    sk = M.skeleton
    for a, b in sk.pairs():
        for p in range(len(sk.double_cosets(a, b))):
            lhs = linalg.mat_mul(eta[a], M.action[(a, b, p)], R, inner=M.values[a])
            rhs = linalg.mat_mul(N.action[(a, b, p)], eta[b], R, inner=N.values[b])
            if lhs != rhs:
                return False
    return True


def fp_on_morphism(u: list, M: GModule, N: GModule) -> dict:
    """FP(u): M^H -> N^H in the canonical fixed-point bases."""
    R = M.ring
    sk = skeleton(M.group, R)
    eta = {}
    for a, S in enumerate(sk.reps):
        BM, BN = M.fixed_basis(S), N.fixed_basis(S)
        cols = [linalg.span_coordinates(BN, linalg.mat_vec(u, m, R), R) for m in BM]
        eta[a] = linalg.transpose(cols, len(BN)) if cols else [[] for _ in BN]
    return eta


def full_faithfulness_report(M: GModule, N: GModule) -> dict:
    """Compare Hom_G(M, N) with Nat(FP M, FP N) through the map u |-> FP(u)."""
    R = M.ring
    FM, FN = fp_functor(M), fp_functor(N)
    homs = intertwiners(M, N)
    nats = nat_transforms(FM, FN)
    images = [_flatten(fp_on_morphism(u, M, N), FM, FN) for u in homs]
    image_rank = linalg.span_rank(images, R) if R.is_field else len(homs)
    return {
        "hom_rank": len(homs),
        "nat_rank": len(nats),
        "image_rank": image_rank,
        "natural": all(is_natural(fp_on_morphism(u, M, N), FM, FN) for u in homs),
        "ok": len(homs) == len(nats) == image_rank,
    }


def compose_nat(eta2: dict, eta1: dict, M: MackeyFunctor) -> dict:
    """eta2 ∘ eta1 (eta1 out of M)."""
    R = M.ring
    return {a: linalg.mat_mul(eta2[a], eta1[a], R, inner=len(eta1[a])) for a in eta1}


def lifting_exists(eps: dict, A: MackeyFunctor, B: MackeyFunctor, phi: dict, P: MackeyFunctor) -> dict | None:
    """A lift psi: P -> A with eps ∘ psi = phi, or None."""
    R = A.ring
    basis = nat_transforms(P, A)
    target = _flatten(phi, P, B)
    cols = [_flatten(compose_nat(eps, psi, P), P, B) for psi in basis]
    if not cols:
        coeffs = [] if not any(target) else None
    else:
        coeffs = linalg.span_coordinates(cols, target, R)
    if coeffs is None:
        return None
    out = {a: linalg.zeros(A.values[a], P.values[a], R) for a in range(len(A.values))}
    for c, psi in zip(coeffs, basis):
        for a in out:
            out[a] = linalg.mat_add(out[a], linalg.mat_scale(c, psi[a], R), R)
    return out


def is_epimorphism(eps: dict, B: MackeyFunctor) -> bool:
    """Surjective at every value (eps[a] is B.values[a] x A.values[a])."""
    R = B.ring
    return all(linalg.span_rank(eps[a], R) == B.values[a] for a in range(len(B.values)))


def random_combination(basis: list[dict], R: Ring, rng: random.Random) -> dict:
    out = None
    for eta in basis:
        c = R.coerce(rng.randrange(R.modulus) if R.kind == "Fp" else rng.randint(-2, 2))
        scaled = {a: linalg.mat_scale(c, m, R) for a, m in eta.items()}
        out = scaled if out is None else {a: linalg.mat_add(out[a], scaled[a], R) for a in out}
    return out


# ---------------------------------------------------------------------------
# Omega-functors and the cohomological criterion


@dataclass(eq=False)
class OmegaFunctor:
    """Additive presheaf on Omega(G), on the skeleton: (a, b, p) indexes omega_hom_basis(S_a, S_b)."""

    group: Group
    ring: Ring
    values: tuple[int, ...]
    action: dict = field(repr=False)

    def matrix(self, a: int, b: int, coords) -> list:
        R = self.ring
        out = linalg.zeros(self.values[a], self.values[b], R)
        for p, c in enumerate(coords):
            if c:
                out = linalg.mat_add(out, linalg.mat_scale(R.coerce(c), self.action[(a, b, p)], R), R)
        return out


def omega_pullback(M: MackeyFunctor) -> OmegaFunctor:
    """M ∘ R(-): evaluate M on the linearization of every Omega basis span."""
    sk = M.skeleton
    action = {}
    for a, b in sk.pairs():
        K, H = sk.reps[a], sk.reps[b]
        for p, bs in enumerate(omega_hom_basis(K, H)):
            lin = linearize_span(basis_span_sum(K, H, bs), M.ring)
            action[(a, b, p)] = M.matrix(a, b, sk.coords(lin, a, b))
    return OmegaFunctor(M.group, M.ring, M.values, action)


def omega_representable(G: Group, R: Ring, target: int) -> OmegaFunctor:
    """Hom_Omega(-, G/S_target) with precomposition: a Burnside-type functor."""
    sk = skeleton(G, R)
    T = sk.reps[target]
    vals = [len(omega_hom_basis(S, T)) for S in sk.reps]
    action = {}
    for a, b in sk.pairs():
        K, H = sk.reps[a], sk.reps[b]
        homs_b = [basis_span_sum(H, T, s) for s in omega_hom_basis(H, T)]
        for p, bs in enumerate(omega_hom_basis(K, H)):
            f = basis_span_sum(K, H, bs)
            cols = [[R.coerce(c) for c in span_coordinates(span_compose(f, s))] for s in homs_b]
            action[(a, b, p)] = linalg.transpose(cols, vals[a]) if cols else [[] for _ in range(vals[a])]
    return OmegaFunctor(G, R, tuple(vals), action)


@dataclass
class CohomologicalReport:
    cohomological: bool
    witness: tuple[Subgroup, Subgroup] | None = None  # (K, H) with K <= H
    factored: MackeyFunctor | None = None


def check_cohomological(F: OmegaFunctor) -> CohomologicalReport:
    """True iff every (G/H <- G/K -> G/H) - [H:K] id acts as zero; then factor through perm."""
    G, R = F.group, F.ring
    sk = skeleton(G, R)
    for b, H in enumerate(sk.reps):
        for K in subgroup_classes_within(H):
            gen = ideal_generator(K, H)
            if not gen:
                continue
            coords = span_coordinates(gen)
            if not linalg.is_zero(F.matrix(b, b, coords)):
                return CohomologicalReport(False, (K, H))
    action = {}
    for a, b in sk.pairs():
        K, H = sk.reps[a], sk.reps[b]
        obasis = omega_hom_basis(K, H)
        pos = {(s.g, s.L.elements): i for i, s in enumerate(obasis)}
        for p, g in enumerate(sk.double_cosets(a, b)):
            L = intersect(conjugate_subgroup(K, G.inv(g)), H)
            action[(a, b, p)] = F.action[(a, b, pos[(g, L.elements)])]
    return CohomologicalReport(True, None, MackeyFunctor(G, R, F.values, action))


# ---------------------------------------------------------------------------
# rho / tau / sigma


def _functor_over(G: Group, R: Ring, src: MackeyFunctor, move_set, move_morphism) -> MackeyFunctor:
    """src ∘ F for a functor F from perm(G) to perm(src.group) given on sets and morphisms."""
    sk = skeleton(G, R)
    values = [src.evaluate(move_set(X)) for X in sk.sets]

    def act(a, b, p, f):
        return src.evaluate_morphism(move_morphism(f))

    return _functor_from(G, R, values, act)


def tau(M: MackeyFunctor, G: Group) -> MackeyFunctor:
    """tau^G_{G'}(M) = M ∘ Res^G_{G'} for M over G' <= G."""
    from .gsets import restrict_gset

    Gp = M.group
    return _functor_over(
        G, M.ring, M, lambda X: restrict_gset(X, Gp), lambda f: restrict_morphism(f, Gp)
    )


def rho(N: MackeyFunctor, Gp: Group) -> MackeyFunctor:
    """rho^G_{G'}(N) = N ∘ Ind^G_{G'} for N over G, result over G' <= G."""
    from .gsets import induce_gset

    G = N.group
    return _functor_over(
        Gp, N.ring, N, lambda X: induce_gset(X, G)[0], lambda f: induce_morphism(f, G)
    )


def sigma(M: MackeyFunctor, gamma: int) -> MackeyFunctor:
    """sigma_gamma(M) = M ∘ c_{gamma^-1}: from M over G' to a functor over gamma G' gamma^-1.

    ``gamma`` is an element index of the root group.
    """
    from .groups import as_group
    from .gsets import conjugate_gset

    Gp = M.group
    root = Gp.root
    conj = as_group(Subgroup(root, tuple(sorted(root.conj(gamma, r) for r in Gp.root_index))))
    ginv = root.inv(gamma)
    return _functor_over(
        conj, M.ring, M, lambda X: conjugate_gset(X, ginv), lambda f: conjugate_morphism(f, ginv)
    )


def mackey_functor_formula(M: MackeyFunctor, G: Group, H: Group) -> dict:
    """Value ranks of rho^G_H tau^G_K M against ⊕_{γ in H\\G/K} tau^H σ_γ rho^K M, M over K."""
    from .groups import as_group, subgroup_in

    K = M.group
    R = M.ring
    lhs = rho(tau(M, G), H)
    Ks, Hs = subgroup_in(K, G), subgroup_in(H, G)
    total = [0] * len(lhs.values)
    for gamma in double_cosets(G, Hs, Ks):
        gamma_r = G.root_index[gamma]
        # K ∩ gamma^-1 H gamma, as a group
        inner = intersect(Ks, conjugate_subgroup(Hs, G.inv(gamma)))
        piece = rho(M, as_group(inner))
        piece = sigma(piece, gamma_r)
        piece = tau(piece, H)
        total = [x + y for x, y in zip(total, piece.values)]
    return {"lhs": list(lhs.values), "rhs": total, "ok": list(lhs.values) == total, "ring": str(R)}


# ---------------------------------------------------------------------------
# the cohomological Mackey algebra


@dataclass(eq=False)
class MackeyAlgebra:
    """⊔_{H,K} Hom(R(G/H), R(G/K)) over all subgroups, multiplied by composition.

    Elements are coefficient vectors over ``basis`` = (source index, target index, p).
    ``mul(x, y)`` is ``x ∘ y`` (y applied first).
    """

    group: Group
    ring: Ring
    subgroups: list[Subgroup]
    basis: list[tuple[int, int, int]]
    _table: dict = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def unit(self) -> list:
        R = self.ring
        return [R.one if (i == j and p == 0) else R.zero for i, j, p in self.basis]

    def _product(self, u: int, v: int) -> list[tuple[int, object]]:
        """basis[v] ∘ basis[u] as sparse coordinates (u applied first)."""
        key = (u, v)
        if key in self._table:
            return self._table[key]
        i, j, p = self.basis[u]
        j2, k, q = self.basis[v]
        out = []
        if j == j2:
            S = self.subgroups
            comp = perm_hom_basis(S[j], S[k], self.ring)[q].compose(perm_hom_basis(S[i], S[j], self.ring)[p])
            cH = coset_space(S[k])
            for r, g in enumerate(double_cosets(self.group, S[i], S[k])):
                c = comp.matrix[cH.lookup[g]][0]
                if c:
                    out.append((self._index[(i, k, r)], c))
        self._table[key] = out
        return out

    @property
    def _index(self) -> dict:
        if "_idx" not in self.__dict__:
            self.__dict__["_idx"] = {b: n for n, b in enumerate(self.basis)}
        return self.__dict__["_idx"]

    def mul(self, x: list, y: list) -> list:
        R = self.ring
        out = [R.zero] * len(self.basis)
        for u, yu in enumerate(y):
            if not yu:
                continue
            for v, xv in enumerate(x):
                if not xv:
                    continue
                for w, c in self._product(u, v):
                    out[w] = R.add(out[w], R.mul(R.mul(xv, yu), c))
        return out


def mackey_algebra(G: Group, R: Ring) -> MackeyAlgebra:
    subs = list(all_subgroups(G).subgroups)
    basis = []
    for i, S in enumerate(subs):
        for j, T in enumerate(subs):
            basis.extend((i, j, p) for p in range(len(double_cosets(G, S, T))))
    return MackeyAlgebra(G, R, subs, basis)


def transport_subgroup(S: Subgroup, G: Group) -> Subgroup:
    return transport(S, G)
