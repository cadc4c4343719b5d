"""Permutation modules R(X), equivariant matrices, linearization of spans, and the
restriction / induction / conjugation / inflation functors on permutation modules.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import linalg
from .errors import MalformedInput, NotEquivariant
from .groups import (
    Group,
    Quotient,
    Subgroup,
    all_subgroups,
    as_group,
    class_rep_under,
    conjugate_subgroup,
    coset_space,
    double_cosets,
    intersect,
    preimage,
    subgroup_classes_within,
    transport,
)
from .gsets import (
    EquivariantMap,
    GSet,
    conjugate_gset,
    coproduct,
    induce_gset,
    inflate_gset,
    orbit_decompose,
    point_gset,
    product,
    restrict_gset,
    transitive_gset,
)
from .rings import Ring
from .spans import (
    SpanSum,
    basis_span_sum,
    ideal_generator,
    omega_hom_basis,
    realize,
    span_compose,
    span_coordinates,
)


@dataclass(frozen=True)
class PermModule:
    """The free R-module on a G-set."""

    basis: GSet
    ring: Ring

    @property
    def rank(self) -> int:
        return self.basis.size

    @property
    def group(self) -> Group:
        return self.basis.group

    def action_matrix(self, g: int) -> list[list]:
        n = self.rank
        M = linalg.zeros(n, n, self.ring)
        for x, y in enumerate(self.basis.action[g]):
            M[y][x] = self.ring.one
        return M


@dataclass(frozen=True, eq=False)
class PermMorphism:
    """Equivariant R-linear map; ``matrix`` is target-basis x source-basis."""

    source: PermModule
    target: PermModule
    matrix: list = field(repr=False)

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def __eq__(self, other):
        return (
            isinstance(other, PermMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def is_equivariant(self) -> bool:
        A = self.matrix
        sa, ta = self.source.basis.action, self.target.basis.action
        for g in self.source.group.generators:
            ts, tt = sa[g], ta[g]
            for y, row in enumerate(A):
                gy = tt[y]
                for x, a in enumerate(row):
                    if A[gy][ts[x]] != a:
                        return False
        return True

    def validate(self) -> "PermMorphism":
        if len(self.matrix) != self.target.rank or any(len(r) != self.source.rank for r in self.matrix):
            raise MalformedInput("matrix shape does not match target x source")
        if not self.is_equivariant():
            raise NotEquivariant("matrix does not commute with the group action")
        return self

    def compose(self, other: "PermMorphism") -> "PermMorphism":
        """``self ∘ other``."""
        return PermMorphism(
            other.source, self.target, linalg.mat_mul(self.matrix, other.matrix, self.ring, inner=other.target.rank)
        )

    def __add__(self, other):
        return PermMorphism(self.source, self.target, linalg.mat_add(self.matrix, other.matrix, self.ring))

    def scale(self, c):
        return PermMorphism(self.source, self.target, linalg.mat_scale(self.ring.coerce(c), self.matrix, self.ring))

    def is_zero(self) -> bool:
        return linalg.is_zero(self.matrix)

    def flat(self) -> list:
        return [a for row in self.matrix for a in row]


def zero_morphism(P: PermModule, Q: PermModule) -> PermMorphism:
    return PermMorphism(P, Q, linalg.zeros(Q.rank, P.rank, P.ring))


def identity_morphism(P: PermModule) -> PermMorphism:
    return PermMorphism(P, P, linalg.identity(P.rank, P.ring))


# ---------------------------------------------------------------------------
# linearization


def linearize_gset(X: GSet, R: Ring) -> PermModule:
    return PermModule(X, R)


def linearize_map(f: EquivariantMap, R: Ring) -> PermMorphism:
    M = linalg.zeros(f.target.size, f.source.size, R)
    for x, y in enumerate(f.images):
        M[y][x] = R.one
    return PermMorphism(PermModule(f.source, R), PermModule(f.target, R), M)


def linearize_span(s: SpanSum, R: Ring) -> PermMorphism:
    M = [[0] * s.source.size for _ in range(s.target.size)]
    for sp, c in realize(s):
        for z in range(sp.middle.size):
            M[sp.right.images[z]][sp.left.images[z]] += c
    return PermMorphism(PermModule(s.source, R), PermModule(s.target, R), linalg.coerce_matrix(M, R))


# ---------------------------------------------------------------------------
# hom spaces


def equivariant_hom_solve(X: GSet, Y: GSet, R: Ring) -> list[PermMorphism]:
    """Basis of Hom_G(R(X), R(Y)) by solving A P_g = P_g A for the generators g.

    Independent of any double-coset description. Over Z/n the result generates
    the hom module but need not be independent.
    """
    key = ("homsolve", id(X), id(Y), str(R))
    G = X.group
    if key in G._cache and G._cache[key][0] is X and G._cache[key][1] is Y:
        return G._cache[key][2]
    n, m = X.size, Y.size
    rows = []
    for g in G.generators:
        ax, ay = X.action[g], Y.action[g]
        for y in range(m):
            for x in range(n):
                a, b = y * n + x, ay[y] * n + ax[x]
                if a != b:
                    rows.append({a: 1, b: -1})
    vecs = linalg.nullspace(rows, n * m, R)
    P, Q = PermModule(X, R), PermModule(Y, R)
    out = [PermMorphism(P, Q, [list(v[y * n:(y + 1) * n]) for y in range(m)]) for v in vecs]
    G._cache[key] = (X, Y, out)
    return out


def hom_rank(X: GSet, Y: GSet, R: Ring) -> int:
    return len(equivariant_hom_solve(X, Y, R))


def perm_hom_basis(K: Subgroup, H: Subgroup, R: Ring) -> list[PermMorphism]:
    """One morphism per g in K\\G/H: [x]_K |-> sum over [k] in K/(K ∩ gHg^-1) of [x k g]_H."""
    G = K.group
    key = ("permbasis", K.elements, H.elements, str(R))
    if key in G._cache:
        return G._cache[key]
    X, Y = transitive_gset(G, K), transitive_gset(G, H)
    cK, cH = coset_space(K), coset_space(H)
    P, Q = PermModule(X, R), PermModule(Y, R)
    t = G.table
    out = []
    for g in double_cosets(G, K, H):
        Kg = intersect(K, conjugate_subgroup(H, g))
        inner = coset_space(Kg)
        ks = [k for k in inner.reps if k in K.members]
        M = linalg.zeros(Y.size, X.size, R)
        for col, r in enumerate(cK.reps):
            for k in ks:
                row = cH.lookup[t[t[r][k]][g]]
                M[row][col] = R.add(M[row][col], R.one)
        out.append(PermMorphism(P, Q, M))
    G._cache[key] = out
    return out


def hom_coordinates(A: PermMorphism, K: Subgroup, H: Subgroup) -> list:
    """Coordinates of an equivariant A: R(G/K) -> R(G/H) in :func:`perm_hom_basis`.

    The basis elements are indicator matrices of the G-orbits on G/K x G/H, and the
    orbit of [g] meets column [e]_K at row [g]_H, so the coordinate is that entry.
    """
    G = K.group
    cH = coset_space(H)
    return [A.matrix[cH.lookup[g]][0] for g in double_cosets(G, K, H)]


def dual_morphism(f: PermMorphism) -> PermMorphism:
    """Dual under the self-duality x |-> delta_x, i.e. the transpose."""
    return PermMorphism(f.target, f.source, linalg.transpose(f.matrix, f.source.rank))


def dual_of_map(f: EquivariantMap, R: Ring) -> PermMorphism:
    """R(Y) -> R(X), y |-> sum over the fiber f^-1(y)."""
    M = linalg.zeros(f.source.size, f.target.size, R)
    for x, y in enumerate(f.images):
        M[x][y] = R.one
    return PermMorphism(PermModule(f.target, R), PermModule(f.source, R), M)


def tensor_modules(P: PermModule, Q: PermModule) -> PermModule:
    return PermModule(product(P.basis, Q.basis), P.ring)


def tensor_morphism(f: PermMorphism, g: PermMorphism) -> PermMorphism:
    R = f.ring
    A, B = f.matrix, g.matrix
    M = [[R.mul(a, b) for a in ra for b in rb] for ra in A for rb in B]
    return PermMorphism(tensor_modules(f.source, g.source), tensor_modules(f.target, g.target), M)


@dataclass
class TensorDecomposition:
    summands: list[tuple[int, Subgroup]]  # (double coset rep g, K ∩ gHg^-1)
    iso: PermMorphism  # ⊕ R(G/(K ∩ gHg^-1)) -> R(G/K) ⊗ R(G/H)
    inverse: PermMorphism
    verified: bool


def _is_permutation_matrix(M) -> bool:
    n = len(M)
    if any(len(r) != n for r in M):
        return False
    cols = [0] * n
    for r in M:
        nz = [j for j, a in enumerate(r) if a]
        if len(nz) != 1 or r[nz[0]] != 1:
            return False
        cols[nz[0]] += 1
    return all(c == 1 for c in cols)


def tensor_decompose(K: Subgroup, H: Subgroup, R: Ring) -> TensorDecomposition:
    """R(G/K) ⊗ R(G/H) ≅ ⊕_g R(G/(K ∩ gHg^-1)) via [x]_{K∩gHg^-1} |-> [x]_K ⊗ [x g]_H."""
    G = K.group
    cK, cH = coset_space(K), coset_space(H)
    summands = [(g, intersect(K, conjugate_subgroup(H, g))) for g in double_cosets(G, K, H)]
    pieces = [transitive_gset(G, S) for _, S in summands]
    src = coproduct(*pieces)
    tgt = product(transitive_gset(G, K), transitive_gset(G, H))
    M = linalg.zeros(tgt.size, src.size, R)
    col = 0
    nH = len(cH)
    t = G.table
    for g, S in summands:
        for x in coset_space(S).reps:
            M[cK.lookup[x] * nH + cH.lookup[t[x][g]]][col] = R.one
            col += 1
    iso = PermMorphism(PermModule(src, R), PermModule(tgt, R), M)
    inverse = dual_morphism(iso)
    ok = (
        src.size == tgt.size
        and _is_permutation_matrix(M)
        and iso.is_equivariant()
        and linalg.mat_mul(M, inverse.matrix, R) == linalg.identity(tgt.size, R)
    )
    return TensorDecomposition(summands, iso, inverse, ok)


# ---------------------------------------------------------------------------
# restriction, induction, conjugation, inflation


def restrict_module(P: PermModule, K: Subgroup | Group) -> PermModule:
    return PermModule(restrict_gset(P.basis, K), P.ring)


def restrict_morphism(f: PermMorphism, K: Subgroup | Group) -> PermMorphism:
    return PermMorphism(restrict_module(f.source, K), restrict_module(f.target, K), f.matrix)


@dataclass
class Induced:
    module: PermModule
    pairs: list[tuple[int, int]]  # point -> (coset index in G/H, point of the H-set)


def induce_module(P: PermModule, G: Group) -> Induced:
    X, pairs = induce_gset(P.basis, G)
    return Induced(PermModule(X, P.ring), pairs)


def induce_morphism(f: PermMorphism, G: Group) -> PermMorphism:
    """Ind(f): (r, y) |-> sum over y' of f[y', y] (r, y')."""
    src = induce_module(f.source, G)
    tgt = induce_module(f.target, G)
    R = f.ring
    ns, nt = f.source.rank, f.target.rank
    ncos = len(src.pairs) // ns if ns else (len(tgt.pairs) // nt if nt else 0)
    M = linalg.zeros(len(tgt.pairs), len(src.pairs), R)
    for k in range(ncos):
        for y2 in range(nt):
            row = f.matrix[y2]
            for y in range(ns):
                if row[y]:
                    M[k * nt + y2][k * ns + y] = row[y]
    return PermMorphism(src.module, tgt.module, M)


def conjugate_module(P: PermModule, g: int) -> PermModule:
    return PermModule(conjugate_gset(P.basis, g), P.ring)


def conjugate_morphism(f: PermMorphism, g: int) -> PermMorphism:
    return PermMorphism(conjugate_module(f.source, g), conjugate_module(f.target, g), f.matrix)


def inflate_module(P: PermModule, q: Quotient) -> PermModule:
    return PermModule(inflate_gset(P.basis, q.projection, q.normal.group), P.ring)


def inflate_morphism(f: PermMorphism, q: Quotient) -> PermMorphism:
    return PermMorphism(inflate_module(f.source, q), inflate_module(f.target, q), f.matrix)


# ---------------------------------------------------------------------------
# checks


def _stabilizer_classes(X: GSet, ambient: Group) -> Counter:
    """Multiset of ambient-conjugacy classes of orbit stabilizers, keyed by root elements."""
    amb = ambient.whole()
    out = Counter()
    for S, _ in orbit_decompose(X):
        S_amb = transport(S, ambient)
        rep = class_rep_under(S_amb, amb)
        out[tuple(sorted(ambient.root_index[a] for a in rep.elements))] += 1
    return out


def mackey_formula_check(K: Subgroup, H: Subgroup) -> dict:
    """Compare Res_K Ind_H R(H/L) with ⊕_g Ind^K_{K∩gHg^-1} c_g Res^H_{H∩g^-1Kg} R(H/L).

    Both sides are K-sets; they agree as multisets of K-conjugacy classes of
    stabilizers, for every L <= H up to H-conjugacy.
    """
    G = K.group
    Kg, Hg = as_group(K), as_group(H)
    rows = []
    ok = True
    for L in subgroup_classes_within(H):
        HL = transitive_gset(Hg, transport(L, Hg))
        lhs_set = restrict_gset(induce_gset(HL, G)[0], K)
        lhs = _stabilizer_classes(lhs_set, Kg)
        rhs: Counter = Counter()
        for g in double_cosets(G, K, H):
            inner = intersect(H, conjugate_subgroup(K, G.inv(g)))  # H ∩ g^-1 K g
            piece = conjugate_gset(restrict_gset(HL, inner), g)  # over K ∩ gHg^-1
            rhs += _stabilizer_classes(induce_gset(piece, Kg)[0], Kg)
        same = lhs == rhs
        ok &= same
        rows.append(
            {
                "L": list(L.elements),
                "lhs": sorted([list(k), v] for k, v in lhs.items()),
                "rhs": sorted([list(k), v] for k, v in rhs.items()),
                "equal": same,
            }
        )
    return {"K": list(K.elements), "H": list(H.elements), "cases": rows, "ok": ok}


def inflation_check(q: Quotient, R: Ring) -> dict:
    """For every pair of subgroups of G/N, compare hom bases through inflation.

    The map K\\G/H -> Kbar\\Gbar/Hbar must be a bijection, and the inflated basis of
    Hom(R(Gbar/Kbar), R(Gbar/Hbar)), transported along G/K ≅ Infl(Gbar/Kbar), must be
    exactly the basis of Hom(R(G/K), R(G/H)).
    """
    Gb = q.group
    G = q.normal.group
    subs = all_subgroups(Gb).subgroups
    rows = []
    ok = True
    for Kb in subs:
        for Hb in subs:
            K, H = preimage(q, Kb), preimage(q, Hb)
            dc = double_cosets(G, K, H)
            dcb = double_cosets(Gb, Kb, Hb)
            image = sorted({_dc_index(Gb, Kb, Hb, q.projection[g], dcb) for g in dc})
            bij = len(dc) == len(dcb) and image == list(range(len(dcb)))
            basis_G = [b.matrix for b in perm_hom_basis(K, H, R)]
            cK, cH = coset_space(K), coset_space(H)
            cKb, cHb = coset_space(Kb), coset_space(Hb)
            # point of Infl(Gbar/Kbar) <-> point of G/K
            kmap = [cKb.lookup[q.projection[r]] for r in cK.reps]
            hmap = [cHb.lookup[q.projection[r]] for r in cH.reps]
            transported = []
            for b in perm_hom_basis(Kb, Hb, R):
                infl = inflate_morphism(b, q)
                if not infl.is_equivariant():
                    bij = False
                M = [[infl.matrix[hmap[i]][kmap[j]] for j in range(len(kmap))] for i in range(len(hmap))]
                transported.append(M)
            match = sorted(map(repr, transported)) == sorted(map(repr, basis_G))
            good = bij and match
            ok &= good
            rows.append({"K": list(K.elements), "H": list(H.elements), "double_cosets": len(dc), "ok": good})
    return {"normal": list(q.normal.elements), "pairs": rows, "ok": ok}


def _dc_index(G, K, H, g, reps):
    from .groups import double_coset_rep

    return reps.index(double_coset_rep(G, K, H, g))


def ideal_vectors(K: Subgroup, H: Subgroup) -> list[list[int]]:
    """Omega-coordinates of alpha ∘ gen ∘ beta spanning the ideal in Hom_Omega(G/K, G/H).

    J runs over conjugacy-class representatives and generators over J-classes of
    subgroups of J; conjugates differ by invertible spans, which alpha and beta absorb.
    """
    G = K.group
    key = ("ideal", K.elements, H.elements)
    if key in G._cache:
        return G._cache[key]
    vecs = []
    seen = set()
    for J in all_subgroups(G).representatives:
        betas = [basis_span_sum(K, J, b) for b in omega_hom_basis(K, J)]
        alphas = [basis_span_sum(J, H, b) for b in omega_hom_basis(J, H)]
        for Kp in subgroup_classes_within(J):
            gen = ideal_generator(Kp, J)
            if not gen:
                continue
            for beta in betas:
                gb = span_compose(beta, gen)
                if not gb:
                    continue
                for alpha in alphas:
                    v = tuple(span_coordinates(span_compose(gb, alpha)))
                    if any(v) and v not in seen:
                        seen.add(v)
                        vecs.append(list(v))
    vecs.sort()
    G._cache[key] = vecs
    return vecs


def quotient_equivalence_check(K: Subgroup, H: Subgroup, R: Ring) -> dict:
    """Check that R(-): Hom_{Omega_R}(G/K, G/H) -> Hom(R(G/K), R(G/H)) is onto with kernel the ideal."""
    G = K.group
    X, Y = transitive_gset(G, K), transitive_gset(G, H)
    basis = omega_hom_basis(K, H)
    images = [linearize_span(basis_span_sum(K, H, b), R).flat() for b in basis]
    hom = [A.flat() for A in equivariant_hom_solve(X, Y, R)]
    # (i) onto: every solver basis vector is an R-combination of the images
    onto = all(linalg.span_coordinates(images, v, R) is not None for v in hom)
    # (ii) kernel of the linearization on Omega coordinates
    lin_rows = linalg.transpose(images) if images else []
    kernel = linalg.nullspace(lin_rows, len(basis), R)
    ideal = [[R.coerce(c) for c in v] for v in ideal_vectors(K, H)]
    ideal_in_kernel = all(
        not any(linalg.mat_vec(lin_rows, v, R)) for v in ideal
    ) if lin_rows else True
    kernel_in_ideal = all(linalg.span_coordinates(ideal, v, R) is not None for v in kernel)
    omega_rank = len(basis)
    perm_rank = len(hom)
    ok = onto and ideal_in_kernel and kernel_in_ideal
    return {
        "K": list(K.elements),
        "H": list(H.elements),
        "ring": str(R),
        "omega_rank": omega_rank,
        "perm_rank": perm_rank,
        "kernel_rank": len(kernel),
        "surjective": onto,
        "ideal_in_kernel": ideal_in_kernel,
        "kernel_in_ideal": kernel_in_ideal,
        "ok": ok,
    }


def trivial_module(G: Group, R: Ring) -> PermModule:
    return PermModule(point_gset(G), R)
