"""Complexes of permutation modules: fixed points, homology, Γ-acyclicity and contractibility.

Degrees run downwards: ``d[n]: X_n -> X_{n-1}``. A bounded complex lives in
degrees ``lo..hi``; a 2-periodic complex has ``X_0, X_1`` with ``d[1]: X_1 -> X_0``
and ``d[0]: X_0 -> X_1`` (read as ``X_0 -> X_{-1} = X_1``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg
from .errors import BadPrime, FieldRequired, MalformedInput, ShapeUnsupported
from .groups import Group, Subgroup, all_subgroups, named_group
from .gsets import GSet, coproduct, empty_gset, transitive_gset
from .perm import PermModule, PermMorphism, equivariant_hom_solve
from .rings import GF, Ring, is_prime

BOUNDED = "bounded"
PERIODIC2 = "periodic2"


@dataclass(frozen=True)
class Invariants:
    """A finitely generated module up to isomorphism: free rank plus torsion factors."""

    rank: int
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def as_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True, eq=False)
class ChainComplex:
    group: Group
    ring: Ring
    shape: str
    lo: int
    hi: int
    modules: dict = field(repr=False)  # degree -> PermModule
    d: dict = field(repr=False)  # degree n -> matrix X_{n-1} x X_n

    @property
    def degrees(self) -> list[int]:
        return list(range(self.lo, self.hi + 1))

    def module(self, n: int) -> PermModule:
        if self.shape == PERIODIC2:
            return self.modules[n % 2]
        if n in self.modules:
            return self.modules[n]
        return PermModule(empty_gset(self.group), self.ring)

    def rank(self, n: int) -> int:
        return self.module(n).rank

    def diff(self, n: int) -> list:
        if self.shape == PERIODIC2:
            return self.d[n % 2]
        if n in self.d:
            return self.d[n]
        return linalg.zeros(self.rank(n - 1), self.rank(n), self.ring)

    def diff_morphism(self, n: int) -> PermMorphism:
        return PermMorphism(self.module(n), self.module(n - 1), self.diff(n))

    def validate(self) -> "ChainComplex":
        R = self.ring
        for n in self.degrees:
            A = self.diff(n)
            if len(A) != self.rank(n - 1) or any(len(r) != self.rank(n) for r in A):
                raise MalformedInput(f"differential in degree {n} has the wrong shape")
            self.diff_morphism(n).validate()
            dd = linalg.mat_mul(self.diff(n - 1), A, R, inner=self.rank(n - 1))
            if not linalg.is_zero(dd):
                raise MalformedInput(f"d∘d is nonzero out of degree {n}")
        return self


def bounded_complex(G: Group, R: Ring, lo: int, modules: list[GSet], diffs: list) -> ChainComplex:
    """``modules[i]`` sits in degree ``lo + i``; ``diffs[i]`` is ``d_{lo+i+1}``."""
    if len(diffs) != max(len(modules) - 1, 0):
        raise MalformedInput("a bounded complex with k modules needs k-1 differentials")
    mods = {lo + i: PermModule(X, R) for i, X in enumerate(modules)}
    d = {lo + i + 1: linalg.coerce_matrix(A, R) for i, A in enumerate(diffs)}
    return ChainComplex(G, R, BOUNDED, lo, lo + len(modules) - 1, mods, d)


def periodic_complex(G: Group, R: Ring, modules: list[GSet], diffs: list) -> ChainComplex:
    """``diffs = [d_1: X_1 -> X_0, d_0: X_0 -> X_1]``."""
    if len(modules) != 2 or len(diffs) != 2:
        raise MalformedInput("a 2-periodic complex has two modules and two differentials")
    mods = {0: PermModule(modules[0], R), 1: PermModule(modules[1], R)}
    d = {1: linalg.coerce_matrix(diffs[0], R), 0: linalg.coerce_matrix(diffs[1], R)}
    return ChainComplex(G, R, PERIODIC2, 0, 1, mods, d)


def stalk(G: Group, R: Ring, X: GSet, n: int = 0) -> ChainComplex:
    return bounded_complex(G, R, n, [X], [])


def direct_sum(*cs: ChainComplex) -> ChainComplex:
    C0 = cs[0]
    if any(C.shape != BOUNDED for C in cs):
        raise ShapeUnsupported("direct sums are implemented for bounded complexes")
    G, R = C0.group, C0.ring
    lo, hi = min(C.lo for C in cs), max(C.hi for C in cs)
    mods, d = {}, {}
    for n in range(lo, hi + 1):
        mods[n] = PermModule(coproduct(*(C.module(n).basis for C in cs)), R)
    for n in range(lo + 1, hi + 1):
        d[n] = linalg.block_diag([C.diff(n) for C in cs], [(C.rank(n - 1), C.rank(n)) for C in cs], R)
    return ChainComplex(G, R, BOUNDED, lo, hi, mods, d)


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    components: dict = field(repr=False)  # degree -> matrix Y_n x X_n

    def component(self, n: int) -> list:
        if n in self.components:
            return self.components[n]
        return linalg.zeros(self.target.rank(n), self.source.rank(n), self.source.ring)

    def validate(self) -> "ChainMap":
        X, Y, R = self.source, self.target, self.source.ring
        lo, hi = min(X.lo, Y.lo), max(X.hi, Y.hi)
        for n in range(lo, hi + 1):
            f = self.component(n)
            PermMorphism(X.module(n), Y.module(n), f).validate()
            lhs = linalg.mat_mul(Y.diff(n), f, R, inner=Y.rank(n))
            rhs = linalg.mat_mul(self.component(n - 1), X.diff(n), R, inner=X.rank(n - 1))
            if lhs != rhs:
                raise MalformedInput(f"chain map does not commute with d in degree {n}")
        return self


def identity_chain_map(X: ChainComplex) -> ChainMap:
    return ChainMap(X, X, {n: linalg.identity(X.rank(n), X.ring) for n in X.degrees})


def zero_complex(G: Group, R: Ring) -> ChainComplex:
    return bounded_complex(G, R, 0, [empty_gset(G)], [])


# ---------------------------------------------------------------------------
# fixed points and homology


@dataclass(frozen=True, eq=False)
class PlainComplex:
    """A complex of free R-modules given by ranks and matrices, same degree conventions."""

    ring: Ring
    shape: str
    lo: int
    hi: int
    ranks: dict
    d: dict

    def rank(self, n: int) -> int:
        if self.shape == PERIODIC2:
            return self.ranks[n % 2]
        return self.ranks.get(n, 0)

    def diff(self, n: int) -> list:
        if self.shape == PERIODIC2:
            return self.d[n % 2]
        if n in self.d:
            return self.d[n]
        return linalg.zeros(self.rank(n - 1), self.rank(n), self.ring)


def integer_complex(diffs: dict, ranks: dict, ring: Ring) -> PlainComplex:
    lo, hi = min(ranks), max(ranks)
    return PlainComplex(ring, BOUNDED, lo, hi, dict(ranks), {n: linalg.coerce_matrix(A, ring) for n, A in diffs.items()})


def _orbit_basis(X: GSet, H: Subgroup) -> tuple[list[list[int]], list[int]]:
    """H-orbits on X (sorted by minimal point) and the point -> orbit index map."""
    lab = [-1] * X.size
    orbits = []
    for x in range(X.size):
        if lab[x] < 0:
            orb = sorted({X.action[h][x] for h in H.elements})
            for y in orb:
                lab[y] = len(orbits)
            orbits.append(orb)
    return orbits, lab


def fixed_point_complex(X: ChainComplex, H: Subgroup) -> PlainComplex:
    """X^H in the basis of H-orbit sums."""
    R = X.ring
    degs = [0, 1] if X.shape == PERIODIC2 else X.degrees
    orb = {n: _orbit_basis(X.module(n).basis, H) for n in degs}
    if X.shape == BOUNDED:
        orb.setdefault(X.lo - 1, ([], []))
    ranks = {n: len(orb[n][0]) for n in degs}
    d = {}
    for n in degs:
        if X.shape == BOUNDED and n == X.lo:
            continue
        src, (tgt, _) = orb[n][0], orb[(n - 1) % 2 if X.shape == PERIODIC2 else n - 1]
        A = X.diff(n)
        M = linalg.zeros(len(tgt), len(src), R)
        for j, O in enumerate(src):
            for i, T in enumerate(tgt):
                y = T[0]
                s = R.zero
                for x in O:
                    s = R.add(s, A[y][x])
                M[i][j] = s
        d[n] = M
    return PlainComplex(R, X.shape, X.lo, X.hi, ranks, d)


def _columns(A: list, ncols: int) -> list[list]:
    return [[row[j] for row in A] for j in range(ncols)]


def homology(C: PlainComplex, n: int) -> Invariants:
    """H_n = ker d_n / im d_{n+1}."""
    R = C.ring
    dim = C.rank(n)
    if dim == 0:
        return Invariants(0)
    A = C.diff(n)
    if C.rank(n - 1):
        ker = linalg.nullspace(A, dim, R)
    else:
        ker = [[R.one if i == j else R.zero for j in range(dim)] for i in range(dim)]
    im = _columns(C.diff(n + 1), C.rank(n + 1))
    if R.is_field:
        return Invariants(len(ker) - linalg.span_rank(im, R))
    rk, tors = linalg.module_invariants_of_quotient(_ints(ker), _ints(im), dim, R)
    return Invariants(rk, tors)


def _ints(vectors) -> list[list[int]]:
    return [[int(x) for x in v] for v in vectors]


def fixed_homology(X: ChainComplex, H: Subgroup, n: int) -> Invariants:
    return homology(fixed_point_complex(X, H), n)


def _class_reps(G: Group) -> list[Subgroup]:
    return all_subgroups(G).representatives


def is_gamma_acyclic(X: ChainComplex) -> tuple[bool, list[tuple[Subgroup, int, Invariants]]]:
    """Every X^H (H up to conjugacy) is exact; the report lists nonvanishing (H, n, H_n)."""
    witnesses = []
    degs = [0, 1] if X.shape == PERIODIC2 else X.degrees
    for H in _class_reps(X.group):
        C = fixed_point_complex(X, H)
        for n in degs:
            h = homology(C, n)
            if not h.is_zero:
                witnesses.append((H, n, h))
    return not witnesses, witnesses


# ---------------------------------------------------------------------------
# cones and quasi-isomorphisms


def cone(f: ChainMap) -> ChainComplex:
    """cone_n = X_{n-1} ⊕ Y_n with d(x, y) = (-dx, f(x) + dy)."""
    X, Y = f.source, f.target
    if X.shape != BOUNDED or Y.shape != BOUNDED:
        raise ShapeUnsupported("cones are implemented for bounded complexes only")
    G, R = X.group, X.ring
    lo, hi = min(X.lo + 1, Y.lo), max(X.hi + 1, Y.hi)
    mods, d = {}, {}
    for n in range(lo, hi + 1):
        mods[n] = PermModule(coproduct(X.module(n - 1).basis, Y.module(n).basis), R)
    for n in range(lo + 1, hi + 1):
        a, b = X.rank(n - 1), Y.rank(n)
        a2, b2 = X.rank(n - 2), Y.rank(n - 1)
        dx, dy, fx = X.diff(n - 1), Y.diff(n), f.component(n - 1)
        M = linalg.zeros(a2 + b2, a + b, R)
        for i in range(a2):
            for j in range(a):
                M[i][j] = R.neg(dx[i][j])
        for i in range(b2):
            for j in range(a):
                M[a2 + i][j] = fx[i][j]
            for j in range(b):
                M[a2 + i][a + j] = dy[i][j]
        d[n] = M
    return ChainComplex(G, R, BOUNDED, lo, hi, mods, d)


def is_gamma_qis(f: ChainMap) -> bool:
    return is_gamma_acyclic(cone(f))[0]


def fixed_point_qis(f: ChainMap) -> bool:
    """Degreewise check that every f^H is a quasi-isomorphism (fields only)."""
    R = f.source.ring
    if not R.is_field:
        raise FieldRequired("the direct quasi-isomorphism test needs a field")
    X, Y = f.source, f.target
    lo, hi = min(X.lo, Y.lo), max(X.hi, Y.hi)
    for H in _class_reps(X.group):
        CX, CY = fixed_point_complex(X, H), fixed_point_complex(Y, H)
        ox = {n: _orbit_basis(X.module(n).basis, H) for n in range(lo, hi + 1)}
        oy = {n: _orbit_basis(Y.module(n).basis, H) for n in range(lo, hi + 1)}
        for n in range(lo, hi + 1):
            hx, hy = homology(CX, n), homology(CY, n)
            if hx.rank != hy.rank:
                return False
            # the matrix of f^H in orbit-sum bases
            A = f.component(n)
            src, tgt = ox[n][0], oy[n][0]
            F = [[_orbit_entry(A, T, O, R) for O in src] for T in tgt]
            zx = _cycles(CX, n)
            by = _columns(CY.diff(n + 1), CY.rank(n + 1))
            img = [linalg.mat_vec(F, z, R) for z in zx] if tgt else []
            if linalg.span_rank(img + by, R) - linalg.span_rank(by, R) != hx.rank:
                return False
    return True


def _orbit_entry(A, T, O, R):
    s = R.zero
    for x in O:
        s = R.add(s, A[T[0]][x])
    return s


def _cycles(C: PlainComplex, n: int) -> list[list]:
    R, dim = C.ring, C.rank(n)
    if not dim:
        return []
    if not C.rank(n - 1):
        return [[R.one if i == j else R.zero for j in range(dim)] for i in range(dim)]
    return linalg.nullspace(C.diff(n), dim, R)


# ---------------------------------------------------------------------------
# maps out of the generators R(G/H)[n]


def homotopy_classes_from_generator(H: Subgroup, n: int, X: ChainComplex) -> Invariants:
    """Chain maps R(G/H)[n] -> X modulo homotopy, computed from equivariant hom spaces."""
    if X.shape != BOUNDED:
        raise ShapeUnsupported("homotopy classes are computed for bounded complexes")
    R = X.ring
    G = X.group
    P = transitive_gset(G, H)
    m = P.size
    if not X.rank(n):
        return Invariants(0)
    basis = equivariant_hom_solve(P, X.module(n).basis, R)
    dn = X.diff(n)
    # f |-> d_n f on the hom generators, flattened
    rows_out = X.rank(n - 1)
    imgs = [linalg.mat_mul(dn, b.matrix, R, inner=X.rank(n)) if rows_out else [] for b in basis]
    k = len(basis)
    ncoef = rows_out * m
    system = [[imgs[j][r][c] for j in range(k)] for r in range(rows_out) for c in range(m)]
    coeffs = linalg.nullspace(system, k, R) if ncoef else [
        [R.one if i == j else R.zero for j in range(k)] for i in range(k)
    ]
    cycles = []
    for v in coeffs:
        acc = [R.zero] * (X.rank(n) * m)
        for c, b in zip(v, basis):
            if c:
                acc = [R.add(a, R.mul(c, x)) for a, x in zip(acc, b.flat())]
        cycles.append(acc)
    bounds = []
    if X.rank(n + 1):
        up = equivariant_hom_solve(P, X.module(n + 1).basis, R)
        for b in up:
            bounds.append(PermMorphism(b.source, X.module(n), linalg.mat_mul(X.diff(n + 1), b.matrix, R, inner=X.rank(n + 1))).flat())
    dim = X.rank(n) * m
    if R.is_field:
        return Invariants(linalg.span_rank(cycles, R) - linalg.span_rank(bounds, R))
    rk, tors = linalg.module_invariants_of_quotient(_ints(cycles), _ints(bounds), dim, R)
    return Invariants(rk, tors)


def compact_generation_probe(X: ChainComplex) -> bool:
    """X is right-orthogonal to every R(G/H)[n]; agrees with Γ-acyclicity."""
    if X.shape != BOUNDED:
        raise ShapeUnsupported("the probe is defined for bounded complexes")
    orth = all(
        homotopy_classes_from_generator(H, n, X).is_zero for H in _class_reps(X.group) for n in X.degrees
    )
    assert orth == is_gamma_acyclic(X)[0], "probe disagrees with Γ-acyclicity"
    return orth


# ---------------------------------------------------------------------------
# contractibility


def _hom_basis(X: PermModule, Y: PermModule) -> list[list]:
    return [b.matrix for b in equivariant_hom_solve(X.basis, Y.basis, X.ring)]


def is_contractible(X: ChainComplex) -> bool:
    R = X.ring
    if not R.is_field:
        raise FieldRequired("contractibility is decided over a field")
    if X.shape == PERIODIC2:
        return _periodic_contractible(X)
    # unknowns: coefficients of h_n: X_n -> X_{n+1} in the equivariant hom bases
    degs = X.degrees
    hb = {n: _hom_basis(X.module(n), X.module(n + 1)) for n in range(X.lo - 1, X.hi + 1)}
    offs, tot = {}, 0
    for n in sorted(hb):
        offs[n] = tot
        tot += len(hb[n])
    rows, rhs = [], []
    for n in degs:
        r = X.rank(n)
        if not r:
            continue
        # d_{n+1} h_n + h_{n-1} d_n = id
        contrib = []
        for p, B in enumerate(hb[n]):
            contrib.append((offs[n] + p, linalg.mat_mul(X.diff(n + 1), B, R, inner=X.rank(n + 1))))
        for p, B in enumerate(hb[n - 1]):
            contrib.append((offs[n - 1] + p, linalg.mat_mul(B, X.diff(n), R, inner=X.rank(n - 1))))
        for i in range(r):
            for j in range(r):
                row = [R.zero] * tot
                for v, M in contrib:
                    row[v] = R.add(row[v], M[i][j])
                rows.append(row)
                rhs.append(R.one if i == j else R.zero)
    if not rows:
        return True
    return linalg.solve(rows, rhs, R, ncols=tot) is not None


def kernel_basis(X: ChainComplex, n: int) -> list[list]:
    return _cycles(_as_plain(X), n)


def _as_plain(X: ChainComplex) -> PlainComplex:
    degs = [0, 1] if X.shape == PERIODIC2 else X.degrees
    return PlainComplex(X.ring, X.shape, X.lo, X.hi, {n: X.rank(n) for n in degs}, {n: X.diff(n) for n in degs})


def is_summand(P: PermModule, K: list[list]) -> bool:
    """Is span(K) (a G-stable subspace of R(X)) an equivariant direct summand?"""
    R = P.ring
    k, m = len(K), P.rank
    if k == 0 or k == m:
        return True
    G = P.group
    KT = linalg.transpose(K, m)  # m x k, columns span the submodule
    unknowns = k * m  # s is k x m, s[i][j] at i*m + j
    rows, rhs = [], []
    for g in G.generators:
        A = P.action_matrix(g)
        # rho_g: coordinates of g K_j in K
        rho = linalg.transpose([linalg.span_coordinates(K, linalg.mat_vec(A, v, R), R) for v in K], k)
        # s A - rho s = 0
        for i in range(k):
            for j in range(m):
                row = [R.zero] * unknowns
                for t in range(m):
                    if A[t][j]:
                        row[i * m + t] = R.add(row[i * m + t], A[t][j])
                for t in range(k):
                    if rho[i][t]:
                        row[t * m + j] = R.sub(row[t * m + j], rho[i][t])
                rows.append(row)
                rhs.append(R.zero)
    # s K = id
    for i in range(k):
        for j in range(k):
            row = [R.zero] * unknowns
            for t in range(m):
                row[i * m + t] = KT[t][j]
            rows.append(row)
            rhs.append(R.one if i == j else R.zero)
    return linalg.solve(rows, rhs, R, ncols=unknowns) is not None


def _periodic_contractible(X: ChainComplex) -> bool:
    if not all(homology(_as_plain(X), n).is_zero for n in (0, 1)):
        return False
    return all(is_summand(X.module(n), kernel_basis(X, n)) for n in (0, 1))


# ---------------------------------------------------------------------------
# the C_p example


def cp_example(p: int, ring: Ring | None = None) -> ChainComplex:
    """kC_p ⊕ k in both degrees, d_1 = (σ-1, η; ε, 0) and d_0 = (α, η; ε, 0), α = Σ iσ^i."""
    if p < 3 or not is_prime(p):
        raise BadPrime(f"p must be an odd prime, got {p}", p=p)
    k = ring or GF(p)
    if k.kind != "Fp" or k.modulus != p:
        raise BadPrime(f"coefficients must be F_{p}", p=p)
    G = named_group(f"C{p}")
    sigma = G.generators[0]
    powers = [0]
    for _ in range(p - 1):
        powers.append(G.table[sigma][powers[-1]])
    X = coproduct(transitive_gset(G, G.trivial()), transitive_gset(G, G.whole()))
    P = PermModule(X, k)
    reg = transitive_gset(G, G.trivial())
    n = p + 1

    def mult(coeffs):  # sum_i coeffs[i] sigma^i acting on kC_p
        M = linalg.zeros(n, n, k)
        for i, c in enumerate(coeffs):
            if not c:
                continue
            g = powers[i]
            for x in range(p):
                y = reg.action[g][x]
                M[y][x] = k.add(M[y][x], k.coerce(c))
        return M

    def with_unit_counit(M):
        for x in range(p):
            M[x][p] = k.one  # η: 1 |-> Σ g
            M[p][x] = k.one  # ε: g |-> 1
        return M

    d1 = with_unit_counit(mult([-1, 1] + [0] * (p - 2)))
    d0 = with_unit_counit(mult(list(range(p))))
    C = ChainComplex(G, k, PERIODIC2, 0, 1, {0: P, 1: P}, {1: d1, 0: d0})
    return C.validate()


# ---------------------------------------------------------------------------
# random complexes


def _random_hom(X: GSet, Y: GSet, R: Ring, rng: random.Random) -> list:
    basis = equivariant_hom_solve(X, Y, R)
    M = linalg.zeros(Y.size, X.size, R)
    for b in basis:
        c = R.coerce(rng.randint(-2, 2))
        if c:
            M = linalg.mat_add(M, linalg.mat_scale(c, b.matrix, R), R)
    return M


def _random_orbit_set(G: Group, rng: random.Random, max_orbits: int = 2) -> GSet:
    reps = _class_reps(G)
    parts = [transitive_gset(G, rng.choice(reps)) for _ in range(rng.randint(1, max_orbits))]
    return coproduct(*parts)


def random_complex(G: Group, R: Ring, rng: random.Random) -> ChainComplex:
    """Direct sum of stalks, cones of identities and random two- and three-term complexes."""
    pieces = []
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(["stalk", "cone", "two", "three", "three"])
        n = rng.randint(0, 1)
        if kind == "stalk":
            pieces.append(stalk(G, R, _random_orbit_set(G, rng, 1), n))
        elif kind == "cone":
            X = _random_orbit_set(G, rng, 1)
            pieces.append(bounded_complex(G, R, n, [X, X], [linalg.identity(X.size, R)]))
        elif kind == "two":
            A, B = _random_orbit_set(G, rng), _random_orbit_set(G, rng)
            pieces.append(bounded_complex(G, R, n, [B, A], [_random_hom(A, B, R, rng)]))
        else:
            A, B, C = (_random_orbit_set(G, rng) for _ in range(3))
            f = _random_hom(A, B, R, rng)  # A -> B, degree n+2 -> n+1
            g = _random_annihilator(B, C, f, R, rng)
            pieces.append(bounded_complex(G, R, n, [C, B, A], [g, f]))
    return direct_sum(*pieces).validate()


def _random_annihilator(B: GSet, C: GSet, f: list, R: Ring, rng: random.Random) -> list:
    """A random equivariant g: R(B) -> R(C) with g f = 0."""
    basis = [b.matrix for b in equivariant_hom_solve(B, C, R)]
    if not basis:
        return linalg.zeros(C.size, B.size, R)
    prods = [linalg.mat_mul(b, f, R, inner=B.size) for b in basis]
    ncols = len(f[0]) if f else 0
    system = [[P[i][j] for P in prods] for i in range(C.size) for j in range(ncols)]
    sols = linalg.nullspace(system, len(basis), R) if system else [
        [R.one if i == j else R.zero for j in range(len(basis))] for i in range(len(basis))
    ]
    g = linalg.zeros(C.size, B.size, R)
    for v in sols:
        c = R.coerce(rng.randint(-2, 2))
        for coef, b in zip(v, basis):
            if c and coef:
                g = linalg.mat_add(g, linalg.mat_scale(R.mul(c, coef), b, R), R)
    return g


def random_corpus(seed: int = 0, per_config: int = 23) -> list[tuple[str, str, ChainComplex]]:
    """Seeded corpus over {C2, C3, S3} x {F2, F3, Q}; 207 complexes by default."""
    out = []
    for gname in ("C2", "C3", "S3"):
        G = named_group(gname)
        for rname in ("Fp:2", "Fp:3", "Q"):
            R = Ring.parse(rname)
            rng = random.Random(f"{seed}:{gname}:{rname}")
            for _ in range(per_config):
                out.append((gname, rname, random_complex(G, R, rng)))
    return out
