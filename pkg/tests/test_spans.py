import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mackeykit.errors import NotNested, SourceTargetMismatch
from mackeykit.groups import (
    all_subgroups,
    class_rep_under,
    conjugate_subgroup,
    double_cosets,
    intersect,
    named_group,
    subgroups_of,
)
from mackeykit.gsets import (
    EquivariantMap,
    GSet,
    coproduct,
    equivariant_maps,
    identity_map,
    product,
    transitive_gset,
)
from mackeykit.spans import (
    Span,
    SpanSum,
    basis_span_sum,
    contravariant_span,
    covariant_span,
    ideal_generator,
    identity_span,
    omega_basis_between,
    omega_hom_basis,
    projection_map,
    realize,
    span_canonicalize,
    span_compose,
    span_coordinates,
    span_dual,
    span_tensor,
)

# -- brute force oracle: isomorphism classes of transitive spans ----------------


def _isomorphic(s, t):
    """Is there a G-bijection phi: Z_s -> Z_t with both legs commuting?"""
    Zs, Zt = s.middle, t.middle
    if Zs.size != Zt.size:
        return False
    G = Zs.group
    for z in range(Zt.size):
        phi = [None] * Zs.size
        ok = True
        for g in range(G.order):
            x, y = Zs.action[g][0], Zt.action[g][z]
            if phi[x] is None:
                phi[x] = y
            elif phi[x] != y:
                ok = False
                break
        if not ok or len(set(phi)) != Zs.size:
            continue
        if all(t.left(phi[x]) == s.left(x) and t.right(phi[x]) == s.right(x) for x in range(Zs.size)):
            return True
    return False


def brute_span_classes(X, Y):
    G = X.group
    classes = []
    for L in all_subgroups(G).subgroups:
        Z = transitive_gset(G, L)
        for a in equivariant_maps(Z, X):
            for b in equivariant_maps(Z, Y):
                s = Span(a, b)
                if not any(_isomorphic(s, t) for t in classes):
                    classes.append(s)
    return classes


@pytest.mark.parametrize("name", ["C2", "C4", "S3", "D4"])
def test_hom_rank_matches_span_classes(name):
    G = named_group(name)
    reps = all_subgroups(G).representatives
    for K in reps:
        for H in reps:
            X, Y = transitive_gset(G, K), transitive_gset(G, H)
            classes = brute_span_classes(X, Y)
            assert len(omega_hom_basis(K, H)) == len(classes)
            # each class has its own normal form
            forms = {span_canonicalize(s).terms for s in classes}
            assert len(forms) == len(classes)


def test_hom_rank_formula(small_group):
    G = small_group
    subs = all_subgroups(G).subgroups
    for K in subs:
        for H in subs:
            expected = 0
            for g in double_cosets(G, K, H):
                S = intersect(conjugate_subgroup(K, G.inv(g)), H)
                expected += len({class_rep_under(L, S).elements for L in subgroups_of(S)})
            assert len(omega_hom_basis(K, H)) == expected


# -- normal forms are invariant under relabelling ----------------------------------


def relabel(s: Span, perm: list[int]) -> Span:
    """Transport the middle object along the bijection z -> perm[z]."""
    Z = s.middle
    inv = [0] * len(perm)
    for z, w in enumerate(perm):
        inv[w] = z
    action = tuple(tuple(perm[row[inv[w]]] for w in range(Z.size)) for row in Z.action)
    Z2 = GSet(Z.group, action)
    left = tuple(s.left.images[inv[w]] for w in range(Z.size))
    right = tuple(s.right.images[inv[w]] for w in range(Z.size))
    return Span(EquivariantMap(Z2, s.left.target, left), EquivariantMap(Z2, s.right.target, right))


def random_span(G, rng):
    reps = all_subgroups(G).representatives
    X = coproduct(*(transitive_gset(G, rng.choice(reps)) for _ in range(rng.randint(1, 2))))
    Y = coproduct(*(transitive_gset(G, rng.choice(reps)) for _ in range(rng.randint(1, 2))))
    parts, lefts, rights = [], [], []
    for _ in range(rng.randint(1, 3)):
        Z = transitive_gset(G, rng.choice(all_subgroups(G).subgroups))
        a, b = equivariant_maps(Z, X), equivariant_maps(Z, Y)
        if a and b:
            parts.append(Z)
            lefts.append(rng.choice(a).images)
            rights.append(rng.choice(b).images)
    if not parts:
        Z = transitive_gset(G, G.trivial())
        parts = [Z]
        lefts = [rng.choice(equivariant_maps(Z, X)).images]
        rights = [rng.choice(equivariant_maps(Z, Y)).images]
    Z = coproduct(*parts)
    offs, left, right = 0, [], []
    for P, l, r in zip(parts, lefts, rights):
        left.extend(l)
        right.extend(r)
        offs += P.size
    return Span(EquivariantMap(Z, X, tuple(left)), EquivariantMap(Z, Y, tuple(right)))


@given(st.sampled_from(["C4", "S3", "D4"]), st.integers(0, 10**6))
def test_canonical_form_is_invariant(name, seed):
    rng = random.Random(seed)
    G = named_group(name)
    s = random_span(G, rng)
    perm = list(range(s.middle.size))
    rng.shuffle(perm)
    t = relabel(s, perm)
    t.left.validate(), t.right.validate()
    assert span_canonicalize(s) == span_canonicalize(t)
    # the realized normal form is isomorphic, orbit by orbit, to the input
    total = sum(c for _, c in span_canonicalize(s).terms)
    assert total == len(s.middle.orbit_reps)


# -- composition -------------------------------------------------------------


def basis_elements(K, H):
    return [basis_span_sum(K, H, b) for b in omega_hom_basis(K, H)]


@given(st.sampled_from(["C2", "C4", "S3", "D4"]), st.integers(0, 10**6))
def test_composition_is_associative(name, seed):
    rng = random.Random(seed)
    G = named_group(name)
    reps = all_subgroups(G).representatives
    A, B, C, D = (rng.choice(reps) for _ in range(4))
    f = rng.choice(basis_elements(A, B))
    g = rng.choice(basis_elements(B, C))
    h = rng.choice(basis_elements(C, D))
    assert span_compose(span_compose(f, g), h) == span_compose(f, span_compose(g, h))


def test_identities(small_group):
    G = small_group
    reps = all_subgroups(G).representatives
    for K in reps:
        idK = identity_span(transitive_gset(G, K))
        for H in reps:
            idH = identity_span(transitive_gset(G, H))
            for f in basis_elements(K, H):
                assert span_compose(idK, f) == f
                assert span_compose(f, idH) == f


@pytest.mark.parametrize("name", ["C4", "S3"])
def test_covariant_and_contravariant_functoriality(name):
    G = named_group(name)
    reps = all_subgroups(G).representatives
    sets = [transitive_gset(G, S) for S in reps]
    for X in sets:
        for Y in sets:
            for W in sets:
                for f in equivariant_maps(X, Y):
                    for g in equivariant_maps(Y, W):
                        gf = g.compose(f)
                        assert span_compose(covariant_span(f), covariant_span(g)) == covariant_span(gf)
                        assert span_compose(contravariant_span(g), contravariant_span(f)) == contravariant_span(gf)


def test_mismatched_composition():
    G = named_group("C2")
    f = identity_span(transitive_gset(G, G.trivial()))
    g = identity_span(transitive_gset(G, G.whole()))
    with pytest.raises(SourceTargetMismatch):
        span_compose(f, g)


def test_transfer_after_restriction_on_c2():
    G = named_group("C2")
    e, C2 = G.trivial(), G.whole()
    pi = projection_map(G, e, C2)
    s = span_canonicalize(Span(pi, pi))  # G/G <- G/e -> G/G
    assert span_compose(s, s) == s.scale(2)
    gen = ideal_generator(e, C2)
    assert gen == s - identity_span(pi.target).scale(2)
    with pytest.raises(NotNested):
        projection_map(G, C2, e)


# -- duality and products ------------------------------------------------------


@given(st.sampled_from(["C4", "S3", "D4"]), st.integers(0, 10**6))
def test_duality(name, seed):
    rng = random.Random(seed)
    G = named_group(name)
    reps = all_subgroups(G).representatives
    A, B, C = (rng.choice(reps) for _ in range(3))
    f = rng.choice(basis_elements(A, B))
    g = rng.choice(basis_elements(B, C))
    assert span_dual(span_dual(f)) == f
    assert span_dual(span_compose(f, g)) == span_compose(span_dual(g), span_dual(f))


def test_tensor_of_identities():
    G = named_group("S3")
    reps = all_subgroups(G).representatives
    for K in reps:
        for H in reps:
            X, Y = transitive_gset(G, K), transitive_gset(G, H)
            t = span_tensor(identity_span(X), identity_span(Y))
            assert t == identity_span(product(X, Y))


def test_coordinates_and_realization():
    G = named_group("S3")
    X = coproduct(*(transitive_gset(G, S) for S in all_subgroups(G).representatives[:2]))
    s = identity_span(X)
    v = span_coordinates(s)
    assert len(v) == len(omega_basis_between(X, X)) and sum(v) == 2
    for sp, c in realize(s):
        sp.left.validate(), sp.right.validate()
        assert c == 1
    assert identity_span(X) + SpanSum.zero(X, X) == s
    assert not (s - s)
    assert identity_map(X).compose(identity_map(X)) == identity_map(X)
