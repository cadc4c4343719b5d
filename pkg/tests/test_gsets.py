from collections import Counter
from itertools import product as iproduct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mackeykit.errors import MalformedInput, NotEquivariant
from mackeykit.groups import all_subgroups, as_group, named_group, quotient, subgroup
from mackeykit.gsets import (
    EquivariantMap,
    GSet,
    conjugate_gset,
    coproduct,
    equivariant_maps,
    identity_map,
    induce_gset,
    inflate_gset,
    orbit_embedding,
    point_gset,
    product,
    product_assoc,
    product_swap,
    projections,
    pullback,
    restrict_gset,
    transitive_gset,
)


def marks(X: GSet) -> tuple[int, ...]:
    """Fixed-point counts at the subgroup class representatives: a complete isomorphism invariant."""
    return tuple(len(X.fixed_points(S)) for S in all_subgroups(X.group).representatives)


def brute_maps(X, Y):
    out = []
    for images in iproduct(range(Y.size), repeat=X.size):
        if all(images[X.action[g][x]] == Y.action[g][images[x]] for g in range(X.group.order) for x in range(X.size)):
            out.append(images)
    return out


def random_gset(G, draw_idx):
    reps = all_subgroups(G).representatives
    return coproduct(*(transitive_gset(G, reps[i % len(reps)]) for i in draw_idx))


orbit_lists = st.lists(st.integers(0, 7), min_size=1, max_size=3)
group_names = st.sampled_from(["C2", "C4", "S3", "D4"])


def test_transitive_sets_validate(small_group):
    for S in all_subgroups(small_group).subgroups:
        X = transitive_gset(small_group, S).validate()
        assert X.size == S.index()
        assert X.stabilizer(0).elements == S.elements


def test_validation_errors():
    G = named_group("C2")
    with pytest.raises(MalformedInput):
        GSet(G, ((0, 1), (0, 0))).validate()
    X = transitive_gset(G, G.trivial())
    with pytest.raises(NotEquivariant):
        EquivariantMap(X, X, (0, 0)).validate()


@pytest.mark.parametrize("name", ["C4", "S3"])
def test_equivariant_maps_against_brute_force(name):
    G = named_group(name)
    reps = all_subgroups(G).representatives
    for K in reps:
        for H in reps:
            X, Y = transitive_gset(G, K), transitive_gset(G, H)
            ours = sorted(f.images for f in equivariant_maps(X, Y))
            assert ours == brute_maps(X, Y)
            # |Hom(G/K, G/H)| = |(G/H)^K|
            assert len(ours) == len(Y.fixed_points(K))


@given(group_names, orbit_lists, orbit_lists)
def test_product_marks_multiply(name, a, b):
    G = named_group(name)
    X, Y = random_gset(G, a), random_gset(G, b)
    P = product(X, Y).validate()
    assert marks(P) == tuple(x * y for x, y in zip(marks(X), marks(Y)))
    assert marks(coproduct(X, Y)) == tuple(x + y for x, y in zip(marks(X), marks(Y)))
    swap = product_swap(X, Y).validate()
    assert sorted(swap.images) == list(range(P.size))
    p1, p2 = projections(X, Y)
    p1.validate(), p2.validate()


def test_associator():
    G = named_group("S3")
    X, Y, Z = (transitive_gset(G, S) for S in all_subgroups(G).representatives[1:])
    product_assoc(X, Y, Z).validate()


@given(group_names, orbit_lists, orbit_lists, st.integers(0, 99), st.integers(0, 99))
def test_pullback_universal_property(name, a, b, i, j):
    G = named_group(name)
    X, Y = random_gset(G, a), random_gset(G, b)
    Z = point_gset(G)
    f = EquivariantMap(X, Z, (0,) * X.size)
    g = EquivariantMap(Y, Z, (0,) * Y.size)
    P, p1, p2 = pullback(f, g)
    P.validate(), p1.validate(), p2.validate()
    assert marks(P) == marks(product(X, Y))
    # over a nontrivial base: fibre product counts pairs agreeing downstairs
    T = transitive_gset(G, all_subgroups(G).representatives[-2])
    fs, gs = equivariant_maps(X, T), equivariant_maps(Y, T)
    if fs and gs:
        f2, g2 = fs[i % len(fs)], gs[j % len(gs)]
        P2, q1, q2 = pullback(f2, g2)
        assert P2.size == sum(1 for x in range(X.size) for y in range(Y.size) if f2(x) == g2(y))
        for z in range(P2.size):
            assert f2(q1(z)) == g2(q2(z))


def test_orbit_embedding():
    G = named_group("D4")
    X = coproduct(*(transitive_gset(G, S) for S in all_subgroups(G).representatives))
    for x in X.orbit_reps:
        e = orbit_embedding(X, x).validate()
        assert len(set(e.images)) == e.source.size


def test_identity_map_composes():
    G = named_group("S3")
    X = transitive_gset(G, G.trivial())
    f = equivariant_maps(X, transitive_gset(G, all_subgroups(G).representatives[1]))[0]
    assert f.compose(identity_map(X)) == f


# -- change of group ------------------------------------------------------------


@pytest.mark.parametrize("name", ["S3", "D4"])
def test_frobenius_reciprocity_for_sets(name):
    """Ind_K Res_K X ≅ G/K x X."""
    G = named_group(name)
    X = coproduct(*(transitive_gset(G, S) for S in all_subgroups(G).representatives))
    for K in all_subgroups(G).subgroups:
        lhs, pairs = induce_gset(restrict_gset(X, K), G)
        lhs.validate()
        assert len(pairs) == K.index() * X.size
        assert marks(lhs) == marks(product(transitive_gset(G, K), X))


def test_induction_of_a_point_is_the_coset_set():
    G = named_group("S3")
    for K in all_subgroups(G).subgroups:
        Kg = as_group(K)
        ind, _ = induce_gset(point_gset(Kg), G)
        assert marks(ind) == marks(transitive_gset(G, K))


def test_restriction_lives_on_the_subgroup():
    G = named_group("D4")
    K = all_subgroups(G).subgroups[3]
    R = restrict_gset(transitive_gset(G, G.trivial()), K).validate()
    assert R.group is as_group(K)
    assert all(len(R.orbit(x)) == K.order for x in range(R.size))


def test_conjugation():
    G = named_group("S3")
    T = subgroup(G, [0, 1])
    Tg = as_group(T)
    Y = transitive_gset(Tg, Tg.trivial())
    for g in range(G.order):
        C = conjugate_gset(Y, g).validate()
        expected = sorted(G.conj(g, t) for t in T.elements)
        assert sorted(C.group.root_index) == expected
    assert conjugate_gset(Y, 0).group is Tg


def test_inflation():
    G = named_group("S3")
    A3 = next(S for S in all_subgroups(G).subgroups if S.order == 3)
    q = quotient(A3)
    Xb = transitive_gset(q.group, q.group.trivial())
    X = inflate_gset(Xb, q.projection, G).validate()
    assert marks(X) == marks(transitive_gset(G, A3))
    assert Counter(len(X.orbit(x)) for x in range(X.size)) == Counter({2: 2})
