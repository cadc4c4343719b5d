from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mackeykit.errors import GroupTooLarge, InverseMissing, MalformedInput, NoIdentity, NonAssociative, NotNormal
from mackeykit.groups import (
    all_subgroups,
    as_group,
    conjugate_subgroup,
    coset_space,
    cyclic_descriptor,
    double_coset_rep,
    double_cosets,
    embed,
    from_cayley,
    from_permutations,
    is_normal,
    load_group,
    named_group,
    preimage,
    quotient,
    subgroup,
    subgroup_in,
)


def brute_subgroups(G):
    out = []
    others = list(range(1, G.order))
    for k in range(G.order):
        for c in combinations(others, k):
            s = (0,) + c
            ss = set(s)
            if all(G.table[a][b] in ss for a in s for b in s):
                out.append(s)
    return sorted(out, key=lambda s: (len(s), s))


def brute_double_cosets(G, K, H):
    seen, count = set(), 0
    for g in range(G.order):
        if g in seen:
            continue
        count += 1
        seen |= {G.table[G.table[k][g]][h] for k in K.elements for h in H.elements}
    return count


# -- construction and validation ---------------------------------------------


@pytest.mark.parametrize(
    "name,order,n_subgroups,n_classes",
    [("C2", 2, 2, 2), ("C4", 4, 3, 3), ("C6", 6, 4, 4), ("S3", 6, 6, 4), ("D4", 8, 10, 8), ("A4", 12, 10, 5), ("S4", 24, 30, 11)],
)
def test_named_groups_and_lattices(name, order, n_subgroups, n_classes):
    G = named_group(name)
    assert G.order == order
    lat = all_subgroups(G)
    assert len(lat.subgroups) == n_subgroups
    assert len(lat.representatives) == n_classes


@pytest.mark.parametrize("name", ["C2", "C4", "C6", "S3", "D4", "V4"])
def test_subgroups_match_brute_force(name):
    G = named_group(name)
    assert sorted(S.elements for S in all_subgroups(G).subgroups) == sorted(brute_subgroups(G))


def test_identity_first_and_shortlex():
    G = from_permutations(3, [[1, 0, 2], [1, 2, 0]])
    assert G.labels[0] == (0, 1, 2)
    assert G.labels[1] == (1, 0, 2) and G.labels[2] == (1, 2, 0)
    assert all(G.table[0][x] == x == G.table[x][0] for x in range(G.order))


def test_cayley_relabels_identity_to_zero():
    # Z/3 written with identity at position 2
    table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = from_cayley(table)
    assert all(G.table[0][x] == x for x in range(3))


def test_axiom_violations_carry_witnesses():
    with pytest.raises(NoIdentity):
        from_cayley([[1, 0], [0, 0]])
    with pytest.raises(InverseMissing) as e:
        from_cayley([[0, 1], [1, 1]])
    assert e.value.witness["element"] == 1
    bad = [[0, 1, 2], [1, 0, 0], [2, 0, 0]]
    with pytest.raises((NonAssociative, InverseMissing)):
        from_cayley(bad)
    with pytest.raises(MalformedInput):
        from_cayley([[0, 1], [1]])


def test_nonassociative_loop():
    # a loop of order 5 (Latin square with identity) that is not associative
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NonAssociative) as e:
        from_cayley(t)
    a, b, c = e.value.witness["triple"]
    assert t[a][t[b][c]] != t[t[a][b]][c]


def test_group_size_bound(monkeypatch):
    monkeypatch.setenv("MACKEYKIT_MAX_GROUP", "10")
    with pytest.raises(GroupTooLarge):
        from_permutations(4, [[1, 0, 2, 3], [1, 2, 3, 0]])


def test_descriptors():
    assert load_group(cyclic_descriptor(5)).order == 5
    assert load_group({"kind": "named", "name": "D4"}) is named_group("D4")
    with pytest.raises(MalformedInput):
        load_group({"kind": "perm", "degree": 3, "generators": [[0, 0, 1]]})
    with pytest.raises(MalformedInput):
        load_group({"kind": "fancy"})


@given(st.permutations(range(4)), st.permutations(range(4)))
def test_permutation_groups_satisfy_axioms(p, q):
    G = from_permutations(4, [p, q])
    from_cayley(G.table)  # revalidates
    assert 24 % G.order == 0


# -- subgroups, cosets, double cosets ------------------------------------------


def test_subgroup_validation():
    G = named_group("S3")
    with pytest.raises(MalformedInput):
        subgroup(G, [1, 2])
    with pytest.raises(MalformedInput):
        subgroup(G, [0, 1, 2])


@pytest.mark.parametrize("name", ["C4", "C6", "S3", "D4"])
def test_double_coset_counts(name):
    G = named_group(name)
    subs = all_subgroups(G).subgroups
    for K in subs:
        for H in subs:
            reps = double_cosets(G, K, H)
            assert len(reps) == brute_double_cosets(G, K, H)
            # representatives are the minimal elements of their double cosets
            for g in reps:
                block = {G.table[G.table[k][g]][h] for k in K.elements for h in H.elements}
                assert g == min(block)
                assert all(double_coset_rep(G, K, H, x) == g for x in block)


def test_double_cosets_of_a_transposition():
    G = named_group("S3")
    T = subgroup(G, [0, 1])
    assert len(double_cosets(G, T, T)) == 2


@pytest.mark.parametrize("name", ["S3", "D4", "A4"])
def test_conjugacy_classes_brute_force(name):
    G = named_group(name)
    lat = all_subgroups(G)
    for cls in lat.classes:
        S = lat.subgroups[cls[0]]
        conj = {conjugate_subgroup(S, g).elements for g in range(G.order)}
        assert conj == {lat.subgroups[i].elements for i in cls}
        assert lat.rep_of(S).elements == min(conj, key=lambda s: (len(s), s))


def test_cosets_partition():
    G = named_group("D4")
    for H in all_subgroups(G).subgroups:
        cs = coset_space(H)
        assert len(cs.reps) == H.index()
        assert sorted(cs.lookup[g] for g in range(G.order)) == sorted(
            i for i in range(len(cs.reps)) for _ in range(H.order)
        )


# -- subgroups as groups, quotients --------------------------------------------


def test_as_group_is_canonical():
    G = named_group("S4")
    H = next(S for S in all_subgroups(G).subgroups if S.order == 8)
    Hg = as_group(H)
    assert as_group(H) is Hg
    K = next(S for S in all_subgroups(Hg).subgroups if S.order == 4)
    Kg = as_group(K)
    # the same subgroup reached from the root gives the same object
    K_root = subgroup(G, sorted(Hg.root_index[k] for k in K.elements))
    assert as_group(K_root) is Kg
    assert embed(Kg, Hg) == tuple(Hg.local_index[r] for r in Kg.root_index)
    assert subgroup_in(Kg, Hg).elements == K.elements
    assert as_group(G.whole()) is G


def test_quotients():
    G = named_group("D4")
    center = [z for z in range(G.order) if all(G.table[z][g] == G.table[g][z] for g in range(G.order))]
    q = quotient(subgroup(G, center))
    assert q.group.order == 4
    for Kb in all_subgroups(q.group).subgroups:
        assert preimage(q, Kb).order == 2 * Kb.order
    refl = subgroup(G, [0, next(g for g in range(1, 8) if G.table[g][g] == 0 and g not in center)])
    assert not is_normal(refl)
    with pytest.raises(NotNormal):
        quotient(refl)


def test_projection_is_a_homomorphism():
    G = named_group("S3")
    A3 = next(S for S in all_subgroups(G).subgroups if S.order == 3)
    q = quotient(A3)
    pi = q.projection
    for a, b in permutations(range(6), 2):
        assert pi[G.table[a][b]] == q.group.table[pi[a]][pi[b]]
