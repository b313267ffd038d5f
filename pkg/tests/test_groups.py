"""Group substrate tests: catalog, subgroups, homs, actions, graph subgroups."""

import itertools
import random

import pytest

from transys.groups import (
    FiniteGSet,
    Group,
    GroupError,
    Subgroup,
    all_subgroups,
    compose,
    coset_hset,
    cyclic_group,
    cyclic_hom,
    dihedral_group,
    direct_product,
    double_cosets,
    full_subgroup,
    generated_subgroup,
    graph_subgroup,
    graph_conjugacy_label,
    hom,
    hset_isomorphism,
    hsets_up_to_iso,
    identity_hom,
    identity_perm,
    induce_hset,
    invert,
    is_subconjugate,
    iso_key,
    lattice_of,
    make_group,
    right_coset_gset,
    symmetric_group,
    trivial_hset,
    trivial_subgroup,
)


def test_make_group_catalog():
    assert make_group("cyclic", 1).order == 1
    K4 = make_group("klein_four")
    assert K4.order == 4
    for a in range(1, 4):
        assert K4.mul[a][a] == 0  # every non-identity element is self-inverse
    assert make_group("symmetric", 3).order == 6
    assert make_group("dihedral", 4).order == 8
    C2 = make_group("cyclic", 2)
    assert make_group("direct_product", factors=(C2, C2)).order == 4


def test_make_group_rejects_bad_kinds():
    with pytest.raises(GroupError):
        make_group("quaternion", 8)
    with pytest.raises(GroupError):
        make_group("cyclic", 0)
    with pytest.raises(GroupError):
        make_group("cyclic", 25)  # above the validated order cap


def test_group_table_validation():
    with pytest.raises(GroupError):
        Group(((0, 1), (1, 1)))  # 1 has no inverse row solution
    # identity must sit at index 0
    with pytest.raises(GroupError):
        Group(((1, 0), (0, 1)))


def _subgroups_by_subset_filter(G):
    """Independent oracle: check closure of every subset containing 0."""
    out = []
    elems = list(G.elements())
    for r in range(1, G.order + 1):
        for cand in itertools.combinations(elems, r):
            if 0 not in cand:
                continue
            s = set(cand)
            if all(G.mul[a][b] in s for a in s for b in s) \
               and all(G.inv[a] in s for a in s):
                out.append(tuple(sorted(s)))
    return sorted(out, key=lambda m: (len(m), m))


@pytest.mark.parametrize("name,builder", [
    ("C4", lambda: cyclic_group(4)),
    ("C8", lambda: cyclic_group(8)),
    ("K4", lambda: make_group("klein_four")),
    ("S3", lambda: symmetric_group(3)),
    ("D4", lambda: dihedral_group(4)),
])
def test_all_subgroups_against_subset_filter(name, builder):
    G = builder()
    got = [s.members for s in all_subgroups(G)]
    assert got == _subgroups_by_subset_filter(G)


def test_subgroup_counts():
    assert len(all_subgroups(cyclic_group(4))) == 3
    assert len(all_subgroups(make_group("klein_four"))) == 5
    assert len(all_subgroups(symmetric_group(3))) == 6


def test_conjugation():
    S3 = symmetric_group(3)
    subs = all_subgroups(S3)
    order2 = [s for s in subs if s.order == 2]
    three_cycle = next(g for g in S3.elements() if S3.element_order(g) == 3)
    moved = order2[0].conjugate(three_cycle)
    assert moved.members != order2[0].members
    assert moved.conjugate(S3.inv[three_cycle]).members == order2[0].members
    # abelian groups conjugate trivially
    C4 = cyclic_group(4)
    for H in all_subgroups(C4):
        for g in C4.elements():
            assert H.conjugate(g).members == H.members


def test_intersection_is_subgroup():
    K4 = make_group("klein_four")
    subs = all_subgroups(K4)
    for a in subs:
        for b in subs:
            meet = a.intersect(b)
            assert meet.member_set == a.member_set & b.member_set


def test_hom_validation_reports_offending_pair():
    C4 = cyclic_group(4)
    C2 = cyclic_group(2)
    with pytest.raises(GroupError, match=r"\(1,1\)"):
        hom(C4, C2, (0, 1, 1, 0))


def test_kernel_and_images():
    C4 = cyclic_group(4)
    assert identity_hom(C4).kernel().members == (0,)
    S3 = symmetric_group(3)
    transposition = next(g for g in S3.elements() if S3.element_order(g) == 2)
    f = cyclic_hom(C4, S3, transposition)
    assert f.kernel().members == (0, 2)
    # preimage of the trivial subgroup under C4 ->> C2 is the kernel
    q = cyclic_hom(C4, cyclic_group(2), 1)
    assert q.preimage_subgroup(trivial_subgroup(q.target)).members \
        == q.kernel().members
    H = Subgroup(C4, (0, 2))
    assert q.preimage_subgroup(q.image_subgroup(H)).contains(H)


def test_double_cosets_partition():
    S3 = symmetric_group(3)
    full = full_subgroup(S3)
    assert double_cosets(S3, full, full) == (0,)
    triv = trivial_subgroup(S3)
    assert len(double_cosets(S3, triv, triv)) == 6
    transposition = next(g for g in S3.elements() if S3.element_order(g) == 2)
    A = generated_subgroup(S3, [transposition])
    reps = double_cosets(S3, A, A)
    cosets = []
    for r in reps:
        cosets.append({S3.mul[S3.mul[a][r]][b]
                       for a in A.members for b in A.members})
    assert sum(len(c) for c in cosets) == 6
    for a, b in itertools.combinations(cosets, 2):
        assert not (a & b)


def test_orbit_stabilizer():
    C4 = cyclic_group(4)
    full = full_subgroup(C4)
    # left translation: one orbit, trivial stabilizers
    reg = coset_hset(full, trivial_subgroup(C4))
    assert len(reg.orbits()) == 1
    assert reg.stabilizer(0).members == (0,)
    # C4 on C4/C2: two points, both stabilized by C2
    T = coset_hset(full, Subgroup(C4, (0, 2)))
    assert T.size == 2
    for x in range(2):
        assert T.stabilizer(x).members == (0, 2)
    # trivial action: orbit per point, stabilizer everything
    triv = trivial_hset(full, 3)
    assert len(triv.orbits()) == 3
    assert triv.fixed_points(full) == (0, 1, 2)
    # |orbit| * |stab| = |H| across the board
    for H in all_subgroups(symmetric_group(3)):
        for T in hsets_up_to_iso(H, 3):
            for orbit, stab in T.orbit_stabilizers():
                assert len(orbit) * stab.order == H.order


def test_action_law_validation():
    C4 = cyclic_group(4)
    cyc = (1, 2, 0)
    # generator of order 4 cannot act as a 3-cycle
    with pytest.raises(GroupError):
        FiniteGSet(full_subgroup(C4), 3,
                   (identity_perm(3), cyc, compose(cyc, cyc), identity_perm(3)))
    # identity row must be the identity permutation
    C2 = cyclic_group(2)
    with pytest.raises(GroupError):
        FiniteGSet(full_subgroup(C2), 2, ((1, 0), (0, 1)))


def test_hsets_up_to_iso_counts():
    C4 = cyclic_group(4)
    full = full_subgroup(C4)
    assert len(hsets_up_to_iso(full, 0)) == 1
    C2_in_C4 = Subgroup(C4, (0, 2))
    assert len(hsets_up_to_iso(C2_in_C4, 2)) == 2
    # C4-sets on 4 points match conjugacy classes of order-dividing-4
    # permutations in S4: cycle types 1+1+1+1, 2+1+1, 2+2, 4
    assert len(hsets_up_to_iso(full, 4)) == 4
    # distinct representatives are pairwise nonisomorphic
    reps = hsets_up_to_iso(full, 4)
    keys = {iso_key(T) for T in reps}
    assert len(keys) == len(reps)


def test_hsets_cover_all_structures():
    """Oracle: every single-generator action table appears up to iso."""
    C4 = cyclic_group(4)
    full = full_subgroup(C4)
    reps = hsets_up_to_iso(full, 3)
    seen = set()
    for sigma in itertools.permutations(range(3)):
        power = identity_perm(3)
        ok = True
        rows = []
        for k in range(4):
            rows.append(power)
            power = compose(sigma, power)
        if power != identity_perm(3):
            continue  # order does not divide 4
        T = FiniteGSet(full, 3, tuple(rows))
        seen.add(iso_key(T))
    assert seen == {iso_key(T) for T in reps}


def test_graph_subgroup_basics():
    C4 = cyclic_group(4)
    full = full_subgroup(C4)
    C2_in_C4 = Subgroup(C4, (0, 2))
    # trivial T: Gamma = H x {id}
    gs = graph_subgroup(C4, full, trivial_hset(full, 3))
    assert gs.order == 4
    assert all(sigma == identity_perm(3) for _, sigma in gs.pairs)
    # C2 acting on itself: generator goes to the swap
    C2 = cyclic_group(2)
    T = coset_hset(full_subgroup(C2), trivial_subgroup(C2))
    gs = graph_subgroup(C2, full_subgroup(C2), T)
    assert (1, (1, 0)) in gs.pairs
    # C4 on C4/C2: order-4 graph with generator over the swap
    T = coset_hset(full, C2_in_C4)
    gs = graph_subgroup(C4, full, T)
    assert gs.order == 4
    assert (1, (1, 0)) in gs.pairs


def test_graph_subgroups_of_isomorphic_hsets_are_conjugate():
    rng = random.Random(11)
    S3 = symmetric_group(3)
    for H in all_subgroups(S3):
        for T in hsets_up_to_iso(H, 3):
            # shuffle the points to get an isomorphic copy
            relabel = list(range(T.size))
            rng.shuffle(relabel)
            inv = invert(tuple(relabel))
            rows = tuple(
                tuple(relabel[row[inv[x]]] for x in range(T.size))
                for row in T.act)
            T2 = FiniteGSet(H, T.size, rows)
            phi = hset_isomorphism(T, T2)
            assert phi is not None
            g1 = graph_subgroup(S3, H, T)
            g2 = graph_subgroup(S3, H, T2)
            conj = {(h, compose(phi, compose(sigma, invert(phi))))
                    for h, sigma in g1.pairs}
            assert conj == set(g2.pairs)
            assert graph_conjugacy_label(g1) == graph_conjugacy_label(g2)
            assert is_subconjugate(g1, g2) and is_subconjugate(g2, g1)


def _materialized_fixed_points(G, gamma_small, gamma_big):
    """Oracle: Gamma-fixed cosets of (G x Sigma_n)/Gamma' by brute force."""
    n = gamma_big.arity
    perms = sorted(itertools.permutations(range(n)))
    sigma_big = {h: gamma_big.hset.act_of(h) for h in gamma_big.subgroup.members}

    def coset_rep(a, pi):
        return min((G.mul[a][h], compose(pi, sigma_big[h]))
                   for h in gamma_big.subgroup.members)

    points = {coset_rep(a, pi) for a in G.elements() for pi in perms}
    count = 0
    for a, pi in points:
        if all(coset_rep(G.mul[g][a], compose(s, pi)) == (a, pi)
               for g, s in gamma_small.pairs):
            count += 1
    return count


def test_subconjugacy_matches_materialized_orbits():
    """is_subconjugate decides nonemptiness of fixed points of free orbits."""
    C4 = cyclic_group(4)
    lat = lattice_of(C4)
    for n in (1, 2, 3):
        gammas = [graph_subgroup(C4, H, T)
                  for H in lat.subgroups for T in hsets_up_to_iso(H, n)]
        for g1 in gammas:
            for g2 in gammas:
                oracle = _materialized_fixed_points(C4, g1, g2) > 0
                assert is_subconjugate(g1, g2) == oracle, (g1, g2)


def test_induce_hset():
    C4 = cyclic_group(4)
    full = full_subgroup(C4)
    C2_in_C4 = Subgroup(C4, (0, 2))
    T = coset_hset(C2_in_C4, trivial_subgroup(C4))  # C2/1, two points
    ind = induce_hset(full, T)
    assert ind.size == (full.order // C2_in_C4.order) * T.size
    # inducing K/K up gives H/K
    ind2 = induce_hset(full, coset_hset(C2_in_C4, C2_in_C4))
    assert iso_key(ind2) == iso_key(coset_hset(full, C2_in_C4))


def test_right_coset_gset():
    C4 = cyclic_group(4)
    X = right_coset_gset(C4, Subgroup(C4, (0, 2)))
    assert X.size == 2 and X.side == "right"
    # right multiplication by the generator swaps the two cosets
    assert X.act_of(1) == (1, 0)


def test_subgroup_as_group_roundtrip():
    S3 = symmetric_group(3)
    for H in all_subgroups(S3):
        Hg = H.as_group()
        assert Hg.order == H.order
        for a in range(Hg.order):
            for b in range(Hg.order):
                assert H.members[Hg.mul[a][b]] \
                    == S3.mul[H.members[a]][H.members[b]]


def test_dihedral_and_product_structure():
    D3 = dihedral_group(3)  # order 6, same subgroup profile as S3
    assert len(all_subgroups(D3)) == 6
    C2 = cyclic_group(2)
    C4 = cyclic_group(4)
    P = direct_product(C2, C4)
    assert P.order == 8
    lat = lattice_of(P)
    assert lat.count == len(_subgroups_by_subset_filter(P))
