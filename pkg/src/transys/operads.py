"""Discrete operads presented by generators, and change-of-group on them.

Free (marked) operads are never materialized: a symmetric sequence of free
orbits with graph-subgroup stabilizers determines the transfer system, and
that is all admissibility needs.  Only the coinduced associativity operads
get explicit levels, under a size guard.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .functors import LawReport, image_L, image_R, preimage_L
from .groups import (
    FiniteGSet,
    GraphSubgroup,
    Group,
    GroupError,
    Homomorphism,
    Perm,
    Subgroup,
    compose,
    coset_hset,
    double_cosets,
    full_subgroup,
    graph_conjugacy_label,
    graph_subgroup,
    identity_perm,
    invert,
    lattice_of,
    trivial_subgroup,
)
from .transfer import TransferSystem, discrete, generate_pairs, meet

DEFAULT_LEVEL_GUARD = 200_000


class MaterializationError(RuntimeError):
    """A level was too large to materialize under the configured guard."""


@dataclass
class SymmetricSequence:
    """Graded family of free orbits; level n lists the orbit stabilizers.

    Each orbit stands for the free (G x Sigma_n)-set on its graph
    subgroup.  Absent levels are absent, not implicitly empty.
    """

    group: Group
    levels: dict[int, tuple[GraphSubgroup, ...]]

    def __post_init__(self) -> None:
        self.levels = {int(n): tuple(orbits) for n, orbits in self.levels.items()}
        for n, orbits in self.levels.items():
            for orb in orbits:
                if orb.group != self.group or orb.arity != n:
                    raise GroupError("orbit does not match its level")

    @property
    def window(self) -> tuple[int, ...]:
        return tuple(sorted(self.levels))

    def union(self, other: "SymmetricSequence") -> "SymmetricSequence":
        if self.group != other.group:
            raise GroupError("symmetric sequences live over different groups")
        levels = {n: orbits for n, orbits in self.levels.items()}
        for n, orbits in other.levels.items():
            levels[n] = levels.get(n, ()) + orbits
        return SymmetricSequence(self.group, levels)

    def orbit_count(self) -> int:
        return sum(len(orbits) for orbits in self.levels.values())


def free_model(t: TransferSystem) -> SymmetricSequence:
    """Free marked presentation of a transfer system: one free orbit
    Gamma(H/K) per nontrivial related pair K -> H."""
    lat = t.lattice
    levels: dict[int, list[GraphSubgroup]] = {}
    for k_id, h_id in t.pairs():
        H = lat.subgroups[h_id]
        K = lat.subgroups[k_id]
        T = coset_hset(H, K)
        levels.setdefault(T.size, []).append(graph_subgroup(t.group, H, T))
    return SymmetricSequence(t.group, {n: tuple(v) for n, v in levels.items()})


def symseq_transfer(S: SymmetricSequence) -> TransferSystem:
    """Transfer system generated by the orbit pairs of the generator
    witnesses; equals the transfer system of the free marked operad on S."""
    lat = lattice_of(S.group)
    pairs = set()
    for orbits in S.levels.values():
        for orb in orbits:
            h_id = lat.id_of(orb.subgroup)
            for _, stab in orb.hset.orbit_stabilizers():
                pairs.add((lat.id_of(stab), h_id))
    return generate_pairs(lat, pairs)


def coproduct_join_check(S: SymmetricSequence, T: SymmetricSequence) -> LawReport:
    """Generator-level content of 'coproducts realize joins'."""
    from .transfer import join
    combined = symseq_transfer(S.union(T))
    expected = join(symseq_transfer(S), symseq_transfer(T))
    report = LawReport("transfer(S u T) = transfer(S) v transfer(T)", 1)
    if combined.rel != expected.rel:
        report.counterexample = {"combined": combined.pairs(),
                                 "join": expected.pairs()}
    return report


# ---------------------------------------------------------------------------
# coinduced associativity operads


@dataclass(frozen=True)
class CoindAsOperad:
    """The operad of maps from a nonempty right G-set into the
    associativity operad; level n is all functions X -> Sigma_n."""

    xset: FiniteGSet

    def __post_init__(self) -> None:
        if self.xset.side != "right":
            raise GroupError("coinduced operads take a right G-set")
        if self.xset.size == 0:
            raise GroupError("coinduced operads need a nonempty G-set")
        if self.xset.subgroup.order != self.xset.group.order:
            raise GroupError("the whole group must act")

    @property
    def group(self) -> Group:
        return self.xset.group

    def admits(self, H: Subgroup, T: FiniteGSet) -> bool:
        """Direct criterion: every element of H fixing a point of X must
        act as the identity on T."""
        if T.subgroup != H:
            raise GroupError("T must be an H-set")
        n = T.size
        for h in H.members:
            row = self.xset.act_of(h)
            if any(row[x] == x for x in range(self.xset.size)):
                if T.act_of(h) != identity_perm(n):
                    return False
        return True

    def level(self, n: int, guard: int = DEFAULT_LEVEL_GUARD
              ) -> list[tuple[Perm, ...]]:
        """Materialized level n: all assignments of a permutation to each
        point of X."""
        count = math.factorial(n) ** self.xset.size
        if count > guard:
            raise MaterializationError(
                f"level {n} has {count} elements, over the guard {guard}; "
                "use the admits criterion instead")
        perms = sorted(itertools.permutations(range(n)))
        return [tuple(choice) for choice in
                itertools.product(perms, repeat=self.xset.size)]

    def fixed_count(self, gamma: GraphSubgroup,
                    guard: int = DEFAULT_LEVEL_GUARD) -> int:
        """Number of Gamma-fixed points of the materialized level; the
        consistency oracle for the admits criterion."""
        n = gamma.arity
        elements = self.level(n, guard)
        pairs = [(g, invert(sigma)) for g, sigma in gamma.pairs]
        count = 0
        for alpha in elements:
            if all(
                tuple(compose(alpha[self.xset.apply(g, x)], sigma_inv)
                      for x in range(self.xset.size)) == alpha
                for g, sigma_inv in pairs
            ):
                count += 1
        return count

    def transfer(self) -> TransferSystem:
        """Transfer system read off the criterion over all orbit pairs."""
        from .transfer import rel_from_pairs, validate
        lat = lattice_of(self.group)
        pairs = []
        for h_id in range(lat.count):
            H = lat.subgroups[h_id]
            for k_id in lat.ids_below(h_id):
                if k_id == h_id:
                    continue
                if self.admits(H, coset_hset(H, lat.subgroups[k_id])):
                    pairs.append((k_id, h_id))
        return validate(lat, rel_from_pairs(lat.count, pairs))


def coind_as_product_check(X: FiniteGSet, Y: FiniteGSet) -> LawReport:
    """Products realize meets, checked through the admits criterion."""
    op_x = CoindAsOperad(X)
    op_y = CoindAsOperad(Y)
    op_xy = CoindAsOperad(X.disjoint_union(Y))
    lat = lattice_of(X.group)
    checked = 0
    for h_id in range(lat.count):
        H = lat.subgroups[h_id]
        for k_id in lat.ids_below(h_id):
            T = coset_hset(H, lat.subgroups[k_id])
            checked += 1
            if op_xy.admits(H, T) != (op_x.admits(H, T) and op_y.admits(H, T)):
                return LawReport("admits(X u Y) = admits(X) and admits(Y)",
                                 checked, {"H": h_id, "K": k_id})
    t_xy = op_xy.transfer()
    expected = meet(op_x.transfer(), op_y.transfer())
    report = LawReport("transfer(Set(X u Y, As)) = meet", checked)
    if t_xy.rel != expected.rel:
        report.counterexample = {"combined": t_xy.pairs(),
                                 "meet": expected.pairs()}
    return report


# ---------------------------------------------------------------------------
# restriction and induction of generator sequences


def _pullback_orbit(f: Homomorphism, r: int, orb: GraphSubgroup) -> GraphSubgroup:
    """Predicted summand for double-coset representative r: the graph of the
    conjugated, restricted witness pulled back along f."""
    Gp = f.target
    G = f.source
    conj = orb.hset.conjugate(r)           # rHr^-1 acting
    Hr = conj.subgroup
    L_members = [g for g in G.elements() if f.map[g] in Hr.member_set]
    L = Subgroup(G, tuple(L_members))
    rows = tuple(conj.act_of(f.map[g]) for g in L.members)
    T = FiniteGSet(L, conj.size, rows)
    return graph_subgroup(G, L, T)


def restrict_symseq_predicted(f: Homomorphism, S: SymmetricSequence
                              ) -> SymmetricSequence:
    """Levelwise pullback along f, decomposed by the double-coset formula:
    one summand per representative of im(f)\\G'/H."""
    G = f.source
    Gp = f.target
    if S.group != Gp:
        raise GroupError("sequence lives on the wrong group for restriction")
    imf = f.image()
    levels: dict[int, list[GraphSubgroup]] = {}
    for n, orbits in S.levels.items():
        out = []
        for orb in orbits:
            for r in double_cosets(Gp, imf, orb.subgroup):
                out.append(_pullback_orbit(f, r, orb))
        levels[n] = tuple(out)
    return SymmetricSequence(G, levels)


def _direct_pullback_labels(f: Homomorphism, orb: GraphSubgroup,
                            guard: int) -> list:
    """Orbit stabilizer labels of the direct pullback of one free orbit.

    Materializes (G' x Sigma_n)/Gamma, lets G x Sigma_n act through
    f x id, decomposes into orbits by breadth-first search, and reads off
    each representative's stabilizer exactly.
    """
    G, Gp, n = f.source, f.target, orb.arity
    total = Gp.order * math.factorial(n)
    if total > guard:
        raise MaterializationError(
            f"pullback of a level-{n} orbit needs {total} elements")
    H = orb.subgroup
    sigma = {h: orb.hset.act_of(h) for h in H.members}
    perms = sorted(itertools.permutations(range(n)))

    def coset_rep(a: int, pi: Perm):
        return min((Gp.mul[a][h], compose(pi, sigma[h])) for h in H.members)

    points = sorted({coset_rep(a, pi) for a in Gp.elements() for pi in perms})
    index = {p: i for i, p in enumerate(points)}

    gens = [(g, identity_perm(n)) for g in G.elements() if g != 0]
    if n > 1:
        swap = list(range(n))
        swap[0], swap[1] = swap[1], swap[0]
        cycle = tuple(list(range(1, n)) + [0])
        gens += [(0, tuple(swap)), (0, cycle)]

    def act(g: int, s: Perm, point):
        a, pi = point
        return coset_rep(Gp.mul[f.map[g]][a], compose(s, pi))

    seen = [False] * len(points)
    labels = []
    for start in range(len(points)):
        if seen[start]:
            continue
        frontier = [points[start]]
        seen[start] = True
        while frontier:
            nxt = []
            for p in frontier:
                for g, s in gens:
                    q = act(g, s, p)
                    qi = index[q]
                    if not seen[qi]:
                        seen[qi] = True
                        nxt.append(q)
            frontier = nxt
        a, pi = points[start]
        ainv = Gp.inv[a]
        members = []
        rows = {}
        for g in G.elements():
            h = Gp.mul[Gp.mul[ainv][f.map[g]]][a]
            if h in H.member_set:
                members.append(g)
                rows[g] = compose(pi, compose(sigma[h], invert(pi)))
        L = Subgroup(G, tuple(members))
        T = FiniteGSet(L, n, tuple(rows[g] for g in L.members))
        labels.append(graph_conjugacy_label(graph_subgroup(G, L, T)))
    return sorted(labels)


def restrict_symseq(f: Homomorphism, S: SymmetricSequence,
                    check: bool = True,
                    guard: int = DEFAULT_LEVEL_GUARD
                    ) -> tuple[SymmetricSequence, Optional[LawReport]]:
    """Pull a generator sequence back along f.

    Returns the double-coset prediction together with the report of the
    direct-pullback stabilizer comparison (None when the check is off).
    """
    predicted = restrict_symseq_predicted(f, S)
    report = double_coset_check(f, S, guard) if check else None
    if report is not None and not report.passed:
        raise GroupError(f"double-coset prediction mismatch: "
                         f"{report.counterexample}")
    return predicted, report


def double_coset_check(f: Homomorphism, S: SymmetricSequence,
                       guard: int = DEFAULT_LEVEL_GUARD) -> LawReport:
    """Predicted summand stabilizers versus the direct pullback, orbit by
    orbit, compared up to conjugacy in G x Sigma_n."""
    checked = 0
    for n, orbits in sorted(S.levels.items()):
        for orb in orbits:
            checked += 1
            imf = f.image()
            predicted = sorted(
                graph_conjugacy_label(_pullback_orbit(f, r, orb))
                for r in double_cosets(f.target, imf, orb.subgroup))
            direct = _direct_pullback_labels(f, orb, guard)
            if predicted != direct:
                return LawReport("double-coset decomposition", checked,
                                 {"level": n,
                                  "predicted": [str(p) for p in predicted],
                                  "direct": [str(d) for d in direct]})
    return LawReport("double-coset decomposition", checked)


def induce_symseq(m: Homomorphism, S: SymmetricSequence) -> SymmetricSequence:
    """Levelwise induction along an injective homomorphism: each free orbit
    keeps its graph subgroup, now inside the bigger product group."""
    if not m.is_injective:
        raise GroupError(
            "induction of generator sequences requires an injective map; "
            "see noninjective_induction_counterexample for why")
    if S.group != m.source:
        raise GroupError("sequence lives on the wrong group for induction")
    back = {m.map[a]: a for a in m.source.elements()}
    levels: dict[int, list[GraphSubgroup]] = {}
    for n, orbits in S.levels.items():
        out = []
        for orb in orbits:
            image = m.image_subgroup(orb.subgroup)
            rows = tuple(orb.hset.act_of(back[a]) for a in image.members)
            T = FiniteGSet(image, n, rows)
            out.append(graph_subgroup(m.target, image, T))
        levels[n] = tuple(out)
    return SymmetricSequence(m.target, levels)


@dataclass
class NonInjectiveWitness:
    """Certificate that induction along a noninjective map destroys
    Sigma-freeness."""

    kernel_element: int
    permutation: Perm
    induced_pairs: frozenset
    verified: bool

    def to_json(self) -> dict:
        return {"kernel_element": self.kernel_element,
                "permutation": list(self.permutation),
                "verified": self.verified}


def is_sigma_free_pairs(pairs: Iterable[tuple[int, Perm]]) -> bool:
    """An orbit with this stabilizer is Sigma-free iff no nonidentity
    permutation is paired with the group identity."""
    return not any(g == 0 and any(s[i] != i for i in range(len(s)))
                   for g, s in pairs)


def noninjective_induction_counterexample(f: Homomorphism) -> NonInjectiveWitness:
    """Induce the free orbit on the regular representation along f x id and
    exhibit a nontrivial permutation fixing the identity class."""
    if f.is_injective:
        raise GroupError("f must be noninjective to produce the obstruction")
    G = f.source
    T = coset_hset(full_subgroup(G), trivial_subgroup(G))
    gamma = graph_subgroup(G, full_subgroup(G), T)
    induced_pairs = frozenset((f.map[g], sigma) for g, sigma in gamma.pairs)
    k = next(a for a in G.elements() if a != 0 and f.map[a] == 0)
    perm = T.act_of(k)
    verified = (
        perm != identity_perm(G.order)
        and (0, perm) in induced_pairs
        and is_sigma_free_pairs(gamma.pairs)
        and not is_sigma_free_pairs(induced_pairs)
    )
    return NonInjectiveWitness(k, perm, induced_pairs, verified)


# ---------------------------------------------------------------------------
# the three change-of-group consistency checks


def theoremB_res_check(f: Homomorphism,
                       target_systems: Sequence[TransferSystem]) -> LawReport:
    """Restricting a free model realizes the left inverse image."""
    checked = 0
    for t in target_systems:
        checked += 1
        restricted = restrict_symseq_predicted(f, free_model(t))
        got = symseq_transfer(restricted)
        want = preimage_L(f, t)
        if got.rel != want.rel:
            return LawReport("transfer(res of free model) = finvL", checked,
                             {"t": t.pairs(), "got": got.pairs(),
                              "want": want.pairs()})
    return LawReport("transfer(res of free model) = finvL", checked)


def theoremB_ind_check(m: Homomorphism,
                       source_systems: Sequence[TransferSystem]) -> LawReport:
    """Inducing a free model along an injective map realizes the left image."""
    checked = 0
    for t in source_systems:
        checked += 1
        induced = induce_symseq(m, free_model(t))
        got = symseq_transfer(induced)
        want = image_L(m, t)
        if got.rel != want.rel:
            return LawReport("transfer(ind of free model) = fL", checked,
                             {"t": t.pairs(), "got": got.pairs(),
                              "want": want.pairs()})
    return LawReport("transfer(ind of free model) = fL", checked)


def theoremB_coind_check(G: Group) -> LawReport:
    """For every subgroup H, the coinduced associativity operad on H\\G has
    the transfer system of the right image of the discrete system on H."""
    from .groups import inclusion_hom, right_coset_gset

    lat = lattice_of(G)
    checked = 0
    for H in lat.subgroups:
        checked += 1
        op = CoindAsOperad(right_coset_gset(G, H))
        got = op.transfer()
        incl = inclusion_hom(H)
        want = image_R(incl, discrete(incl.source))
        if got.rel != want.rel:
            return LawReport("transfer(Set(H\\G, As)) = iR(discrete)", checked,
                             {"H": list(H.members), "got": got.pairs(),
                              "want": want.pairs()})
    return LawReport("transfer(Set(H\\G, As)) = iR(discrete)", checked)


# ---------------------------------------------------------------------------
# wire format


def symseq_to_json(S: SymmetricSequence) -> dict:
    from .catalog import group_to_json

    lat = lattice_of(S.group)
    levels = {}
    for n, orbits in sorted(S.levels.items()):
        levels[str(n)] = [
            {"H": lat.id_of(orb.subgroup),
             "orbits": sorted(lat.id_of(stab)
                              for _, stab in orb.hset.orbit_stabilizers())}
            for orb in orbits
        ]
    return {"group": group_to_json(S.group), "levels": levels}


def symseq_from_json(data, group: Optional[Group] = None) -> SymmetricSequence:
    from .catalog import group_from_json

    G = group if group is not None else group_from_json(data["group"])
    lat = lattice_of(G)
    levels: dict[int, list[GraphSubgroup]] = {}
    for n_str, orbits in data["levels"].items():
        n = int(n_str)
        out = []
        for spec in orbits:
            H = lat.subgroups[spec["H"]]
            T = None
            for k_id in spec["orbits"]:
                part = coset_hset(H, lat.subgroups[k_id])
                T = part if T is None else T.disjoint_union(part)
            if T is None:
                from .groups import trivial_hset
                T = trivial_hset(H, 0)
            if T.size != n:
                raise GroupError(
                    f"orbit sizes sum to {T.size}, level says {n}")
            out.append(graph_subgroup(G, H, T))
        levels[n] = tuple(out)
    return SymmetricSequence(G, levels)
