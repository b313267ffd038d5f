"""Finite groups as Cayley tables, subgroups, homomorphisms, and finite actions.

Conventions used throughout the package:

* group elements are the indices ``0..order-1`` and the identity is index 0;
* permutations of ``n`` points are tuples ``p`` with ``p[i]`` the image of
  ``i``, and ``compose(p, q)`` applies ``q`` first;
* the symmetric group catalog entry lists permutations in lexicographic
  order, so the identity permutation is element 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

MAX_ORDER = 24

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Composite permutation applying q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class Group:
    """Finite group given by its full multiplication table.

    Element ``mul[a][b]`` is the product ``a*b``.  Tables are validated on
    construction: closure, associativity, identity at index 0, inverses.
    Orders above MAX_ORDER are rejected; everything downstream assumes
    exhaustive verification is affordable.
    """

    mul: tuple[tuple[int, ...], ...]
    name: str = field(compare=False, default="G")

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.mul)
        object.__setattr__(self, "mul", rows)
        n = len(rows)
        if n == 0:
            raise GroupError("group must be nonempty")
        if n > MAX_ORDER:
            raise GroupError(f"order {n} exceeds supported maximum {MAX_ORDER}")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise GroupError(f"row {i} has length {len(row)}, expected {n}")
            for x in row:
                if not 0 <= x < n:
                    raise GroupError(f"entry {x} out of range in row {i}")
        for a in range(n):
            if rows[0][a] != a or rows[a][0] != a:
                raise GroupError("identity must sit at index 0")
        for a in range(n):
            if 0 not in rows[a]:
                raise GroupError(f"element {a} has no inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                        raise GroupError(f"associativity fails at ({a},{b},{c})")

    @property
    def order(self) -> int:
        return len(self.mul)

    @cached_property
    def inv(self) -> tuple[int, ...]:
        out = [0] * self.order
        for a in range(self.order):
            out[a] = self.mul[a].index(0)
        return tuple(out)

    def product(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conj(self, g: int, a: int) -> int:
        """g a g^-1."""
        return self.mul[self.mul[g][a]][self.inv[g]]

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul[x][a]
            k += 1
        return k

    def __repr__(self) -> str:
        return f"Group({self.name}, order={self.order})"


def _table_group(name: str, elems: Sequence, op) -> Group:
    index = {e: i for i, e in enumerate(elems)}
    rows = [[index[op(a, b)] for b in elems] for a in elems]
    return Group(tuple(tuple(r) for r in rows), name=name)


def cyclic_group(n: int) -> Group:
    if n <= 0:
        raise GroupError(f"cyclic order must be positive, got {n}")
    rows = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return Group(rows, name=f"C{n}")


def symmetric_group(n: int) -> Group:
    """Sigma_n on points 0..n-1, permutations listed lexicographically."""
    if n < 0:
        raise GroupError("symmetric degree must be nonnegative")
    elems = sorted(itertools.permutations(range(n)))
    return _table_group(f"S{n}", elems, compose)


def klein_four_group() -> Group:
    rows = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
    return Group(rows, name="K4")


def dihedral_group(n: int) -> Group:
    """Symmetries of the n-gon, order 2n; element (s, i) encodes s^s r^i."""
    if n <= 0:
        raise GroupError(f"dihedral parameter must be positive, got {n}")
    elems = [(s, i) for s in range(2) for i in range(n)]

    def op(a, b):
        s1, i1 = a
        s2, i2 = b
        # r^i s = s r^{-i}, so (s^s1 r^i1)(s^s2 r^i2) folds left-to-right
        if s2 == 0:
            return (s1, (i1 + i2) % n)
        return (1 - s1, (i2 - i1) % n)

    return _table_group(f"D{n}", elems, op)


def direct_product(g: Group, h: Group, name: Optional[str] = None) -> Group:
    elems = [(a, b) for a in g.elements() for b in h.elements()]

    def op(x, y):
        return (g.mul[x[0]][y[0]], h.mul[x[1]][y[1]])

    return _table_group(name or f"{g.name}x{h.name}", elems, op)


def make_group(kind: str, n: Optional[int] = None,
               factors: Optional[tuple[Group, Group]] = None) -> Group:
    """Catalog constructor covering the groups the test plan runs on."""
    if kind == "cyclic":
        if n is None:
            raise GroupError("cyclic requires n")
        return cyclic_group(n)
    if kind == "klein_four":
        return klein_four_group()
    if kind == "symmetric":
        if n is None:
            raise GroupError("symmetric requires n")
        return symmetric_group(n)
    if kind == "dihedral":
        if n is None:
            raise GroupError("dihedral requires n")
        return dihedral_group(n)
    if kind == "direct_product":
        if not factors or len(factors) != 2:
            raise GroupError("direct_product requires two factor groups")
        return direct_product(*factors)
    raise GroupError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a Group, stored as the sorted tuple of its members."""

    group: Group
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))
        mul = self.group.mul
        mem = set(self.members)
        if 0 not in mem:
            raise GroupError("subgroup must contain the identity")
        for a in self.members:
            if self.group.inv[a] not in mem:
                raise GroupError(f"subgroup not closed under inverse at {a}")
            for b in self.members:
                if mul[a][b] not in mem:
                    raise GroupError(f"subgroup not closed under product at ({a},{b})")

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def position(self) -> dict[int, int]:
        return {g: i for i, g in enumerate(self.members)}

    def __contains__(self, g: int) -> bool:
        return g in self.member_set

    def contains(self, other: "Subgroup") -> bool:
        return other.member_set <= self.member_set

    def intersect(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.group, tuple(self.member_set & other.member_set))

    def conjugate(self, g: int) -> "Subgroup":
        G = self.group
        return Subgroup(G, tuple(G.conj(g, a) for a in self.members))

    def as_group(self) -> Group:
        """This subgroup as a standalone Group; element i is members[i]."""
        pos = self.position
        mul = self.group.mul
        rows = tuple(
            tuple(pos[mul[a][b]] for b in self.members) for a in self.members
        )
        return Group(rows, name=f"{self.group.name}[{','.join(map(str, self.members))}]")

    def __repr__(self) -> str:
        return f"Subgroup({self.group.name}:{list(self.members)})"


def trivial_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, (0,))


def full_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, tuple(G.elements()))


def generated_subgroup(G: Group, gens: Iterable[int]) -> Subgroup:
    members = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = G.mul[a][g]
                if b not in members:
                    members.add(b)
                    nxt.append(b)
                b = G.mul[a][G.inv[g]]
                if b not in members:
                    members.add(b)
                    nxt.append(b)
        frontier = nxt
    return Subgroup(G, tuple(members))


def all_subgroups(G: Group) -> tuple[Subgroup, ...]:
    """Every subgroup exactly once, ordered by (size, member tuple).

    The position in this tuple is the stable subgroup id used by the
    transfer-system machinery.
    """
    seen = {(0,)}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for members in frontier:
            mem = set(members)
            for x in G.elements():
                if x in mem:
                    continue
                bigger = generated_subgroup(G, list(members) + [x]).members
                if bigger not in seen:
                    seen.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    ordered = sorted(seen, key=lambda m: (len(m), m))
    return tuple(Subgroup(G, m) for m in ordered)


class SubgroupLattice:
    """Cached subgroup data for a fixed group: ids, containment, meets,
    conjugation action, and conjugacy classes."""

    def __init__(self, group: Group):
        self.group = group
        self.subgroups = all_subgroups(group)
        self.count = len(self.subgroups)
        self.index = {s.members: i for i, s in enumerate(self.subgroups)}
        self.leq = tuple(
            tuple(self.subgroups[i].member_set <= self.subgroups[j].member_set
                  for j in range(self.count))
            for i in range(self.count)
        )
        self.meet_table = tuple(
            tuple(self.index[tuple(sorted(self.subgroups[i].member_set
                                          & self.subgroups[j].member_set))]
                  for j in range(self.count))
            for i in range(self.count)
        )
        self.conj_table = tuple(
            tuple(self.index[self.subgroups[i].conjugate(g).members]
                  for i in range(self.count))
            for g in group.elements()
        )
        self.trivial_id = self.index[(0,)]
        self.full_id = self.index[tuple(group.elements())]
        reps = []
        rep_of = [0] * self.count
        assigned = [False] * self.count
        for i in range(self.count):
            if assigned[i]:
                continue
            cls = {self.conj_table[g][i] for g in group.elements()}
            rep = min(cls)
            reps.append(rep)
            for j in cls:
                assigned[j] = True
                rep_of[j] = rep
        self.class_rep = tuple(rep_of)

    def id_of(self, s: Subgroup) -> int:
        return self.index[s.members]

    def id_of_members(self, members: Iterable[int]) -> int:
        return self.index[tuple(sorted(set(members)))]

    def subgroup(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def ids_below(self, j: int) -> list[int]:
        return [i for i in range(self.count) if self.leq[i][j]]

    def hclass_rep(self, h_id: int, s_id: int) -> int:
        """Min id over the conjugates of subgroup s by elements of subgroup h."""
        H = self.subgroups[h_id]
        return min(self.conj_table[g][s_id] for g in H.members)


@lru_cache(maxsize=None)
def lattice_of(G: Group) -> SubgroupLattice:
    return SubgroupLattice(G)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class Homomorphism:
    source: Group
    target: Group
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if len(self.map) != self.source.order:
            raise GroupError("map table must cover every source element")
        for x in self.map:
            if not 0 <= x < self.target.order:
                raise GroupError(f"map value {x} outside target")
        if self.map[0] != 0:
            raise GroupError("map must send identity to identity")
        for a in self.source.elements():
            for b in self.source.elements():
                lhs = self.map[self.source.mul[a][b]]
                rhs = self.target.mul[self.map[a]][self.map[b]]
                if lhs != rhs:
                    raise GroupError(
                        f"map is not multiplicative at pair ({a},{b}): "
                        f"f(ab)={lhs} but f(a)f(b)={rhs}")

    def __call__(self, a: int) -> int:
        return self.map[a]

    @cached_property
    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    def image(self) -> Subgroup:
        return Subgroup(self.target, tuple(set(self.map)))

    def image_subgroup(self, H: Subgroup) -> Subgroup:
        if H.group != self.source:
            raise GroupError("subgroup not in the source group")
        return Subgroup(self.target, tuple({self.map[a] for a in H.members}))

    def preimage_subgroup(self, H: Subgroup) -> Subgroup:
        if H.group != self.target:
            raise GroupError("subgroup not in the target group")
        mem = H.member_set
        return Subgroup(self.source,
                        tuple(a for a in self.source.elements() if self.map[a] in mem))

    def kernel(self) -> Subgroup:
        return Subgroup(self.source,
                        tuple(a for a in self.source.elements() if self.map[a] == 0))

    def __repr__(self) -> str:
        return f"Hom({self.source.name}->{self.target.name})"


def hom(source: Group, target: Group, mapping: Sequence[int]) -> Homomorphism:
    return Homomorphism(source, target, tuple(mapping))


def identity_hom(G: Group) -> Homomorphism:
    return Homomorphism(G, G, tuple(G.elements()))


def bang_hom(G: Group) -> Homomorphism:
    """The unique map to the trivial group."""
    return Homomorphism(G, cyclic_group(1), (0,) * G.order)


def inclusion_hom(H: Subgroup) -> Homomorphism:
    """H viewed as a standalone group, included into its ambient group."""
    return Homomorphism(H.as_group(), H.group, H.members)


def compose_homs(k: Homomorphism, h: Homomorphism) -> Homomorphism:
    if h.target != k.source:
        raise GroupError("homomorphisms are not composable")
    return Homomorphism(h.source, k.target, tuple(k.map[x] for x in h.map))


def cyclic_hom(source: Group, target: Group, gen_image: int) -> Homomorphism:
    """Homomorphism from a cyclic group determined by the image of element 1."""
    mapping = [0] * source.order
    x = 0
    for i in range(1, source.order):
        x = target.mul[x][gen_image]
        mapping[i] = x
    return Homomorphism(source, target, tuple(mapping))


# ---------------------------------------------------------------------------
# double cosets


def double_cosets(G: Group, A: Subgroup, B: Subgroup) -> tuple[int, ...]:
    """One representative per double coset A\\G/B, each minimal in its coset."""
    reps = []
    covered = [False] * G.order
    for g in G.elements():
        if covered[g]:
            continue
        reps.append(g)
        for a in A.members:
            ag = G.mul[a][g]
            for b in B.members:
                covered[G.mul[ag][b]] = True
    return tuple(reps)


# ---------------------------------------------------------------------------
# finite actions


@dataclass(frozen=True)
class FiniteGSet:
    """Finite set with an action of a subgroup H of an ambient group.

    ``act`` holds one permutation row per member of H in sorted member
    order.  ``side`` is "left" for H-sets and "right" for the right G-sets
    fed to the coinduced associativity operads.
    """

    subgroup: Subgroup
    size: int
    act: tuple[tuple[int, ...], ...]
    side: str = "left"

    def __post_init__(self) -> None:
        object.__setattr__(self, "act",
                           tuple(tuple(int(x) for x in row) for row in self.act))
        H = self.subgroup
        if self.side not in ("left", "right"):
            raise GroupError(f"unknown action side {self.side!r}")
        if len(self.act) != H.order:
            raise GroupError("need one action row per subgroup member")
        for row in self.act:
            if sorted(row) != list(range(self.size)):
                raise GroupError("action rows must be permutations of the points")
        if self.act[0] != identity_perm(self.size):
            raise GroupError("identity must act trivially")
        mul = H.group.mul
        pos = H.position
        for a in H.members:
            for b in H.members:
                lhs = self.act[pos[mul[a][b]]]
                if self.side == "left":
                    rhs = compose(self.act[pos[a]], self.act[pos[b]])
                else:
                    rhs = compose(self.act[pos[b]], self.act[pos[a]])
                if lhs != rhs:
                    raise GroupError(f"action law fails at ({a},{b})")

    @property
    def group(self) -> Group:
        return self.subgroup.group

    def act_of(self, g: int) -> Perm:
        """Permutation row for an ambient-group element g in the subgroup."""
        return self.act[self.subgroup.position[g]]

    def apply(self, g: int, x: int) -> int:
        return self.act_of(g)[x]

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.size
        out = []
        for x in range(self.size):
            if seen[x]:
                continue
            orbit = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for row in self.act:
                        z = row[y]
                        if z not in orbit:
                            orbit.add(z)
                            nxt.append(z)
                frontier = nxt
            for y in orbit:
                seen[y] = True
            out.append(tuple(sorted(orbit)))
        return tuple(out)

    def stabilizer(self, x: int) -> Subgroup:
        H = self.subgroup
        return Subgroup(H.group,
                        tuple(g for g in H.members if self.act_of(g)[x] == x))

    def fixed_points(self, K: Subgroup) -> tuple[int, ...]:
        if not self.subgroup.contains(K):
            raise GroupError("fixed points only for subgroups of the acting group")
        return tuple(x for x in range(self.size)
                     if all(self.act_of(g)[x] == x for g in K.members))

    def restrict(self, L: Subgroup) -> "FiniteGSet":
        if not self.subgroup.contains(L):
            raise GroupError("can only restrict to a smaller subgroup")
        rows = tuple(self.act_of(g) for g in L.members)
        return FiniteGSet(L, self.size, rows, side=self.side)

    def conjugate(self, g: int) -> "FiniteGSet":
        """The same points with gHg^-1 acting through h -> g^-1 h g."""
        if self.side != "left":
            raise GroupError("conjugation is implemented for left actions")
        G = self.group
        Hg = self.subgroup.conjugate(g)
        ginv = G.inv[g]
        rows = tuple(self.act_of(G.conj(ginv, a)) for a in Hg.members)
        return FiniteGSet(Hg, self.size, rows)

    def disjoint_union(self, other: "FiniteGSet") -> "FiniteGSet":
        if self.subgroup != other.subgroup or self.side != other.side:
            raise GroupError("disjoint union needs matching actions")
        n = self.size
        rows = tuple(
            row_a + tuple(x + n for x in row_b)
            for row_a, row_b in zip(self.act, other.act)
        )
        return FiniteGSet(self.subgroup, n + other.size, rows, side=self.side)

    def orbit_stabilizers(self) -> list[tuple[tuple[int, ...], Subgroup]]:
        return [(orbit, self.stabilizer(orbit[0])) for orbit in self.orbits()]


def trivial_hset(H: Subgroup, n: int) -> FiniteGSet:
    return FiniteGSet(H, n, tuple(identity_perm(n) for _ in H.members))


def coset_hset(H: Subgroup, K: Subgroup) -> FiniteGSet:
    """The transitive left H-set H/K; cosets ordered by least element."""
    if not H.contains(K):
        raise GroupError("coset space needs K <= H")
    G = H.group
    seen = set()
    cosets = []
    for h in H.members:
        cs = frozenset(G.mul[h][k] for k in K.members)
        if cs not in seen:
            seen.add(cs)
            cosets.append(cs)
    cosets.sort(key=min)
    point_of = {x: i for i, cs in enumerate(cosets) for x in cs}
    reps = [min(cs) for cs in cosets]
    rows = []
    for g in H.members:
        rows.append(tuple(point_of[G.mul[g][r]] for r in reps))
    return FiniteGSet(H, len(cosets), tuple(rows))


def right_coset_gset(G: Group, H: Subgroup) -> FiniteGSet:
    """The right G-set H\\G of right cosets Hg, ordered by least element."""
    seen = set()
    cosets = []
    for g in G.elements():
        cs = frozenset(G.mul[h][g] for h in H.members)
        if cs not in seen:
            seen.add(cs)
            cosets.append(cs)
    cosets.sort(key=min)
    point_of = {x: i for i, cs in enumerate(cosets) for x in cs}
    reps = [min(cs) for cs in cosets]
    rows = []
    for g in G.elements():
        rows.append(tuple(point_of[G.mul[r][g]] for r in reps))
    return FiniteGSet(full_subgroup(G), len(cosets), tuple(rows), side="right")


def induce_hset(H: Subgroup, T: FiniteGSet) -> FiniteGSet:
    """The induced H-set H x_K T, with points ordered (coset block, T point).

    Uses the minimal-element coset section, so the realization is canonical.
    """
    K = T.subgroup
    if not H.contains(K):
        raise GroupError("induction needs the acting subgroup inside H")
    G = H.group
    coset_sets = []
    seen = set()
    for h in H.members:
        cs = frozenset(G.mul[h][k] for k in K.members)
        if cs not in seen:
            seen.add(cs)
            coset_sets.append(cs)
    coset_sets.sort(key=min)
    reps = [min(cs) for cs in coset_sets]
    idx = {cs: i for i, cs in enumerate(coset_sets)}
    m = len(reps)
    size = m * T.size

    rows = []
    for h in H.members:
        row = [0] * size
        for i, r in enumerate(reps):
            hr = G.mul[h][r]
            cs = next(c for c in coset_sets if hr in c)
            j = idx[cs]
            # h r = reps[j] * k with k in K
            k = G.mul[G.inv[reps[j]]][hr]
            for x in range(T.size):
                row[i * T.size + x] = j * T.size + T.act_of(k)[x]
        rows.append(tuple(row))
    return FiniteGSet(H, size, tuple(rows))


# ---------------------------------------------------------------------------
# isomorphism classification of H-sets


def iso_key(T: FiniteGSet) -> tuple[tuple[int, ...], ...]:
    """Invariant separating H-sets up to isomorphism.

    Records, per orbit, the least member tuple among the H-conjugates of
    the orbit stabilizer; two H-sets are isomorphic iff the sorted lists
    of these orbit types match.
    """
    H = T.subgroup
    keys = []
    for orbit, stab in T.orbit_stabilizers():
        cls = {stab.conjugate(h).members for h in H.members}
        keys.append(min(cls))
    return tuple(sorted(keys))


def are_isomorphic(T1: FiniteGSet, T2: FiniteGSet) -> bool:
    return (T1.subgroup == T2.subgroup and T1.size == T2.size
            and iso_key(T1) == iso_key(T2))


def hset_isomorphism(T1: FiniteGSet, T2: FiniteGSet) -> Optional[Perm]:
    """An H-equivariant bijection T1 -> T2 as a point map, or None."""
    if T1.subgroup != T2.subgroup or T1.size != T2.size:
        return None
    H = T1.subgroup
    orbits1 = T1.orbit_stabilizers()
    orbits2 = T2.orbit_stabilizers()
    used = [False] * len(orbits2)
    mapping = [None] * T1.size
    for orbit1, stab1 in orbits1:
        placed = False
        for j, (orbit2, _) in enumerate(orbits2):
            if used[j] or len(orbit1) != len(orbit2):
                continue
            base = orbit1[0]
            # look for a target point with exactly the same stabilizer
            for q in orbit2:
                if T2.stabilizer(q).members != stab1.members:
                    continue
                ok = True
                for h in H.members:
                    p_img = T1.act_of(h)[base]
                    q_img = T2.act_of(h)[q]
                    if mapping[p_img] is None:
                        mapping[p_img] = q_img
                    elif mapping[p_img] != q_img:
                        ok = False
                        break
                if ok:
                    used[j] = True
                    placed = True
                    break
                for p in orbit1:
                    mapping[p] = None
            if placed:
                break
        if not placed:
            return None
    if any(m is None for m in mapping):
        return None
    return tuple(mapping)


def hsets_up_to_iso(H: Subgroup, n: int) -> tuple[FiniteGSet, ...]:
    """One representative per isomorphism class of n-point H-sets.

    Realized as disjoint unions of coset spaces H/K with K running over
    H-conjugacy class representatives of subgroups of H.
    """
    if n < 0:
        raise GroupError("size must be nonnegative")
    G = H.group
    lat = lattice_of(G)
    h_id = lat.id_of(H)
    below = [i for i in lat.ids_below(h_id)]
    class_reps = sorted({lat.hclass_rep(h_id, i) for i in below})
    options = [(lat.subgroups[i], H.order // lat.subgroups[i].order)
               for i in class_reps]

    results = []

    def build(choice: list[int]) -> FiniteGSet:
        parts = []
        for count, (K, _) in zip(choice, options):
            parts.extend(coset_hset(H, K) for _ in range(count))
        out = trivial_hset(H, 0)
        for part in parts:
            out = out.disjoint_union(part)
        return out

    def rec(i: int, remaining: int, choice: list[int]):
        if i == len(options):
            if remaining == 0:
                results.append(build(choice))
            return
        _, size = options[i]
        max_count = remaining // size
        for count in range(max_count + 1):
            rec(i + 1, remaining - count * size, choice + [count])

    rec(0, n, [])
    return tuple(results)


# ---------------------------------------------------------------------------
# graph subgroups of G x Sigma_n


@dataclass(frozen=True)
class GraphSubgroup:
    """The subgroup {(h, sigma(h))} of G x Sigma_n encoding an H-set T."""

    group: Group
    arity: int
    subgroup: Subgroup
    hset: FiniteGSet
    pairs: frozenset[tuple[int, Perm]]

    def sigma(self, h: int) -> Perm:
        return self.hset.act_of(h)

    @property
    def order(self) -> int:
        return len(self.pairs)

    def __repr__(self) -> str:
        return (f"GraphSubgroup({self.group.name}xS{self.arity}, "
                f"H={list(self.subgroup.members)})")


def graph_subgroup(G: Group, H: Subgroup, T: FiniteGSet) -> GraphSubgroup:
    if H.group != G or T.subgroup != H or T.side != "left":
        raise GroupError("graph subgroup needs a left H-set over a subgroup of G")
    pairs = frozenset((h, T.act_of(h)) for h in H.members)
    return GraphSubgroup(G, T.size, H, T, pairs)


def is_subconjugate(g1: GraphSubgroup, g2: GraphSubgroup) -> bool:
    """Whether g1 is subconjugate to g2 inside G x Sigma_n.

    Holds iff some g in G moves the witness of g1 inside the conjugated,
    restricted witness of g2: H1 <= g H2 g^-1 and T1 iso to res c_g T2.
    """
    if g1.group != g2.group or g1.arity != g2.arity:
        return False
    G = g1.group
    for g in G.elements():
        conj = g2.subgroup.conjugate(g)
        if not conj.contains(g1.subgroup):
            continue
        moved = g2.hset.conjugate(g).restrict(g1.subgroup)
        if are_isomorphic(g1.hset, moved):
            return True
    return False


def graph_conjugacy_label(gs: GraphSubgroup):
    """Canonical label of a graph subgroup up to conjugacy in G x Sigma_n."""
    G = gs.group
    lat = lattice_of(G)
    best = None
    for g in G.elements():
        conj_sub = gs.subgroup.conjugate(g)
        key = (lat.id_of(conj_sub), iso_key(gs.hset.conjugate(g)))
        if best is None or key < best:
            best = key
    return (gs.arity, best)
