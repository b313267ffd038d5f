"""Transfer systems on a fixed finite group.

A relation on the subgroup list is kept as a dense boolean matrix indexed
by subgroup ids (the canonical `all_subgroups` order).  A transfer system
is a validated relation: a partial order refining inclusion that is closed
under conjugation and under restriction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .catalog import group_from_json, group_to_json
from .groups import Group, SubgroupLattice, lattice_of

Rel = tuple[tuple[bool, ...], ...]

DEFAULT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration exceeds its visit budget."""


@dataclass
class Violation:
    """First failed transfer-system axiom, with subgroup-id witnesses."""

    kind: str            # refinement | reflexivity | transitivity | conjugation | restriction
    witness: dict

    def describe(self) -> str:
        parts = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.kind} violated at {parts}"


class TransferSystemError(ValueError):
    def __init__(self, violation: Violation):
        super().__init__(violation.describe())
        self.violation = violation


def rel_from_pairs(count: int, pairs: Iterable[tuple[int, int]],
                   reflexive: bool = True) -> Rel:
    m = [[False] * count for _ in range(count)]
    if reflexive:
        for i in range(count):
            m[i][i] = True
    for i, j in pairs:
        m[i][j] = True
    return tuple(tuple(row) for row in m)


def rel_pairs(rel: Rel, nontrivial: bool = True) -> list[tuple[int, int]]:
    return [(i, j) for i, row in enumerate(rel) for j, v in enumerate(row)
            if v and (i != j or not nontrivial)]


def rel_leq(a: Rel, b: Rel) -> bool:
    return all(not av or bv for ra, rb in zip(a, b) for av, bv in zip(ra, rb))


def _check_refinement(lat: SubgroupLattice, rel: Rel) -> Optional[Violation]:
    for i, j in rel_pairs(rel, nontrivial=False):
        if not lat.leq[i][j]:
            return Violation("refinement", {"K": i, "H": j})
    return None


def _check_axioms(lat: SubgroupLattice, rel: Rel) -> Optional[Violation]:
    n = lat.count
    for i in range(n):
        if not rel[i][i]:
            return Violation("reflexivity", {"K": i})
    for i, j in rel_pairs(rel):
        for g in lat.group.elements():
            if not rel[lat.conj_table[g][i]][lat.conj_table[g][j]]:
                return Violation("conjugation", {"K": i, "H": j, "g": g})
        for l in lat.ids_below(j):
            if not rel[lat.meet_table[l][i]][l]:
                return Violation("restriction", {"K": i, "H": j, "L": l})
    for i in range(n):
        for j in range(n):
            if not rel[i][j]:
                continue
            for k in range(n):
                if rel[j][k] and not rel[i][k]:
                    return Violation("transitivity", {"K": i, "J": j, "H": k})
    return None


@dataclass(frozen=True)
class TransferSystem:
    """A validated transfer system; equality and hashing use the matrix."""

    group: Group
    rel: Rel
    lattice: SubgroupLattice = field(compare=False, repr=False, hash=False)

    def pairs(self) -> list[tuple[int, int]]:
        return rel_pairs(self.rel)

    def has(self, i: int, j: int) -> bool:
        return self.rel[i][j]

    def refines(self, other: "TransferSystem") -> bool:
        _require_same_group(self, other)
        return rel_leq(self.rel, other.rel)

    def flat(self) -> tuple[bool, ...]:
        return tuple(v for row in self.rel for v in row)

    def __repr__(self) -> str:
        return f"TransferSystem({self.group.name}, {self.pairs()})"


def _require_same_group(s: TransferSystem, t: TransferSystem) -> None:
    if s.group != t.group:
        raise TransferSystemError(
            Violation("refinement", {"reason": "group mismatch"}))


def find_violation(lat: SubgroupLattice, rel: Rel) -> Optional[Violation]:
    return _check_refinement(lat, rel) or _check_axioms(lat, rel)


def validate(lat: SubgroupLattice, rel: Rel) -> TransferSystem:
    """Validate a relation matrix, raising with the first failed axiom."""
    bad = find_violation(lat, rel)
    if bad is not None:
        raise TransferSystemError(bad)
    return TransferSystem(lat.group, rel, lat)


def discrete(G: Group) -> TransferSystem:
    lat = lattice_of(G)
    return TransferSystem(G, rel_from_pairs(lat.count, ()), lat)


def complete(G: Group) -> TransferSystem:
    lat = lattice_of(G)
    return TransferSystem(G, lat.leq, lat)


def _saturate(lat: SubgroupLattice, pairs: set[tuple[int, int]]) -> frozenset:
    """Close a pair set under conjugation, restriction, and transitivity."""
    n = lat.count
    current = set(pairs)
    current.update((i, i) for i in range(n))
    while True:
        size = len(current)
        for i, j in list(current):
            for g in lat.group.elements():
                current.add((lat.conj_table[g][i], lat.conj_table[g][j]))
        for i, j in list(current):
            for l in lat.ids_below(j):
                current.add((lat.meet_table[l][i], l))
        # transitive closure
        changed = True
        while changed:
            changed = False
            for i, j in list(current):
                for k in range(n):
                    if (j, k) in current and (i, k) not in current:
                        current.add((i, k))
                        changed = True
        if len(current) == size:
            return frozenset(current)


def generate(lat: SubgroupLattice, rel: Rel) -> TransferSystem:
    """Least transfer system containing a relation that refines inclusion."""
    bad = _check_refinement(lat, rel)
    if bad is not None:
        raise TransferSystemError(bad)
    closed = _saturate(lat, set(rel_pairs(rel, nontrivial=False)))
    return TransferSystem(lat.group, rel_from_pairs(lat.count, closed), lat)


def generate_pairs(lat: SubgroupLattice,
                   pairs: Iterable[tuple[int, int]]) -> TransferSystem:
    return TransferSystem(lat.group,
                          rel_from_pairs(lat.count, _saturate(lat, set(pairs))),
                          lat)


def cogenerate(lat: SubgroupLattice, rel: Rel,
               check: bool = True) -> TransferSystem:
    """Largest transfer system contained in a partial order refining inclusion.

    Keeps (K, H) iff for every g and every L inside gHg^-1 the pair
    (gKg^-1 n L, L) already lies in the input order.
    """
    if check:
        bad = _check_refinement(lat, rel)
        if bad is not None:
            raise TransferSystemError(bad)
        n = lat.count
        for i in range(n):
            if not rel[i][i]:
                raise TransferSystemError(Violation("reflexivity", {"K": i}))
        for i in range(n):
            for j in range(n):
                if not rel[i][j]:
                    continue
                for k in range(n):
                    if rel[j][k] and not rel[i][k]:
                        raise TransferSystemError(
                            Violation("transitivity", {"K": i, "J": j, "H": k}))
    kept = set()
    for i in range(lat.count):
        for j in range(lat.count):
            if not lat.leq[i][j]:
                continue
            ok = True
            for g in lat.group.elements():
                ci, cj = lat.conj_table[g][i], lat.conj_table[g][j]
                for l in lat.ids_below(cj):
                    if not rel[lat.meet_table[ci][l]][l]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                kept.add((i, j))
    return TransferSystem(lat.group, rel_from_pairs(lat.count, kept), lat)


def meet(s: TransferSystem, t: TransferSystem) -> TransferSystem:
    """Greatest lower bound: the pairwise intersection, no closure needed."""
    _require_same_group(s, t)
    rel = tuple(tuple(a and b for a, b in zip(ra, rb))
                for ra, rb in zip(s.rel, t.rel))
    return TransferSystem(s.group, rel, s.lattice)


def join(s: TransferSystem, t: TransferSystem) -> TransferSystem:
    """Least upper bound: the transitive closure of the union."""
    _require_same_group(s, t)
    lat = s.lattice
    n = lat.count
    current = {p for p in rel_pairs(s.rel, nontrivial=False)}
    current.update(rel_pairs(t.rel, nontrivial=False))
    changed = True
    while changed:
        changed = False
        for i, j in list(current):
            for k in range(n):
                if (j, k) in current and (i, k) not in current:
                    current.add((i, k))
                    changed = True
    return TransferSystem(s.group, rel_from_pairs(n, current), lat)


def enumerate_transfer_systems(G: Group,
                               budget: int = DEFAULT_BUDGET
                               ) -> tuple[TransferSystem, ...]:
    """All transfer systems on G in canonical (flattened matrix) order.

    Backtracks over the nontrivial comparable pairs, propagating closure
    consequences when a pair is switched on and pruning branches whose
    closure collides with an excluded pair.
    """
    lat = lattice_of(G)
    candidates = [(i, j) for i in range(lat.count) for j in range(lat.count)
                  if i != j and lat.leq[i][j]]
    diagonal = frozenset((i, i) for i in range(lat.count))
    results: set[frozenset] = set()
    visits = 0

    def dfs(k: int, current: frozenset, excluded: frozenset) -> None:
        nonlocal visits
        visits += 1
        if visits > budget:
            raise BudgetExceededError(
                f"enumeration budget {budget} exhausted on {G.name}")
        if k == len(candidates):
            results.add(current)
            return
        pair = candidates[k]
        if pair in current:
            dfs(k + 1, current, excluded)
            return
        dfs(k + 1, current, excluded | {pair})
        closed = _saturate(lat, set(current | {pair}))
        if not (closed & excluded):
            dfs(k + 1, closed, excluded)

    dfs(0, diagonal, frozenset())
    systems = [TransferSystem(G, rel_from_pairs(lat.count, pairs), lat)
               for pairs in results]
    systems.sort(key=lambda t: t.flat())
    return tuple(systems)


def refines_matrix(systems: Sequence[TransferSystem]) -> tuple[tuple[bool, ...], ...]:
    return tuple(tuple(s.refines(t) for t in systems) for s in systems)


def hasse(systems: Sequence[TransferSystem]) -> list[tuple[int, int]]:
    """Cover relation of the (assumed complete) enumerated lattice."""
    leq = refines_matrix(systems)
    n = len(systems)
    covers = []
    for a in range(n):
        for b in range(n):
            if a == b or not leq[a][b]:
                continue
            if any(leq[a][c] and leq[c][b] for c in range(n)
                   if c != a and c != b):
                continue
            covers.append((a, b))
    return covers


# ---------------------------------------------------------------------------
# wire formats


def ts_to_json(t: TransferSystem) -> dict:
    return {"group": group_to_json(t.group), "pairs": [list(p) for p in t.pairs()]}


def ts_from_json(data, group: Optional[Group] = None) -> TransferSystem:
    G = group if group is not None else group_from_json(data["group"])
    lat = lattice_of(G)
    rel = rel_from_pairs(lat.count, [tuple(p) for p in data["pairs"]])
    return validate(lat, rel)


def hasse_dot(systems: Sequence[TransferSystem],
              covers: Optional[Sequence[tuple[int, int]]] = None) -> str:
    """DOT rendering of the lattice; edges point up the refinement order."""
    if covers is None:
        covers = hasse(systems)
    lines = ["digraph transfer_lattice {", "  rankdir=BT;"]
    for i, t in enumerate(systems):
        label = ",".join(f"{a}<{b}" for a, b in t.pairs()) or "discrete"
        lines.append(f'  n{i} [label="{label}"];')
    for a, b in covers:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines)
