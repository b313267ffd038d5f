"""Image and inverse-image functors on transfer systems along a homomorphism.

Four constructions for f : G -> G': the left images/preimages are computed
by generating from explicit pair sets, the right ones by cogenerating from
pulled-back orders.  Their adjointness and functoriality are verified by
the report operations below rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .groups import GroupError, Homomorphism, lattice_of
from .transfer import (
    TransferSystem,
    cogenerate,
    generate_pairs,
    rel_from_pairs,
    validate,
)

KINDS = ("fL", "finvL", "fR", "finvR")


def _image_id(f: Homomorphism, lat_src, lat_tgt, i: int) -> int:
    members = {f.map[a] for a in lat_src.subgroups[i].members}
    return lat_tgt.id_of_members(members)


def _preimage_id(f: Homomorphism, lat_src, lat_tgt, j: int) -> int:
    mem = lat_tgt.subgroups[j].member_set
    return lat_src.id_of_members(a for a in f.source.elements() if f.map[a] in mem)


def image_L(f: Homomorphism, t: TransferSystem) -> TransferSystem:
    """f_L: pushes t forward and closes up; lands on the target group.

    Uses the simplified generating set: conjugates of (fK, fH) over the
    target group, then the reflexive-transitive closure.
    """
    if t.group != f.source:
        raise GroupError("transfer system lives on the wrong group for f_L")
    lat_src = lattice_of(f.source)
    lat_tgt = lattice_of(f.target)
    base = set()
    for i, j in t.pairs():
        fi = _image_id(f, lat_src, lat_tgt, i)
        fj = _image_id(f, lat_src, lat_tgt, j)
        for g in f.target.elements():
            base.add((lat_tgt.conj_table[g][fi], lat_tgt.conj_table[g][fj]))
    return _refl_trans(lat_tgt, base)


def image_L_defining(f: Homomorphism, t: TransferSystem) -> TransferSystem:
    """f_L computed straight from the definition: generate the raw image."""
    lat_src = lattice_of(f.source)
    lat_tgt = lattice_of(f.target)
    base = {(_image_id(f, lat_src, lat_tgt, i), _image_id(f, lat_src, lat_tgt, j))
            for i, j in t.pairs()}
    return generate_pairs(lat_tgt, base)


def preimage_L(f: Homomorphism, t: TransferSystem) -> TransferSystem:
    """f^-1_L: pulls t back along subgroup preimages and closes up."""
    if t.group != f.target:
        raise GroupError("transfer system lives on the wrong group for f^-1_L")
    lat_src = lattice_of(f.source)
    lat_tgt = lattice_of(f.target)
    base = set()
    for i, j in t.pairs():
        pi = _preimage_id(f, lat_src, lat_tgt, i)
        pj = _preimage_id(f, lat_src, lat_tgt, j)
        for l in lat_src.ids_below(pj):
            base.add((lat_src.meet_table[pi][l], l))
    return _refl_trans(lat_src, base)


def preimage_L_defining(f: Homomorphism, t: TransferSystem) -> TransferSystem:
    lat_src = lattice_of(f.source)
    lat_tgt = lattice_of(f.target)
    base = {(_preimage_id(f, lat_src, lat_tgt, i),
             _preimage_id(f, lat_src, lat_tgt, j)) for i, j in t.pairs()}
    return generate_pairs(lat_src, base)


def image_R(f: Homomorphism, t: TransferSystem) -> TransferSystem:
    """f_R: cogeneration of the relation pulled back along subgroup preimage."""
    if t.group != f.source:
        raise GroupError("transfer system lives on the wrong group for f_R")
    lat_src = lattice_of(f.source)
    lat_tgt = lattice_of(f.target)
    pairs = []
    for i in range(lat_tgt.count):
        for j in range(lat_tgt.count):
            if not lat_tgt.leq[i][j]:
                continue
            pi = _preimage_id(f, lat_src, lat_tgt, i)
            pj = _preimage_id(f, lat_src, lat_tgt, j)
            if t.has(pi, pj):
                pairs.append((i, j))
    rel = rel_from_pairs(lat_tgt.count, pairs)
    return cogenerate(lat_tgt, rel, check=False)


def preimage_R(f: Homomorphism, t: TransferSystem) -> TransferSystem:
    """f^-1_R: cogeneration of the relation pulled back along subgroup image."""
    if t.group != f.target:
        raise GroupError("transfer system lives on the wrong group for f^-1_R")
    lat_src = lattice_of(f.source)
    lat_tgt = lattice_of(f.target)
    pairs = []
    for i in range(lat_src.count):
        for j in range(lat_src.count):
            if not lat_src.leq[i][j]:
                continue
            fi = _image_id(f, lat_src, lat_tgt, i)
            fj = _image_id(f, lat_src, lat_tgt, j)
            if t.has(fi, fj):
                pairs.append((i, j))
    rel = rel_from_pairs(lat_src.count, pairs)
    return cogenerate(lat_src, rel, check=False)


def raw_pullback(m: Homomorphism, t: TransferSystem) -> TransferSystem:
    """For injective m the plain pullback is already a transfer system."""
    if not m.is_injective:
        raise GroupError("raw pullback is only a transfer system for injective maps")
    lat_src = lattice_of(m.source)
    lat_tgt = lattice_of(m.target)
    pairs = [(i, j)
             for i in range(lat_src.count) for j in range(lat_src.count)
             if lat_src.leq[i][j]
             and t.has(_image_id(m, lat_src, lat_tgt, i),
                       _image_id(m, lat_src, lat_tgt, j))]
    return validate(lat_src, rel_from_pairs(lat_src.count, pairs))


def apply_functor(kind: str, f: Homomorphism, t: TransferSystem) -> TransferSystem:
    if kind == "fL":
        return image_L(f, t)
    if kind == "finvL":
        return preimage_L(f, t)
    if kind == "fR":
        return image_R(f, t)
    if kind == "finvR":
        return preimage_R(f, t)
    raise GroupError(f"unknown functor kind {kind!r}; expected one of {KINDS}")


def _refl_trans(lat, pairs: set) -> TransferSystem:
    n = lat.count
    current = set(pairs)
    current.update((i, i) for i in range(n))
    changed = True
    while changed:
        changed = False
        for i, j in list(current):
            for k in range(n):
                if (j, k) in current and (i, k) not in current:
                    current.add((i, k))
                    changed = True
    return TransferSystem(lat.group, rel_from_pairs(n, current), lat)


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class LawReport:
    law: str
    checked: int
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        out = {"law": self.law, "checked": self.checked, "passed": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


GALOIS_PAIRINGS = {("fL", "finvR"), ("finvL", "fR")}

_FORWARD = {"fL", "fR"}        # Tr(source) -> Tr(target)
_BACKWARD = {"finvL", "finvR"}  # Tr(target) -> Tr(source)


def check_galois(f: Homomorphism, lower: str, upper: str,
                 source_systems: Sequence[TransferSystem],
                 target_systems: Sequence[TransferSystem],
                 enforce_pairing: bool = True) -> LawReport:
    """Verify lower(x) <= y iff x <= upper(y) over the two full lattices.

    For (fL, finvR) the lower map goes Tr(source) -> Tr(target); for
    (finvL, fR) it goes the other way, so the roles of the two lattices
    swap accordingly.  Non-adjoint pairings are rejected unless
    ``enforce_pairing`` is off, in which case any direction-compatible
    pairing runs and the report carries the counterexample it finds.
    """
    if (lower, upper) not in GALOIS_PAIRINGS and enforce_pairing:
        raise GroupError(
            f"({lower}, {upper}) is not an adjoint pairing; "
            f"expected one of {sorted(GALOIS_PAIRINGS)}")
    if not ((lower in _FORWARD and upper in _BACKWARD)
            or (lower in _BACKWARD and upper in _FORWARD)):
        raise GroupError(
            f"({lower}, {upper}) do not point in opposite directions")
    if lower in _FORWARD:
        xs, ys = source_systems, target_systems
    else:
        xs, ys = target_systems, source_systems
    checked = 0
    for x in xs:
        lx = apply_functor(lower, f, x)
        for y in ys:
            uy = apply_functor(upper, f, y)
            checked += 1
            if lx.refines(y) != x.refines(uy):
                return LawReport(
                    f"{lower} -| {upper}", checked,
                    {"x": x.pairs(), "y": y.pairs(),
                     "lower(x)": lx.pairs(), "upper(y)": uy.pairs()})
    return LawReport(f"{lower} -| {upper}", checked)


def verify_functoriality(h: Homomorphism, k: Homomorphism,
                         systems_G: Sequence[TransferSystem],
                         systems_Gpp: Sequence[TransferSystem]) -> list[LawReport]:
    """The four composite equalities for a chain G -h-> G' -k-> G''."""
    if h.target != k.source:
        raise GroupError("homomorphisms are not composable")
    from .groups import compose_homs
    kh = compose_homs(k, h)
    reports = []
    for law, functor, direct, systems in (
            ("(kh)_L = k_L h_L", lambda t: image_L(k, image_L(h, t)),
             lambda t: image_L(kh, t), systems_G),
            ("(kh)_R = k_R h_R", lambda t: image_R(k, image_R(h, t)),
             lambda t: image_R(kh, t), systems_G),
            ("(kh)^-1_L = h^-1_L k^-1_L",
             lambda t: preimage_L(h, preimage_L(k, t)),
             lambda t: preimage_L(kh, t), systems_Gpp),
            ("(kh)^-1_R = h^-1_R k^-1_R",
             lambda t: preimage_R(h, preimage_R(k, t)),
             lambda t: preimage_R(kh, t), systems_Gpp)):
        counter = None
        checked = 0
        for t in systems:
            checked += 1
            if functor(t).rel != direct(t).rel:
                counter = {"t": t.pairs(),
                           "composite": functor(t).pairs(),
                           "direct": direct(t).pairs()}
                break
        reports.append(LawReport(law, checked, counter))
    return reports


def check_pointwise_order(f: Homomorphism,
                          target_systems: Sequence[TransferSystem]) -> LawReport:
    """f^-1_L <= f^-1_R pointwise; strict with witness (1, ker f) when f
    is not injective."""
    lat_src = lattice_of(f.source)
    ker_id = lat_src.id_of(f.kernel())
    checked = 0
    for t in target_systems:
        left = preimage_L(f, t)
        right = preimage_R(f, t)
        checked += 1
        if not left.refines(right):
            return LawReport("finvL <= finvR", checked,
                             {"t": t.pairs(), "left": left.pairs(),
                              "right": right.pairs()})
        if f.is_injective:
            if left.rel != right.rel:
                return LawReport("injective collapse", checked,
                                 {"t": t.pairs(), "left": left.pairs(),
                                  "right": right.pairs()})
        else:
            strict = (right.has(lat_src.trivial_id, ker_id)
                      and not left.has(lat_src.trivial_id, ker_id))
            if not strict:
                return LawReport("strict containment witness (1, ker f)",
                                 checked,
                                 {"t": t.pairs(), "left": left.pairs(),
                                  "right": right.pairs(),
                                  "kernel": ker_id})
    law = "finvL = finvR (injective)" if f.is_injective \
        else "finvL < finvR with witness (1, ker f)"
    return LawReport(law, checked)
