"""Built-in group and homomorphism catalogs plus the JSON wire formats."""

from __future__ import annotations

import re

from .groups import (
    Group,
    GroupError,
    Homomorphism,
    all_subgroups,
    bang_hom,
    cyclic_group,
    cyclic_hom,
    dihedral_group,
    direct_product,
    identity_hom,
    inclusion_hom,
    klein_four_group,
    make_group,
    symmetric_group,
)

_CYCLIC_RE = re.compile(r"C(\d+)$")
_SYMMETRIC_RE = re.compile(r"S(\d+)$")
_DIHEDRAL_RE = re.compile(r"D(\d+)$")

#: groups the verification suites range over by default
ACCEPTANCE_GROUPS = ("C4", "C8", "K4", "S3")


def group_by_name(name: str) -> Group:
    """Resolve catalog names: Cn, Sn, Dn (order 2n), K4, and AxB products."""
    name = name.strip()
    if "x" in name:
        parts = name.split("x")
        grp = group_by_name(parts[0])
        for part in parts[1:]:
            grp = direct_product(grp, group_by_name(part))
        return grp
    if name == "K4":
        return klein_four_group()
    m = _CYCLIC_RE.fullmatch(name)
    if m:
        return cyclic_group(int(m.group(1)))
    m = _SYMMETRIC_RE.fullmatch(name)
    if m:
        return symmetric_group(int(m.group(1)))
    m = _DIHEDRAL_RE.fullmatch(name)
    if m:
        return dihedral_group(int(m.group(1)))
    raise GroupError(f"unknown group name {name!r}")


def group_to_json(G: Group) -> dict:
    return {"name": G.name, "order": G.order, "mul": [list(row) for row in G.mul]}


def group_from_json(data) -> Group:
    if isinstance(data, str):
        return group_by_name(data)
    if "kind" in data:
        kind = data["kind"]
        if kind == "direct_product":
            factors = tuple(group_from_json(f) for f in data["factors"])
            return make_group(kind, factors=factors)
        return make_group(kind, data.get("n"))
    return Group(tuple(tuple(row) for row in data["mul"]),
                 name=data.get("name", "G"))


def hom_to_json(f: Homomorphism) -> dict:
    return {
        "source": group_to_json(f.source),
        "target": group_to_json(f.target),
        "map": list(f.map),
    }


def hom_from_json(data) -> Homomorphism:
    return Homomorphism(group_from_json(data["source"]),
                        group_from_json(data["target"]),
                        tuple(data["map"]))


def _transposition(S3: Group) -> int:
    return next(g for g in S3.elements() if S3.element_order(g) == 2)


def catalog_homs() -> dict[str, Homomorphism]:
    """The named homomorphisms the verification matrix runs on.

    Covers the running examples (C2 into C4 and C8, the quotient C4 -> C2,
    C4 -> S3 sending the generator to a transposition, the collapse maps
    to the trivial group) together with every subgroup inclusion of the
    acceptance groups.
    """
    C2 = cyclic_group(2)
    C4 = cyclic_group(4)
    C8 = cyclic_group(8)
    S3 = symmetric_group(3)
    homs: dict[str, Homomorphism] = {
        "C2_into_C4": cyclic_hom(C2, C4, 2),
        "C2_into_C8": cyclic_hom(C2, C8, 4),
        "C4_into_C8": cyclic_hom(C4, C8, 2),
        "C4_onto_C2": cyclic_hom(C4, C2, 1),
        "C8_onto_C4": cyclic_hom(C8, C4, 1),
        "C4_to_S3": cyclic_hom(C4, S3, _transposition(S3)),
    }
    for name in ACCEPTANCE_GROUPS:
        G = group_by_name(name)
        homs[f"id_{name}"] = identity_hom(G)
        homs[f"bang_{name}"] = bang_hom(G)
        for i, H in enumerate(all_subgroups(G)):
            homs[f"{name}_sub{i}_incl"] = inclusion_hom(H)
    homs["bang_C2"] = bang_hom(C2)
    return homs


def catalog_hom(name: str) -> Homomorphism:
    homs = catalog_homs()
    if name not in homs:
        raise GroupError(f"unknown hom {name!r}; known: {sorted(homs)}")
    return homs[name]


def catalog_chains() -> list[tuple[str, str]]:
    """Composable (h, k) pairs from the hom catalog, k applied after h."""
    homs = catalog_homs()
    chains = []
    for name_h, h in homs.items():
        for name_k, k in homs.items():
            if h.target == k.source:
                chains.append((name_h, name_k))
    return chains
