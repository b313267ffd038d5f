"""Operadic term rewriting over two symbol families.

Terms are formal composites of orbit-representative symbols drawn from two
factors X and Y.  Two directed reduction systems are implemented: the
coproduct system (identity elimination and same-factor composite folding)
and the tensor system (interchange, constant collapse), both strictly
decreasing an explicit complexity measure, so every reduction terminates
within a known step budget.  Confluence, equivariance, and congruence with
composition are checked on fuzzed terms rather than assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .groups import (
    FiniteGSet,
    GraphSubgroup,
    Group,
    GroupError,
    Perm,
    Subgroup,
    are_isomorphic,
    compose,
    coset_hset,
    graph_subgroup,
    identity_perm,
    invert,
    lattice_of,
)


class RewriteError(ValueError):
    pass


@dataclass(frozen=True)
class OpSymbol:
    """Orbit-representative operation symbol from factor X or Y."""

    factor: str
    sid: int
    arity: int

    def __post_init__(self) -> None:
        if self.factor not in ("X", "Y"):
            raise RewriteError("factor must be X or Y")

    @property
    def name(self) -> str:
        return f"{self.factor}:{self.sid}"

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Var:
    index: int  # 1-based


@dataclass(frozen=True)
class App:
    symbol: OpSymbol
    children: tuple


Term = Union[Var, App]


class SymbolPool:
    """Symbols with their group action tables and optional operad data.

    ``g_action[(sym, g)] = (sym2, perm)`` records g . sym = sym2 . perm,
    the unique factorization through orbit representatives.  Composite
    tables record within-factor partial composition for factors carrying
    genuine operad structure; free generators have none.
    """

    def __init__(self, group: Group, symbols: Iterable[OpSymbol],
                 g_action: dict,
                 x_identity: Optional[OpSymbol] = None,
                 y_identity: Optional[OpSymbol] = None,
                 compose_table: Optional[dict] = None,
                 z: Optional[OpSymbol] = None,
                 validate: bool = True):
        self.group = group
        self.symbols = tuple(symbols)
        self.g_action = dict(g_action)
        self.x_identity = x_identity
        self.y_identity = y_identity
        self.compose_table = dict(compose_table or {})
        self.z = z
        if validate:
            self.validate()

    def act(self, g: int, sym: OpSymbol) -> tuple[OpSymbol, Perm]:
        return self.g_action[(sym, g)]

    def composite(self, h: OpSymbol, k: int, f: OpSymbol):
        """The factored composite of h with f in slot k (1-based), if any."""
        return self.compose_table.get((h, k, f))

    def validate(self) -> None:
        G = self.group
        for sym in self.symbols:
            for g in G.elements():
                if (sym, g) not in self.g_action:
                    raise RewriteError(f"missing action of {g} on {sym}")
            s0, p0 = self.g_action[(sym, 0)]
            if s0 != sym or p0 != identity_perm(sym.arity):
                raise RewriteError(f"identity must fix {sym}")
            for g1 in G.elements():
                f1, p1 = self.g_action[(sym, g1)]
                for g2 in G.elements():
                    f2, p2 = self.g_action[(f1, g2)]
                    f3, p3 = self.g_action[(sym, G.mul[g2][g1])]
                    if f3 != f2 or p3 != compose(p2, p1):
                        raise RewriteError(
                            f"action tables break the group law at "
                            f"({g2},{g1}) on {sym}")
        if self.z is not None:
            if self.z.factor != "Y" or self.z.arity != 0:
                raise RewriteError("z must be a nullary Y-symbol")
            for g in G.elements():
                if self.g_action[(self.z, g)][0] != self.z:
                    raise RewriteError("z must be G-fixed")


# ---------------------------------------------------------------------------
# term basics


def var_count(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return sum(var_count(c) for c in t.children)


def var_indices(t: Term) -> list[int]:
    if isinstance(t, Var):
        return [t.index]
    out = []
    for c in t.children:
        out.extend(var_indices(c))
    return out


def symbol_count(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + sum(symbol_count(c) for c in t.children)


def is_operadic(t: Term) -> bool:
    return sorted(var_indices(t)) == list(range(1, var_count(t) + 1))


def term_arity(t: Term) -> int:
    return var_count(t)


def shift_vars(t: Term, k: int) -> Term:
    if isinstance(t, Var):
        return Var(t.index + k)
    return App(t.symbol, tuple(shift_vars(c, k) for c in t.children))


def substitute(t: Term, mapping: dict[int, Term]) -> Term:
    if isinstance(t, Var):
        return mapping[t.index]
    return App(t.symbol, tuple(substitute(c, mapping) for c in t.children))


def act_sigma(t: Term, sigma: Perm) -> Term:
    """Right action: variable x_i becomes x_{sigma^-1 i}."""
    inv = invert(sigma)

    def walk(s: Term) -> Term:
        if isinstance(s, Var):
            return Var(inv[s.index - 1] + 1)
        return App(s.symbol, tuple(walk(c) for c in s.children))

    return walk(t)


def act_g(pool: SymbolPool, g: int, t: Term) -> Term:
    """Left group action through the symbol factorization tables."""
    if isinstance(t, Var):
        return t
    sym2, sigma = pool.act(g, t.symbol)
    inv = invert(sigma)
    return App(sym2, tuple(act_g(pool, g, t.children[inv[i]])
                           for i in range(len(t.children))))


def gamma(t: Term, args: Sequence[Term]) -> Term:
    """Operadic composition: substitute args into the variables of t,
    shifting the variables of each argument past its predecessors."""
    k = term_arity(t)
    if len(args) != k:
        raise RewriteError(f"gamma arity mismatch: term takes {k}, got {len(args)}")
    shifted = {}
    offset = 0
    for i, s in enumerate(args, start=1):
        shifted[i] = shift_vars(s, offset)
        offset += term_arity(s)
    return substitute(t, shifted)


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if not t.children:
        return f"({t.symbol.name})"
    inner = " ".join(format_term(c) for c in t.children)
    return f"({t.symbol.name} {inner})"


def parse_term(text: str, pool: SymbolPool) -> Term:
    by_name = {s.name: s for s in pool.symbols}
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> Term:
        nonlocal pos
        tok = tokens[pos]
        if tok == "(":
            pos += 1
            head = tokens[pos]
            if head not in by_name:
                raise RewriteError(f"unknown symbol {head!r}")
            sym = by_name[head]
            pos += 1
            children = []
            while tokens[pos] != ")":
                children.append(parse())
            pos += 1
            if len(children) != sym.arity:
                raise RewriteError(
                    f"{sym.name} takes {sym.arity} arguments, got {len(children)}")
            return App(sym, tuple(children))
        if tok.startswith("x"):
            pos += 1
            return Var(int(tok[1:]))
        raise RewriteError(f"unexpected token {tok!r}")

    out = parse()
    if pos != len(tokens):
        raise RewriteError("trailing input after term")
    return out


# ---------------------------------------------------------------------------
# the two reduction systems


@dataclass(frozen=True)
class RewriteMode:
    kind: str  # "coproduct" | "tensor"

    def __post_init__(self) -> None:
        if self.kind not in ("coproduct", "tensor"):
            raise RewriteError(f"unknown rewrite mode {self.kind!r}")


COPRODUCT = RewriteMode("coproduct")
TENSOR = RewriteMode("tensor")

Path = tuple[int, ...]


@dataclass
class Step:
    rule: str
    path: Path
    before: Term
    after: Term

    def to_json(self) -> dict:
        return {"rule": self.rule, "path": list(self.path),
                "before": format_term(self.before),
                "after": format_term(self.after)}


def subterm_at(t: Term, path: Path) -> Term:
    for i in path:
        t = t.children[i]
    return t


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    head, rest = path[0], path[1:]
    children = list(t.children)
    children[head] = replace_at(children[head], rest, new)
    return App(t.symbol, tuple(children))


def _is_z_call(pool: SymbolPool, t: Term) -> bool:
    return isinstance(t, App) and pool.z is not None and t.symbol == pool.z


def _local_coproduct(pool: SymbolPool, t: Term) -> list[tuple[Term, str]]:
    out = []
    if not isinstance(t, App):
        return out
    h = t.symbol
    if pool.x_identity is not None and h == pool.x_identity:
        out.append((t.children[0], "a"))
    if pool.y_identity is not None and h == pool.y_identity:
        out.append((t.children[0], "b"))
    for k, child in enumerate(t.children):
        if not isinstance(child, App):
            continue
        f = child.symbol
        if f.factor != h.factor:
            continue
        hit = pool.composite(h, k + 1, f)
        if hit is None:
            continue
        ell, sigma = hit
        args = t.children[:k] + child.children + t.children[k + 1:]
        inv = invert(sigma)
        reduct = App(ell, tuple(args[inv[i]] for i in range(len(args))))
        out.append((reduct, "c" if h.factor == "X" else "d"))
    return out


def _local_tensor(pool: SymbolPool, t: Term) -> list[tuple[Term, str]]:
    if pool.z is None:
        raise RewriteError("tensor mode needs a designated nullary z in Y")
    out = []
    if not isinstance(t, App):
        return out
    h = t.symbol
    z = pool.z
    m = h.arity
    if m > 0 and all(_is_z_call(pool, c) for c in t.children):
        out.append((App(z, ()), "c"))
    if m == 0 and h != z:
        out.append((App(z, ()), "d"))
    if h.factor == "X" and m > 0:
        z_pos = [i for i, c in enumerate(t.children) if _is_z_call(pool, c)]
        rest = [i for i in range(m) if i not in z_pos]
        if rest:
            heads = {t.children[i].symbol if isinstance(t.children[i], App) else None
                     for i in rest}
            if len(heads) == 1:
                f = heads.pop()
                if f is not None and f.factor == "Y" and f.arity > 0:
                    n = f.arity
                    cols = []
                    for j in range(n):
                        row = tuple(App(z, ()) if i in z_pos
                                    else t.children[i].children[j]
                                    for i in range(m))
                        cols.append(App(h, row))
                    out.append((App(f, tuple(cols)), "a" if not z_pos else "b"))
    return out


def one_step_reducts(pool: SymbolPool, t: Term, mode: RewriteMode
                     ) -> list[tuple[Term, str, Path]]:
    """Every legal single substitution at every position, exactly once."""
    local = _local_coproduct if mode.kind == "coproduct" else _local_tensor
    out = []

    def walk(s: Term, path: Path) -> None:
        for reduct, rule in local(pool, s):
            out.append((replace_at(t, path, reduct), rule, path))
        if isinstance(s, App):
            for i, c in enumerate(s.children):
                walk(c, path + (i,))

    walk(t, ())
    return out


def complexity(pool: SymbolPool, t: Term, mode: RewriteMode) -> int:
    if mode.kind == "coproduct":
        return symbol_count(t)
    z = pool.z

    def walk(s: Term, depth: int) -> int:
        if isinstance(s, Var):
            return 0
        total = 0
        if s.symbol != z:
            total += 1
        if s.symbol.factor == "Y":
            total += depth * s.symbol.arity
        return total + sum(walk(c, depth + 1) for c in s.children)

    return walk(t, 0)


def is_reduced(pool: SymbolPool, t: Term, mode: RewriteMode) -> bool:
    return not one_step_reducts(pool, t, mode)


def _pick_leftmost_innermost(reducts) -> int:
    paths = [r[2] for r in reducts]
    best = None
    for i, p in enumerate(paths):
        inner = not any(q != p and q[:len(p)] == p for q in paths)
        if inner and (best is None or p < paths[best]):
            best = i
    return best


def reduce_term(pool: SymbolPool, t: Term, mode: RewriteMode,
                strategy: str = "leftmost_innermost",
                seed: Optional[int] = None) -> tuple[Term, list[Step]]:
    """Reduce to a normal form; the step budget is the initial complexity,
    which suffices because every step strictly decreases it."""
    budget = complexity(pool, t, mode)
    rng = random.Random(seed) if strategy == "random" else None
    trace: list[Step] = []
    current = t
    for _ in range(budget + 1):
        reducts = one_step_reducts(pool, current, mode)
        if not reducts:
            return current, trace
        if rng is None:
            idx = _pick_leftmost_innermost(reducts)
        else:
            idx = rng.randrange(len(reducts))
        after, rule, path = reducts[idx]
        if complexity(pool, after, mode) >= complexity(pool, current, mode):
            raise RewriteError(
                f"rule {rule} failed to decrease complexity at {path}")
        trace.append(Step(rule, path, current, after))
        current = after
    raise RewriteError("step budget exceeded; descent is broken")


# ---------------------------------------------------------------------------
# fuzzing and the confluence/equivariance criteria


def fuzz_term(pool: SymbolPool, rng: random.Random, max_symbols: int,
              symbols: Optional[Sequence[OpSymbol]] = None) -> Term:
    """Random operadic term with at most max_symbols operation symbols.

    Grows an arity-respecting tree against a shared symbol budget, then
    assigns the variables to the leaf slots through a random permutation.
    The optional symbol list restricts which generators the fuzzer draws
    from (the pool may hold extra symbols only reachable by reduction).
    """
    draw = tuple(symbols) if symbols is not None else pool.symbols
    remaining = rng.randint(1, max_symbols)
    leaves = 0

    def grow() -> Term:
        nonlocal remaining, leaves
        if remaining <= 0 or rng.random() < 0.12:
            leaves += 1
            return Var(-leaves)  # placeholder, renumbered below
        sym = rng.choice(draw)
        remaining -= 1
        return App(sym, tuple(grow() for _ in range(sym.arity)))

    t = grow()
    perm = list(range(1, leaves + 1))
    rng.shuffle(perm)

    def renumber(s: Term) -> Term:
        if isinstance(s, Var):
            return Var(perm[-s.index - 1])
        return App(s.symbol, tuple(renumber(c) for c in s.children))

    return renumber(t)


def random_perm(rng: random.Random, n: int) -> Perm:
    out = list(range(n))
    rng.shuffle(out)
    return tuple(out)


@dataclass
class CriterionReport:
    name: str
    checked: int = 0
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        out = {"criterion": self.name, "checked": self.checked,
               "passed": self.passed}
        if self.counterexample:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class CriteriaReport:
    reports: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "criteria": [r.to_json() for r in self.reports]}


def _descendants(pool: SymbolPool, t: Term, mode: RewriteMode,
                 cache: dict) -> frozenset:
    if t in cache:
        return cache[t]
    seen = {t}
    for reduct, _, _ in one_step_reducts(pool, t, mode):
        seen |= _descendants(pool, reduct, mode, cache)
    out = frozenset(seen)
    cache[t] = out
    return out


def check_criteria(pool: SymbolPool, mode: RewriteMode, count: int = 200,
                   seed: int = 0, max_symbols: int = 8,
                   symbols: Optional[Sequence[OpSymbol]] = None
                   ) -> CriteriaReport:
    """Fuzzed verification of the four rewriting criteria.

    (i) every pair of one-step reducts rejoins; (ii) reduction commutes
    with the group and symmetric actions; (iii)/(iv) reduction is a
    congruence for composition on the outer and inner argument.
    """
    rng = random.Random(seed)
    joins = CriterionReport("local joinability")
    equiv = CriterionReport("equivariance of reduction")
    outer = CriterionReport("congruence in the outer slot")
    inner = CriterionReport("congruence in the inner slots")
    cache: dict = {}
    for _ in range(count):
        t = fuzz_term(pool, rng, max_symbols, symbols)
        reducts = one_step_reducts(pool, t, mode)
        for a in range(len(reducts)):
            for b in range(a + 1, len(reducts)):
                joins.checked += 1
                da = _descendants(pool, reducts[a][0], mode, cache)
                db = _descendants(pool, reducts[b][0], mode, cache)
                if not (da & db):
                    joins.counterexample = joins.counterexample or {
                        "term": format_term(t),
                        "left": format_term(reducts[a][0]),
                        "right": format_term(reducts[b][0])}
        n = term_arity(t)
        g = rng.randrange(pool.group.order)
        sigma = random_perm(rng, n)
        moved = act_g(pool, g, act_sigma(t, sigma))
        lhs, _ = reduce_term(pool, moved, mode)
        nf, _ = reduce_term(pool, t, mode)
        rhs = act_g(pool, g, act_sigma(nf, sigma))
        equiv.checked += 1
        if lhs != rhs:
            equiv.counterexample = equiv.counterexample or {
                "term": format_term(t), "g": g, "sigma": list(sigma),
                "reduced then moved": format_term(rhs),
                "moved then reduced": format_term(lhs)}
        args = [fuzz_term(pool, rng, 3, symbols) for _ in range(n)]
        whole = gamma(t, args)
        nf_whole, _ = reduce_term(pool, whole, mode)
        outer.checked += 1
        via_outer, _ = reduce_term(pool, gamma(nf, args), mode)
        if nf_whole != via_outer:
            outer.counterexample = outer.counterexample or {
                "term": format_term(t), "whole": format_term(nf_whole),
                "outer-first": format_term(via_outer)}
        inner.checked += 1
        reduced_args = [reduce_term(pool, s, mode)[0] for s in args]
        via_inner, _ = reduce_term(pool, gamma(t, reduced_args), mode)
        if nf_whole != via_inner:
            inner.counterexample = inner.counterexample or {
                "term": format_term(t), "whole": format_term(nf_whole),
                "inner-first": format_term(via_inner)}
    return CriteriaReport([joins, equiv, outer, inner])


# ---------------------------------------------------------------------------
# pools for the standard factors


def as_pool(G: Group, max_arity: int, factor: str = "X",
            other: Optional["SymbolPool"] = None) -> SymbolPool:
    """A slice of the associativity operad: one symbol per arity, trivial
    group action, full composite table within the slice."""
    symbols = [OpSymbol(factor, n, n) for n in range(max_arity + 1)]
    by_arity = {s.arity: s for s in symbols}
    g_action = {(s, g): (s, identity_perm(s.arity))
                for s in symbols for g in G.elements()}
    comp = {}
    for h in symbols:
        for f in symbols:
            target = h.arity + f.arity - 1
            if h.arity == 0 or target > max_arity:
                continue
            for k in range(1, h.arity + 1):
                comp[(h, k, f)] = (by_arity[target], identity_perm(target))
    identity = by_arity.get(1)
    return SymbolPool(G, symbols, g_action,
                      x_identity=identity if factor == "X" else None,
                      y_identity=identity if factor == "Y" else None,
                      compose_table=comp)


def marked_symbols(G: Group, factor: str, start: int = 0
                   ) -> tuple[list[OpSymbol], dict]:
    """The marked nullary and binary generators, G-fixed."""
    u = OpSymbol(factor, start, 0)
    p = OpSymbol(factor, start + 1, 2)
    action = {(s, g): (s, identity_perm(s.arity))
              for s in (u, p) for g in G.elements()}
    return [u, p], action


def orbit_symbols(orb: GraphSubgroup, factor: str, start: int
                  ) -> tuple[list[OpSymbol], dict, dict]:
    """Sigma-orbit representative symbols of one free orbit.

    There is one symbol per coset aH; the group action table follows
    g . f_aH = f_gaH . sigma_T(b^-1 g a) with b the coset representative.
    """
    G = orb.group
    H = orb.subgroup
    cosets = []
    seen = set()
    for a in G.elements():
        cs = frozenset(G.mul[a][h] for h in H.members)
        if cs not in seen:
            seen.add(cs)
            cosets.append(cs)
    cosets.sort(key=min)
    reps = [min(cs) for cs in cosets]
    rep_of = {}
    for cs in cosets:
        for a in cs:
            rep_of[a] = min(cs)
    symbols = {r: OpSymbol(factor, start + i, orb.arity)
               for i, r in enumerate(reps)}
    action = {}
    for r in reps:
        sym = symbols[r]
        for g in G.elements():
            ga = G.mul[g][r]
            b = rep_of[ga]
            h = G.mul[G.inv[b]][ga]
            action[(sym, g)] = (symbols[b], orb.hset.act_of(h))
    base = {orb: symbols[rep_of[0]]}
    return list(symbols.values()), action, base


def pool_from_free_models(S, T) -> tuple[SymbolPool, dict, dict]:
    """Pool for F(S') u F(T'): marked generators plus the two factors'
    orbit symbols; z is the Y-side marked constant.

    Returns the pool and, per factor, the map from each orbit to its
    basepoint symbol (the representative of the identity coset).
    """
    if S.group != T.group:
        raise RewriteError("factors live over different groups")
    G = S.group
    symbols = []
    action = {}
    base_x = {}
    base_y = {}
    for factor, seq, base in (("X", S, base_x), ("Y", T, base_y)):
        marked, marked_action = marked_symbols(G, factor)
        symbols.extend(marked)
        action.update(marked_action)
        next_id = 2
        for n in sorted(seq.levels):
            for orb in seq.levels[n]:
                syms, acts, b = orbit_symbols(orb, factor, next_id)
                next_id += len(syms)
                symbols.extend(syms)
                action.update(acts)
                base.update(b)
    z = next(s for s in symbols if s.factor == "Y" and s.arity == 0)
    pool = SymbolPool(G, symbols, action, z=z)
    return pool, base_x, base_y


# ---------------------------------------------------------------------------
# fixed-point structure of terms and admissibility witnesses


def fixed_perm(pool: SymbolPool, t: Term, g: int) -> Optional[Perm]:
    """The permutation pi with g * t = t . pi, if one exists."""
    moved = act_g(pool, g, t)
    n = term_arity(t)
    pi = [None] * n

    def walk(a: Term, b: Term) -> bool:
        if isinstance(a, Var) != isinstance(b, Var):
            return False
        if isinstance(a, Var):
            # b carries x_j at the position where t . pi has x_{pi^-1 i}
            j = b.index - 1
            i = a.index - 1
            if not (0 <= i < n and 0 <= j < n):
                return False
            if pi[j] is not None and pi[j] != i:
                return False
            pi[j] = i
            return True
        if a.symbol != b.symbol:
            return False
        return all(walk(ca, cb) for ca, cb in zip(a.children, b.children))

    if not walk(t, moved):
        return None
    if any(v is None for v in pi):
        return None
    return tuple(pi)


def fixed_structure(pool: SymbolPool, t: Term, H: Subgroup
                    ) -> Optional[FiniteGSet]:
    """The H-set on the variable slots of t exhibited by its fixedness
    under the graph of that action, or None if t is not fixed."""
    n = term_arity(t)
    rows = []
    for h in H.members:
        pi = fixed_perm(pool, t, h)
        if pi is None:
            return None
        rows.append(pi)
    try:
        return FiniteGSet(H, n, tuple(rows))
    except GroupError:
        return None


@dataclass
class Witness:
    """A term fixed by the graph subgroup of one admissible transfer."""

    term: Term
    subgroup: Subgroup
    structure: FiniteGSet

    @property
    def graph(self) -> GraphSubgroup:
        return graph_subgroup(self.subgroup.group, self.subgroup, self.structure)


def _plug_orbit(pool: SymbolPool, w: Witness, positions: Sequence[int],
                filler: OpSymbol) -> Term:
    """Keep variables on the listed slots, plug the marked constant into
    the rest; variables are renumbered in slot order."""
    keep = set(positions)
    args = [Var(1) if q in keep else App(filler, ())
            for q in range(w.structure.size)]
    return gamma(w.term, args)


def _compose_witnesses(pool: SymbolPool, inner: Witness, outer: Witness
                       ) -> Term:
    """Composite witness for transitivity: plug translated copies of the
    inner witness into the slots of the outer one.

    The outer structure is a transitive H-set with point stabilizers
    conjugate to the middle subgroup; each slot gets the inner witness
    translated by an element carrying the basepoint to that slot.
    """
    struct = outer.structure
    H = outer.subgroup
    G = H.group
    J = inner.subgroup
    j_members = J.member_set
    base = next(p for p in range(struct.size)
                if struct.stabilizer(p).member_set == j_members)
    args = []
    for q in range(struct.size):
        h = next(h for h in H.members if struct.act_of(h)[base] == q)
        args.append(act_g(pool, h, inner.term))
    return gamma(outer.term, args)


class WitnessTable:
    """Fixed-term witnesses for every pair of a generated transfer system.

    Mirrors the closure computation of the transfer system itself, but
    carries terms along: conjugation translates, restriction plugs the
    marked constant into the complementary orbits, transitivity composes.
    Every constructed term is re-verified to be fixed before it is kept.
    """

    def __init__(self, pool: SymbolPool, symseq, factor: str, base: dict):
        from .operads import symseq_transfer

        self.pool = pool
        self.group = symseq.group
        self.lat = lattice_of(self.group)
        self.factor = factor
        self.filler = next(s for s in pool.symbols
                           if s.factor == factor and s.arity == 0)
        self.transfer = symseq_transfer(symseq)
        self.witnesses: dict[tuple[int, int], Witness] = {}
        for i in range(self.lat.count):
            self._insert(i, i, Var(1))
        for n in sorted(symseq.levels):
            for orb in symseq.levels[n]:
                sym = base[orb]
                t0 = App(sym, tuple(Var(i + 1) for i in range(n)))
                w0 = self._checked(self.lat.id_of(orb.subgroup), t0)
                for orbit, stab in orb.hset.orbit_stabilizers():
                    plugged = _plug_orbit(self.pool, w0, orbit, self.filler)
                    self._insert(self.lat.id_of(stab),
                                 self.lat.id_of(orb.subgroup), plugged)
        self._saturate()
        missing = {p for p in self.transfer.pairs()} - set(self.witnesses)
        if missing:
            raise RewriteError(
                f"witness saturation missed transfer pairs {sorted(missing)}")

    def _checked(self, h_id: int, term: Term) -> Witness:
        H = self.lat.subgroups[h_id]
        struct = fixed_structure(self.pool, term, H)
        if struct is None:
            raise RewriteError(
                f"constructed term is not fixed under {H}: {format_term(term)}")
        return Witness(term, H, struct)

    def _insert(self, k_id: int, h_id: int, term: Term) -> bool:
        if (k_id, h_id) in self.witnesses:
            return False
        w = self._checked(h_id, term)
        # sanity: the structure must be the transitive set on H/K
        expected = coset_hset(self.lat.subgroups[h_id], self.lat.subgroups[k_id])
        if not are_isomorphic(w.structure, expected):
            raise RewriteError(
                f"witness structure mismatch for pair ({k_id},{h_id})")
        self.witnesses[(k_id, h_id)] = w
        return True

    def _saturate(self) -> None:
        lat = self.lat
        changed = True
        while changed:
            changed = False
            for (i, j), w in list(self.witnesses.items()):
                for g in self.group.elements():
                    ci, cj = lat.conj_table[g][i], lat.conj_table[g][j]
                    if (ci, cj) not in self.witnesses:
                        changed |= self._insert(ci, cj,
                                                act_g(self.pool, g, w.term))
                for l in lat.ids_below(j):
                    target = (lat.meet_table[l][i], l)
                    if target in self.witnesses:
                        continue
                    L = lat.subgroups[l]
                    base = next(p for p in range(w.structure.size)
                                if lat.id_of(w.structure.stabilizer(p)) == i)
                    orbit = w.structure.restrict(L).orbits()
                    l_orbit = next(o for o in orbit if base in o)
                    plugged = _plug_orbit(self.pool,
                                          Witness(w.term, L,
                                                  w.structure.restrict(L)),
                                          l_orbit, self.filler)
                    changed |= self._insert(target[0], target[1], plugged)
            for (i, j1), w1 in list(self.witnesses.items()):
                for (j2, k), w2 in list(self.witnesses.items()):
                    if j1 != j2 or (i, k) in self.witnesses or i == j1 or j2 == k:
                        continue
                    term = _compose_witnesses(self.pool, w1, w2)
                    changed |= self._insert(i, k, term)

    def witness(self, k_id: int, h_id: int) -> Witness:
        return self.witnesses[(k_id, h_id)]


@dataclass
class AdmissibilityWitness:
    pair: tuple[int, int]
    term: Term
    subgroup: Subgroup
    structure: FiniteGSet
    normal_form: Term
    mode: str
    verified: bool

    def to_json(self) -> dict:
        return {"pair": list(self.pair), "term": format_term(self.term),
                "normal_form": format_term(self.normal_form),
                "mode": self.mode, "verified": self.verified}


class WitnessFactory:
    """Shared pool and factor witness tables for one pair of generator
    sequences; hands out verified join witnesses pair by pair."""

    def __init__(self, S, T):
        from .transfer import join

        self.pool, base_x, base_y = pool_from_free_models(S, T)
        self.lat = lattice_of(S.group)
        self.table_x = WitnessTable(self.pool, S, "X", base_x)
        self.table_y = WitnessTable(self.pool, T, "Y", base_y)
        self.join = join(self.table_x.transfer, self.table_y.transfer)

    def _chain(self, k_id: int, h_id: int):
        parents: dict[int, Optional[tuple]] = {k_id: None}
        frontier = [k_id]
        while frontier and h_id not in parents:
            nxt = []
            for cur in frontier:
                for table in (self.table_x, self.table_y):
                    for (a, b) in table.witnesses:
                        if a == cur and b not in parents:
                            parents[b] = (cur, table)
                            nxt.append(b)
            frontier = nxt
        if h_id not in parents:
            raise RewriteError(
                f"no factorization chain found for ({k_id},{h_id}); "
                "join computation is inconsistent")
        chain = []
        node = h_id
        while parents[node] is not None:
            prev, table = parents[node]
            chain.append((prev, node, table))
            node = prev
        chain.reverse()
        return chain

    def witness(self, k_id: int, h_id: int, mode: RewriteMode
                ) -> AdmissibilityWitness:
        if not self.join.has(k_id, h_id):
            raise RewriteError(f"pair ({k_id},{h_id}) is not in the join")
        chain = self._chain(k_id, h_id)
        if not chain:
            H = self.lat.subgroups[h_id]
            witness = Witness(Var(1), H, fixed_structure(self.pool, Var(1), H))
        else:
            first = chain[0]
            witness = first[2].witness(first[0], first[1])
            for prev, node, table in chain[1:]:
                outer = table.witness(prev, node)
                term = _compose_witnesses(self.pool, witness, outer)
                H = self.lat.subgroups[node]
                struct = fixed_structure(self.pool, term, H)
                if struct is None:
                    raise RewriteError("chain composite lost its fixedness")
                witness = Witness(term, H, struct)
        nf, _ = reduce_term(self.pool, witness.term, mode)
        nf_struct = fixed_structure(self.pool, nf, witness.subgroup)
        verified = (nf_struct is not None
                    and tuple(nf_struct.act) == tuple(witness.structure.act))
        return AdmissibilityWitness((k_id, h_id), witness.term,
                                    witness.subgroup, witness.structure,
                                    nf, mode.kind, verified)


def admissibility_witness(S, T, k_id: int, h_id: int, mode: RewriteMode
                          ) -> AdmissibilityWitness:
    """A fixed term in the combined free operad witnessing one transfer of
    the join, reduced in the requested mode and re-checked after reduction.

    The pair must lie in the join of the two generated transfer systems;
    the witness composes factor witnesses along a chain through the union
    relation, which exists exactly when the join contains the pair.
    """
    return WitnessFactory(S, T).witness(k_id, h_id, mode)

