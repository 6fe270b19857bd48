"""Finite groups as multiplication tables.

Everything downstream (residuals, radicals, the semidirect counterexample)
consumes this representation.  Tables are validated in full at construction:
Latin-square rows and columns, associativity over all triples, a unique
two-sided identity, two-sided inverses.  Orders stay desk-scale, so the
machinery is deliberately brute force: subgroup enumeration by closure
saturation, automorphisms by generator-image backtracking, subnormality by
iterated normal closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapExceededError, InternalCheckError, ParseError
from .transgroup import TransGroup
from .transformation import compose

__all__ = [
    "CayleyGroup",
    "Subgroup",
    "TABLE_CAP",
    "SUBGROUP_ENUM_CAP",
    "AUTOMORPHISM_CAP",
    "from_transgroup",
    "subgroup_generated",
    "induced_group",
    "is_normal",
    "normal_closure",
    "subnormal_depth",
    "quotient_group",
    "product_set",
    "all_subgroups",
    "automorphism_group",
    "is_characteristic",
    "are_isomorphic",
    "group_dump",
    "group_load",
]

TABLE_CAP = 128
SUBGROUP_ENUM_CAP = 48
AUTOMORPHISM_CAP = 24


@dataclass(frozen=True, eq=False)
class CayleyGroup:
    """A finite group given by its full multiplication table.

    table[i][j] is the index of g_i * g_j.  Instances compare and hash by
    identity so they can key caches; compare tables directly when structural
    equality is meant.
    """

    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    identity: int
    inverses: tuple[int, ...]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conjugate(self, x: int, a: int) -> int:
        """x * a * x^-1."""
        return self.table[self.table[x][a]][self.inverses[x]]

    def element_order(self, a: int) -> int:
        k, acc = 1, a
        while acc != self.identity:
            acc = self.table[acc][a]
            k += 1
        return k

    @classmethod
    def from_table(
        cls,
        table: Sequence[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        name: str = "",
    ) -> CayleyGroup:
        """Validate a table and build the group.

        Checks, in order: size within TABLE_CAP, squareness, index range,
        Latin rows and columns, associativity over all triples, a unique
        two-sided identity, and two-sided inverses for every element.
        """
        order = len(table)
        if order == 0:
            raise ValueError("a group table cannot be empty")
        if order > TABLE_CAP:
            raise CapExceededError(
                f"table of order {order} exceeds cap {TABLE_CAP}"
            )
        arr = np.asarray(table, dtype=np.int64)
        if arr.shape != (order, order):
            raise ValueError(f"table must be {order}x{order}, got {arr.shape}")
        if arr.min() < 0 or arr.max() >= order:
            raise ValueError("table entries must be element indices")
        want = np.arange(order)
        if not (np.sort(arr, axis=1) == want).all():
            raise ValueError("some row is not a permutation of the elements")
        if not (np.sort(arr.T, axis=1) == want).all():
            raise ValueError("some column is not a permutation of the elements")
        if not np.array_equal(arr[arr, :], arr[:, arr]):
            raise ValueError("multiplication is not associative")

        ident = [i for i in range(order) if (arr[i] == want).all() and (arr[:, i] == want).all()]
        if len(ident) != 1:
            raise ValueError(f"expected one two-sided identity, found {len(ident)}")
        e = ident[0]
        inverses = []
        for i in range(order):
            js = [j for j in range(order) if arr[i][j] == e and arr[j][i] == e]
            if len(js) != 1:
                raise ValueError(f"element {i} lacks a unique two-sided inverse")
            inverses.append(js[0])

        if labels is None:
            labels = tuple(f"g{i}" for i in range(order))
        else:
            labels = tuple(str(s) for s in labels)
            if len(labels) != order:
                raise ValueError(f"need {order} labels, got {len(labels)}")
        return cls(
            table=tuple(tuple(int(v) for v in row) for row in arr),
            labels=labels,
            identity=e,
            inverses=tuple(inverses),
            name=name,
        )


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a CayleyGroup, held as a sorted index tuple."""

    parent: CayleyGroup
    members: tuple[int, ...]
    _member_set: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        g = self.parent
        mem = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", mem)
        object.__setattr__(self, "_member_set", frozenset(mem))
        if not mem:
            raise ValueError("a subgroup cannot be empty")
        if mem[0] < 0 or mem[-1] >= g.order:
            raise ValueError("subgroup members must be element indices")
        s = self._member_set
        if g.identity not in s:
            raise ValueError("subgroup must contain the identity")
        for a in mem:
            if g.inverses[a] not in s:
                raise ValueError(f"subgroup not closed under inverse of {a}")
            row = g.table[a]
            for b in mem:
                if row[b] not in s:
                    raise ValueError(f"subgroup not closed at {a}*{b}")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self._member_set

    def member_set(self) -> frozenset[int]:
        return self._member_set


def from_transgroup(g: TransGroup) -> CayleyGroup:
    """Transport a verified transformation group to its abstract table."""
    index = {f: i for i, f in enumerate(g.elements)}
    table = [
        [index[compose(f, h)] for h in g.elements] for f in g.elements
    ]
    labels = [str(f) for f in g.elements]
    return CayleyGroup.from_table(table, labels, name=f"transgroup(n={g.n})")


def _closure_set(g: CayleyGroup, seed: Iterable[int]) -> frozenset[int]:
    """Multiplication closure of seed plus the identity.

    In a finite group, closure under products alone already yields a
    subgroup (powers of each element reach its inverse).
    """
    members: set[int] = set(seed)
    members.add(g.identity)
    frontier = list(members)
    table = g.table
    while frontier:
        fresh: list[int] = []
        for a in frontier:
            for b in list(members):
                for c in (table[a][b], table[b][a]):
                    if c not in members:
                        members.add(c)
                        fresh.append(c)
        frontier = fresh
    return frozenset(members)


def subgroup_generated(g: CayleyGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the seed elements."""
    return Subgroup(g, tuple(_closure_set(g, seeds)))


@lru_cache(maxsize=None)
def induced_group(h: Subgroup) -> tuple[CayleyGroup, tuple[int, ...]]:
    """A subgroup as a group in its own right.

    Returns the child group and the index map child -> parent.  Cached so
    repeated calls hand back the same object, which in turn lets the
    subgroup-enumeration caches keyed by group identity hit.
    """
    g = h.parent
    to_parent = h.members
    to_child = {p: c for c, p in enumerate(to_parent)}
    table = [
        [to_child[g.table[a][b]] for b in to_parent] for a in to_parent
    ]
    labels = [g.labels[p] for p in to_parent]
    child = CayleyGroup.from_table(
        table, labels, name=f"{g.name}<{h.order}>" if g.name else f"<{h.order}>"
    )
    return child, to_parent


def is_normal(g: CayleyGroup, h: Subgroup) -> bool:
    """True iff x h x^-1 = h for every x."""
    s = h.member_set()
    return all(
        g.conjugate(x, a) in s for x in range(g.order) for a in h.members
    )


def normal_closure(g: CayleyGroup, h: Subgroup) -> Subgroup:
    """Smallest normal subgroup of g containing h."""
    conj = {
        g.conjugate(x, a) for x in range(g.order) for a in h.members
    }
    return subgroup_generated(g, conj)


def _normal_closure_within(
    g: CayleyGroup, ambient: frozenset[int], target: frozenset[int]
) -> frozenset[int]:
    """Normal closure of target inside the subgroup ambient of g."""
    conj = {g.conjugate(x, a) for x in ambient for a in target}
    return _closure_set(g, conj)


def subnormal_depth(g: CayleyGroup, h: Subgroup) -> Optional[int]:
    """Chain length G = N_0 > N_1 > ... > h where each step takes the
    normal closure of h inside the previous term; None if the chain
    stabilizes strictly above h (h is not subnormal)."""
    ambient = frozenset(range(g.order))
    target = h.member_set()
    depth = 0
    while ambient != target:
        nxt = _normal_closure_within(g, ambient, target)
        if nxt == ambient:
            return None
        ambient = nxt
        depth += 1
    return depth


def quotient_group(
    g: CayleyGroup, n: Subgroup
) -> tuple[CayleyGroup, tuple[int, ...]]:
    """The coset group g/n plus the projection element -> coset index.

    The coset table is built from representatives and then re-verified over
    every element pair, so a representative-dependent product cannot slip
    through.
    """
    if not is_normal(g, n):
        raise ValueError("quotient requires a normal subgroup")
    coset_of = [-1] * g.order
    reps: list[int] = []
    for x in range(g.order):
        if coset_of[x] < 0:
            idx = len(reps)
            reps.append(x)
            for m in n.members:
                coset_of[g.table[x][m]] = idx
    q = len(reps)
    qtable = [
        [coset_of[g.table[reps[i]][reps[j]]] for j in range(q)]
        for i in range(q)
    ]
    for a in range(g.order):
        ca = coset_of[a]
        for b in range(g.order):
            if qtable[ca][coset_of[b]] != coset_of[g.table[a][b]]:
                raise InternalCheckError(
                    f"coset product at ({a},{b}) depends on representatives"
                )
    labels = [f"[{g.labels[r]}]" for r in reps]
    qname = f"{g.name}/N{n.order}" if g.name else f"quotient/N{n.order}"
    return CayleyGroup.from_table(qtable, labels, name=qname), tuple(coset_of)


def product_set(
    g: CayleyGroup, u: Subgroup, v: Subgroup
) -> tuple[tuple[int, ...], bool]:
    """{a*b : a in u, b in v}, sorted, plus a flag saying if it is a subgroup."""
    prods = {g.table[a][b] for a in u.members for b in v.members}
    is_sub = g.identity in prods and all(
        g.table[a][b] in prods and g.inverses[a] in prods
        for a in prods
        for b in prods
    )
    return tuple(sorted(prods)), is_sub


def all_subgroups(g: CayleyGroup, cap: int = SUBGROUP_ENUM_CAP) -> tuple[Subgroup, ...]:
    """Every subgroup of g, deduplicated, sorted by (order, members)."""
    sets = _subgroup_sets(g, cap)
    return tuple(
        Subgroup(g, tuple(sorted(s)))
        for s in sorted(sets, key=lambda s: (len(s), sorted(s)))
    )


@lru_cache(maxsize=None)
def _subgroup_sets(g: CayleyGroup, cap: int) -> frozenset[frozenset[int]]:
    if g.order > cap:
        raise CapExceededError(
            f"subgroup enumeration needs order <= {cap}, got {g.order}"
        )
    trivial = frozenset({g.identity})
    found: set[frozenset[int]] = {trivial}
    frontier = [trivial]
    # every subgroup arises from a smaller one by adjoining one element,
    # so closure-extension from the trivial subgroup finds them all
    while frontier:
        base = frontier.pop()
        for a in range(g.order):
            if a in base:
                continue
            ext = _closure_set(g, base | {a})
            if ext not in found:
                found.add(ext)
                frontier.append(ext)
    return frozenset(found)


def _generating_sequence(g: CayleyGroup) -> tuple[int, ...]:
    """A short generating sequence, grown greedily from the identity."""
    have = frozenset({g.identity})
    gens: list[int] = []
    while len(have) < g.order:
        a = next(i for i in range(g.order) if i not in have)
        gens.append(a)
        have = _closure_set(g, have | {a})
    return tuple(gens)


def _extend_partial(
    src: CayleyGroup,
    dst: CayleyGroup,
    known: dict[int, int],
    a: int,
    b: int,
) -> Optional[dict[int, int]]:
    """Extend a partial homomorphism (domain a subgroup) by a -> b.

    Closes the domain under products; returns None on any conflict.
    """
    out = dict(known)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        if x in out:
            if out[x] != y:
                return None
            continue
        out[x] = y
        for u, v in list(out.items()):
            queue.append((src.table[u][x], dst.table[v][y]))
            queue.append((src.table[x][u], dst.table[y][v]))
    return out


def _isomorphisms(
    src: CayleyGroup, dst: CayleyGroup, find_all: bool
) -> list[tuple[int, ...]]:
    """Bijective homomorphisms src -> dst by backtracking on generator images."""
    if src.order != dst.order:
        return []
    src_orders = [src.element_order(i) for i in range(src.order)]
    dst_orders = [dst.element_order(i) for i in range(dst.order)]
    if sorted(src_orders) != sorted(dst_orders):
        return []
    gens = _generating_sequence(src)
    found: list[tuple[int, ...]] = []

    def rec(known: dict[int, int], k: int) -> bool:
        if k == len(gens):
            if len(known) != src.order:
                raise InternalCheckError("generators failed to cover the group")
            phi = tuple(known[i] for i in range(src.order))
            if len(set(phi)) != src.order:
                return False
            # full verification; the closure construction should make this
            # redundant, but an automorphism list must not contain junk
            for i in range(src.order):
                for j in range(src.order):
                    if phi[src.table[i][j]] != dst.table[phi[i]][phi[j]]:
                        return False
            found.append(phi)
            return not find_all
        a = gens[k]
        for b in range(dst.order):
            if dst_orders[b] != src_orders[a]:
                continue
            ext = _extend_partial(src, dst, known, a, b)
            if ext is not None and rec(ext, k + 1):
                return True
        return False

    rec({src.identity: dst.identity}, 0)
    return found


@lru_cache(maxsize=None)
def _automorphisms_cached(g: CayleyGroup, cap: int) -> tuple[tuple[int, ...], ...]:
    if g.order > cap:
        raise CapExceededError(
            f"automorphism search needs order <= {cap}, got {g.order}"
        )
    autos = _isomorphisms(g, g, find_all=True)
    ident = tuple(range(g.order))
    if ident not in autos:
        raise InternalCheckError("identity automorphism missing")
    return tuple(sorted(autos))


def automorphism_group(
    g: CayleyGroup, cap: int = AUTOMORPHISM_CAP
) -> tuple[tuple[int, ...], ...]:
    """All automorphisms of g as index permutations, sorted."""
    return _automorphisms_cached(g, cap)


def is_characteristic(
    g: CayleyGroup, h: Subgroup, cap: int = AUTOMORPHISM_CAP
) -> bool:
    """True iff every automorphism of g maps h onto itself."""
    s = h.member_set()
    return all(
        frozenset(phi[a] for a in h.members) == s
        for phi in automorphism_group(g, cap)
    )


def are_isomorphic(g1: CayleyGroup, g2: CayleyGroup) -> bool:
    """Brute-force isomorphism test for desk-scale tables."""
    if g1.order > SUBGROUP_ENUM_CAP or g2.order > SUBGROUP_ENUM_CAP:
        raise CapExceededError(
            f"isomorphism search capped at order {SUBGROUP_ENUM_CAP}"
        )
    return bool(_isomorphisms(g1, g2, find_all=False))


def group_dump(g: CayleyGroup) -> dict:
    """The JSON table dump: order, labels, table."""
    return {
        "order": g.order,
        "labels": list(g.labels),
        "table": [list(row) for row in g.table],
    }


def group_load(data: dict) -> CayleyGroup:
    """Rebuild a group from a dump, re-running full validation."""
    if not isinstance(data, dict):
        raise ParseError("group dump must be a JSON object")
    missing = {"order", "labels", "table"} - set(data)
    if missing:
        raise ParseError(f"group dump missing keys: {sorted(missing)}")
    table, labels = data["table"], data["labels"]
    try:
        g = CayleyGroup.from_table(table, labels, name=str(data.get("name", "")))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad group dump: {exc}") from None
    if g.order != data["order"]:
        raise ParseError(
            f"dump says order {data['order']}, table has {g.order}"
        )
    return g
