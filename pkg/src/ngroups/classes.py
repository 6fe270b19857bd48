"""Group classes and their residual/radical machinery.

A class here is a predicate on finite groups assumed closed under
subgroups, homomorphic images, and products of normal members.  Two such
classes ship: p-groups for a chosen prime, and nilpotent groups.  A third,
abelian, is deliberately NOT closed under normal products; it exists so the
test-suite can demonstrate that the closure axioms are load-bearing and the
verification harness catches their failure.

The residual of G is the smallest normal subgroup with quotient in the
class; it is computed along two independent routes (intersection of the
candidate family vs its unique minimal element) that must agree.  The
radical is the join of all normal member subgroups and must itself land in
the class; when it does not, the alarm is loud, because for a genuinely
closed class that cannot happen.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .cayley import (
    AUTOMORPHISM_CAP,
    SUBGROUP_ENUM_CAP,
    CayleyGroup,
    Subgroup,
    all_subgroups,
    induced_group,
    is_characteristic,
    is_normal,
    product_set,
    quotient_group,
    subgroup_generated,
    subnormal_depth,
)
from .errors import InternalCheckError, ParseError

__all__ = [
    "GroupClass",
    "p_group",
    "nilpotent",
    "abelian",
    "parse_class",
    "belongs",
    "subgroup_belongs",
    "verify_shp_axioms",
    "residual",
    "radical",
    "check_residual_product",
    "check_radical_product",
    "subnormal_join_in_class",
    "residual_monotone_check",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroupClass:
    """A named class of finite groups; membership depends only on the table."""

    kind: str  # "p-group" | "nilpotent" | "abelian"
    p: Optional[int] = None
    shp_assumed: bool = True

    @property
    def name(self) -> str:
        if self.kind == "p-group":
            return f"{self.p}-groups"
        return self.kind


def p_group(p: int) -> GroupClass:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return GroupClass(kind="p-group", p=p)


def nilpotent() -> GroupClass:
    return GroupClass(kind="nilpotent")


def abelian() -> GroupClass:
    """Test-only negative control; not closed under products of normal members."""
    return GroupClass(kind="abelian", shp_assumed=False)


def parse_class(text: str) -> GroupClass:
    """CLI form: "p:<prime>" or "nilpotent"."""
    text = text.strip()
    if text == "nilpotent":
        return nilpotent()
    if text.startswith("p:"):
        try:
            p = int(text[2:])
        except ValueError:
            raise ParseError(f"bad class spec: {text!r}") from None
        if not _is_prime(p):
            raise ParseError(f"class p:{p} needs a prime")
        return p_group(p)
    raise ParseError(f"unknown class {text!r}; expected p:<prime> or nilpotent")


def belongs(c: GroupClass, g: CayleyGroup, cap: int = SUBGROUP_ENUM_CAP) -> bool:
    """Class membership of a whole group.

    p-groups by order factorization; nilpotent by normality of every Sylow
    subgroup (Sylow subgroups located by order over the subgroup list);
    abelian by table symmetry.
    """
    if c.kind == "p-group":
        o = g.order
        while o % c.p == 0:
            o //= c.p
        return o == 1
    if c.kind == "abelian":
        return all(
            g.table[a][b] == g.table[b][a]
            for a in range(g.order)
            for b in range(a + 1, g.order)
        )
    if c.kind == "nilpotent":
        if g.order == 1:
            return True
        subs = all_subgroups(g, cap)
        o, p, factors = g.order, 2, {}
        while o > 1:
            while o % p == 0:
                factors[p] = factors.get(p, 0) + 1
                o //= p
            p += 1
        for q, v in factors.items():
            sylow_order = q**v
            sylows = [h for h in subs if h.order == sylow_order]
            if not sylows:
                raise InternalCheckError(
                    f"no subgroup of order {sylow_order} in a group of order {g.order}"
                )
            if not any(is_normal(g, h) for h in sylows):
                return False
        return True
    raise ValueError(f"unknown class kind {c.kind!r}")


def subgroup_belongs(c: GroupClass, h: Subgroup, cap: int = SUBGROUP_ENUM_CAP) -> bool:
    """Class membership of a subgroup, tested in its own induced table."""
    if c.kind == "p-group":
        o = h.order
        while o % c.p == 0:
            o //= c.p
        return o == 1
    child, _ = induced_group(h)
    return belongs(c, child, cap)


def _report(claim: str, status: str, witness=None, **extra) -> dict:
    out = {"claim": claim, "status": status, "witness": witness}
    out.update(extra)
    return out


@lru_cache(maxsize=None)
def _residual_set(g: CayleyGroup, c: GroupClass, cap: int) -> frozenset[int]:
    family: list[frozenset[int]] = []
    for h in all_subgroups(g, cap):
        if not is_normal(g, h):
            continue
        q, _ = quotient_group(g, h)
        if belongs(c, q, cap):
            family.append(h.member_set())
    if not family:
        raise InternalCheckError(
            "residual family empty; the trivial quotient should always qualify"
        )
    inter = frozenset.intersection(*family)
    minimal = [s for s in family if not any(t < s for t in family)]
    if len(minimal) != 1:
        raise InternalCheckError(
            f"{len(minimal)} minimal members in the residual family; "
            "the intersection route and the minimal route cannot agree"
        )
    if minimal[0] != inter or inter not in family:
        raise InternalCheckError(
            "residual routes disagree: intersection of the family is not "
            "its unique minimal member"
        )
    return inter


def residual(g: CayleyGroup, c: GroupClass, cap: int = SUBGROUP_ENUM_CAP) -> Subgroup:
    """Smallest normal subgroup with quotient in c; dual-route verified."""
    return Subgroup(g, tuple(_residual_set(g, c, cap)))


@lru_cache(maxsize=None)
def _radical_set(g: CayleyGroup, c: GroupClass, cap: int) -> frozenset[int]:
    family = [
        h
        for h in all_subgroups(g, cap)
        if is_normal(g, h) and subgroup_belongs(c, h, cap)
    ]
    union: set[int] = set()
    for h in family:
        union.update(h.members)
    join = subgroup_generated(g, union)
    if not is_normal(g, join):
        raise InternalCheckError("join of normal subgroups is not normal")
    if not subgroup_belongs(c, join, cap):
        raise InternalCheckError(
            f"join of normal {c.name}-subgroups left the class; for a class "
            "closed under normal products this is impossible"
        )
    sets = [h.member_set() for h in family]
    maximal = [s for s in sets if not any(s < t for t in sets)]
    if len(maximal) != 1 or maximal[0] != join.member_set():
        raise InternalCheckError(
            "the radical family has no unique maximal member equal to the join"
        )
    return join.member_set()


def radical(g: CayleyGroup, c: GroupClass, cap: int = SUBGROUP_ENUM_CAP) -> Subgroup:
    """Join of all normal c-subgroups; must itself be a normal c-subgroup."""
    return Subgroup(g, tuple(_radical_set(g, c, cap)))


def _lifted_residual(h: Subgroup, c: GroupClass, cap: int) -> frozenset[int]:
    """Residual of a subgroup in its own table, as parent indices."""
    child, to_parent = induced_group(h)
    return frozenset(to_parent[i] for i in _residual_set(child, c, cap))


def _lifted_radical(h: Subgroup, c: GroupClass, cap: int) -> frozenset[int]:
    child, to_parent = induced_group(h)
    return frozenset(to_parent[i] for i in _radical_set(child, c, cap))


def _product_preconditions(
    g: CayleyGroup, u: Subgroup, v: Subgroup, claim: str
) -> Optional[dict]:
    prod, _ = product_set(g, u, v)
    if len(prod) != g.order:
        return _report(
            claim,
            "precondition-failed",
            {"reason": "U*V does not cover G", "product_size": len(prod)},
        )
    if subnormal_depth(g, u) is None:
        return _report(claim, "precondition-failed", {"reason": "U is not subnormal"})
    if subnormal_depth(g, v) is None:
        return _report(claim, "precondition-failed", {"reason": "V is not subnormal"})
    return None


def check_residual_product(
    g: CayleyGroup,
    u: Subgroup,
    v: Subgroup,
    c: GroupClass,
    cap: int = SUBGROUP_ENUM_CAP,
) -> dict:
    """Does the residual of G = UV factor as (U-residual)*(V-residual)?

    Preconditions: U*V covers G and both factors are subnormal.  For a
    class closed under subgroups, quotients and normal products this
    factorization is a theorem, so "violated" indicates a bug.
    """
    claim = (
        f"{c.name}-residual of G equals the product of the factor residuals "
        "when G = UV with U, V subnormal"
    )
    pre = _product_preconditions(g, u, v, claim)
    if pre is not None:
        return pre
    rg = _residual_set(g, c, cap)
    ru = _lifted_residual(u, c, cap)
    rv = _lifted_residual(v, c, cap)
    prod = {g.table[a][b] for a in ru for b in rv}
    if prod == rg:
        return _report(
            claim,
            "holds",
            None,
            orders={"G_residual": len(rg), "U_residual": len(ru), "V_residual": len(rv)},
        )
    return _report(
        claim,
        "violated",
        {
            "G_residual": sorted(rg),
            "U_residual": sorted(ru),
            "V_residual": sorted(rv),
            "product": sorted(prod),
        },
    )


def check_radical_product(
    g: CayleyGroup,
    u: Subgroup,
    v: Subgroup,
    c: GroupClass,
    cap: int = SUBGROUP_ENUM_CAP,
) -> dict:
    """Same shape as check_residual_product, for radicals.

    No theorem backs equality here; the counterexample construction exists
    precisely to show "violated" can happen, so callers interpret the
    status themselves.
    """
    claim = (
        f"{c.name}-radical of G equals the product of the factor radicals "
        "when G = UV with U, V subnormal"
    )
    pre = _product_preconditions(g, u, v, claim)
    if pre is not None:
        return pre
    rg = _radical_set(g, c, cap)
    ru = _lifted_radical(u, c, cap)
    rv = _lifted_radical(v, c, cap)
    prod = {g.table[a][b] for a in ru for b in rv}
    if prod == rg:
        return _report(
            claim,
            "holds",
            None,
            orders={"G_radical": len(rg), "U_radical": len(ru), "V_radical": len(rv)},
        )
    return _report(
        claim,
        "violated",
        {
            "G_radical": sorted(rg),
            "U_radical": sorted(ru),
            "V_radical": sorted(rv),
            "product": sorted(prod),
        },
    )


def subnormal_join_in_class(
    g: CayleyGroup,
    a: Subgroup,
    b: Subgroup,
    c: GroupClass,
    cap: int = SUBGROUP_ENUM_CAP,
) -> dict:
    """Two subnormal c-subgroups lie in the radical and generate inside c."""
    claim = (
        f"subnormal {c.name}-subgroups lie in the {c.name}-radical and their "
        "join stays in the class"
    )
    for tag, h in (("A", a), ("B", b)):
        if subnormal_depth(g, h) is None:
            return _report(
                claim, "precondition-failed", {"reason": f"{tag} is not subnormal"}
            )
        if not subgroup_belongs(c, h, cap):
            return _report(
                claim,
                "precondition-failed",
                {"reason": f"{tag} does not belong to {c.name}"},
            )
    rad = _radical_set(g, c, cap)
    join = subgroup_generated(g, set(a.members) | set(b.members))
    problems = []
    if not a.member_set() <= rad:
        problems.append("A is not inside the radical")
    if not b.member_set() <= rad:
        problems.append("B is not inside the radical")
    if not subgroup_belongs(c, join, cap):
        problems.append("the join left the class")
    if problems:
        return _report(
            claim,
            "violated",
            {"problems": problems, "join": sorted(join.members)},
        )
    return _report(claim, "holds", None, orders={"join": join.order, "radical": len(rad)})


def residual_monotone_check(
    g: CayleyGroup,
    c: GroupClass,
    cap: int = SUBGROUP_ENUM_CAP,
    aut_cap: int = AUTOMORPHISM_CAP,
) -> dict:
    """Structural laws tying residual and radical to the subgroup lattice.

    Four sub-checks: every subgroup's residual lies inside the group's;
    the residual is characteristic; the radical is characteristic; and for
    every normal subgroup, the quotient's residual is the projection image
    of the group's residual.
    """
    rg = _residual_set(g, c, cap)
    checks = []

    bad = []
    for h in all_subgroups(g, cap):
        if not _lifted_residual(h, c, cap) <= rg:
            bad.append(sorted(h.members))
    checks.append(
        _report(
            "residual of every subgroup lies inside the group residual",
            "holds" if not bad else "violated",
            None if not bad else {"subgroups": bad},
        )
    )

    checks.append(
        _report(
            "the residual is characteristic",
            "holds" if is_characteristic(g, Subgroup(g, tuple(rg)), aut_cap) else "violated",
            None,
        )
    )
    rad = _radical_set(g, c, cap)
    checks.append(
        _report(
            "the radical is characteristic",
            "holds" if is_characteristic(g, Subgroup(g, tuple(rad)), aut_cap) else "violated",
            None,
        )
    )

    bad_q = []
    for n in all_subgroups(g, cap):
        if not is_normal(g, n):
            continue
        q, proj = quotient_group(g, n)
        image = frozenset(proj[i] for i in rg)
        if _residual_set(q, c, cap) != image:
            bad_q.append(sorted(n.members))
    checks.append(
        _report(
            "residual of every quotient is the projection image of the residual",
            "holds" if not bad_q else "violated",
            None if not bad_q else {"normal_subgroups": bad_q},
        )
    )

    overall = "holds" if all(ch["status"] == "holds" for ch in checks) else "violated"
    first_bad = next((ch for ch in checks if ch["status"] != "holds"), None)
    return _report(
        f"residual/radical structural laws for {c.name}",
        overall,
        None if first_bad is None else first_bad["witness"],
        checks=checks,
    )


def verify_shp_axioms(
    c: GroupClass, library: Iterable[CayleyGroup], cap: int = SUBGROUP_ENUM_CAP
) -> dict:
    """Exercise the three closure axioms over a library of groups.

    For each member group: all subgroups and all quotients must stay in the
    class.  For each library group: the product of any two normal member
    subgroups must be a member subgroup.  Violations are report content,
    not errors; finding one for the abelian control class is the point.
    """
    violations = []
    count = 0
    for g in library:
        count += 1
        gname = g.name or f"order-{g.order} group"
        subs = all_subgroups(g, cap)
        if belongs(c, g, cap):
            for h in subs:
                if not subgroup_belongs(c, h, cap):
                    violations.append(
                        {
                            "axiom": "subgroups",
                            "group": gname,
                            "witness": {"subgroup": sorted(h.members)},
                        }
                    )
            for n in subs:
                if not is_normal(g, n):
                    continue
                q, _ = quotient_group(g, n)
                if not belongs(c, q, cap):
                    violations.append(
                        {
                            "axiom": "quotients",
                            "group": gname,
                            "witness": {"normal_subgroup": sorted(n.members)},
                        }
                    )
        normal_members = [
            h for h in subs if is_normal(g, h) and subgroup_belongs(c, h, cap)
        ]
        for i, u in enumerate(normal_members):
            for v in normal_members[i:]:
                prod, is_sub = product_set(g, u, v)
                ok = is_sub and subgroup_belongs(
                    c, Subgroup(g, prod), cap
                )
                if not ok:
                    violations.append(
                        {
                            "axiom": "normal-products",
                            "group": gname,
                            "witness": {
                                "U": sorted(u.members),
                                "V": sorted(v.members),
                                "product": sorted(prod),
                            },
                        }
                    )
    return _report(
        f"closure of {c.name} under subgroups, quotients, and normal products",
        "holds" if not violations else "violated",
        None if not violations else violations[0],
        violations=violations,
        groups_checked=count,
    )
