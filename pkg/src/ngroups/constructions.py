"""Builders for the concrete groups the test-bench runs on.

Cyclic, elementary abelian, symmetric and dihedral tables; the semidirect
product C_q x| (C_p x C_p) in which the p-radical fails to factor over a
subnormal product decomposition while the p-residual factors fine; and the
maximal group of non-bijective transformations on n points, of order
(n-1)!, built by composing the collapse-one-point idempotent with every
permutation of its image.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .cayley import (
    CayleyGroup,
    Subgroup,
    is_normal,
    product_set,
    subgroup_generated,
    subnormal_depth,
)
from .classes import (
    check_radical_product,
    check_residual_product,
    p_group,
    _lifted_radical,
    _radical_set,
)
from .errors import CapExceededError, InternalCheckError, ParseError
from .transformation import Transformation
from .transgroup import CLOSURE_CAP, TransGroup, check_group, is_ng_group

__all__ = [
    "standard_group",
    "cyclic_group",
    "elementary_abelian_group",
    "symmetric_group",
    "dihedral_group",
    "SemidirectSpec",
    "SemidirectData",
    "semidirect_q_p2",
    "theorem33_report",
    "ng_witness",
]


def cyclic_group(m: int) -> CayleyGroup:
    """C_m with elements r^0 .. r^(m-1)."""
    if m < 1:
        raise ValueError(f"cyclic group needs m >= 1, got {m}")
    table = [[(i + j) % m for j in range(m)] for i in range(m)]
    labels = ["e"] + [f"r^{i}" if i > 1 else "r" for i in range(1, m)]
    return CayleyGroup.from_table(table, labels, name=f"C{m}")


def elementary_abelian_group(p: int, k: int) -> CayleyGroup:
    """(C_p)^k with elements the k-tuples over Z_p, added coordinatewise."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    vecs = list(itertools.product(range(p), repeat=k))
    index = {v: i for i, v in enumerate(vecs)}
    table = [
        [index[tuple((a + b) % p for a, b in zip(u, v))] for v in vecs]
        for u in vecs
    ]
    labels = ["(" + ",".join(map(str, v)) + ")" for v in vecs]
    return CayleyGroup.from_table(table, labels, name=f"C{p}^{k}")


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "e"


def symmetric_group(m: int) -> CayleyGroup:
    """S_m acting on {0..m-1}; product is composition, right factor first."""
    if m < 1:
        raise ValueError(f"symmetric group needs m >= 1, got {m}")
    perms = list(itertools.permutations(range(m)))
    index = {s: i for i, s in enumerate(perms)}
    table = [
        [index[tuple(s[t[x]] for x in range(m))] for t in perms]
        for s in perms
    ]
    labels = [_cycle_label(s) for s in perms]
    return CayleyGroup.from_table(table, labels, name=f"S{m}")


def dihedral_group(m: int) -> CayleyGroup:
    """Symmetries of the m-gon, order 2m; rotations first, then reflections."""
    if m < 1:
        raise ValueError(f"dihedral group needs m >= 1, got {m}")

    # element i < m is r^i, element m + i is r^i s; s r = r^-1 s
    def mul(a: int, b: int) -> int:
        ra, fa = a % m, a >= m
        rb, fb = b % m, b >= m
        if not fa:
            rot = (ra + rb) % m
        else:
            rot = (ra - rb) % m
        flip = fa != fb
        return rot + (m if flip else 0)

    table = [[mul(a, b) for b in range(2 * m)] for a in range(2 * m)]
    rot_labels = ["e"] + [f"r^{i}" if i > 1 else "r" for i in range(1, m)]
    ref_labels = ["s"] + [f"{rot_labels[i]} s" for i in range(1, m)]
    return CayleyGroup.from_table(table, rot_labels + ref_labels, name=f"D{m}")


def standard_group(kind: str, *params: int) -> CayleyGroup:
    """Dispatcher: cyclic(m) | elementary_abelian(p,k) | symmetric(m) | dihedral(m)."""
    builders = {
        "cyclic": (cyclic_group, 1),
        "elementary_abelian": (elementary_abelian_group, 2),
        "symmetric": (symmetric_group, 1),
        "dihedral": (dihedral_group, 1),
    }
    if kind not in builders:
        raise ValueError(
            f"unknown kind {kind!r}; expected one of {sorted(builders)}"
        )
    fn, arity = builders[kind]
    if len(params) != arity:
        raise ValueError(f"{kind} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


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
class SemidirectSpec:
    """Parameters of C_q x| (C_p x C_p): primes with q = 1 mod p, and the
    multiplier a of multiplicative order p mod q that defines the action."""

    p: int
    q: int
    a: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if not _is_prime(self.q):
            raise ValueError(f"q = {self.q} is not prime")
        if self.q % self.p != 1:
            raise ValueError(f"need q = 1 (mod p); got q = {self.q}, p = {self.p}")
        if not 1 < self.a < self.q:
            raise ValueError(f"need 1 < a < q, got a = {self.a}")
        if pow(self.a, self.p, self.q) != 1:
            raise ValueError(
                f"a = {self.a} does not have multiplicative order {self.p} mod {self.q}"
            )

    @classmethod
    def choose(cls, p: int, q: int, a: Optional[int] = None) -> SemidirectSpec:
        """Build a spec, picking the smallest valid multiplier when a is None."""
        if a is not None:
            return cls(p, q, a)
        if not (_is_prime(p) and _is_prime(q)) or q % p != 1:
            # let the constructor produce the precise message
            return cls(p, q, 2)
        for cand in range(2, q):
            if pow(cand, p, q) == 1:
                return cls(p, q, cand)
        raise InternalCheckError(
            f"no multiplier of order {p} mod {q} although q = 1 (mod p)"
        )

    @classmethod
    def parse(cls, text: str) -> SemidirectSpec:
        """CLI form "p,q" or "p,q,a"."""
        parts = [t.strip() for t in text.split(",")]
        if len(parts) not in (2, 3) or not all(t.lstrip("-").isdigit() for t in parts):
            raise ParseError(f"bad semidirect spec {text!r}; expected p,q[,a]")
        nums = [int(t) for t in parts]
        try:
            return cls.choose(*nums)
        except ValueError as exc:
            raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class SemidirectData:
    """The constructed group with its designated subgroups and elements."""

    spec: SemidirectSpec
    group: CayleyGroup
    N: Subgroup
    H: Subgroup
    U: Subgroup
    V: Subgroup
    x: int
    y: int


def semidirect_q_p2(spec: SemidirectSpec) -> SemidirectData:
    """Build C_q x| (C_p x C_p) where x multiplies N by a and y acts trivially.

    Elements are triples (n, i, j) for n * x^i * y^j, encoded as
    n*p*p + i*p + j.  Returns the group plus N = <n>, H = <x,y>,
    U = N<x>, V = N<xy>, and the indices of x and y.
    """
    p, q, a = spec.p, spec.q, spec.a
    pp = p * p

    def enc(n: int, i: int, j: int) -> int:
        return n * pp + i * p + j

    def mul(u: int, v: int) -> int:
        n1, r1 = divmod(u, pp)
        i1, j1 = divmod(r1, p)
        n2, r2 = divmod(v, pp)
        i2, j2 = divmod(r2, p)
        return enc((n1 + pow(a, i1, q) * n2) % q, (i1 + i2) % p, (j1 + j2) % p)

    order = q * pp
    table = [[mul(u, v) for v in range(order)] for u in range(order)]

    def label(idx: int) -> str:
        n, r = divmod(idx, pp)
        i, j = divmod(r, p)
        parts = []
        if n:
            parts.append("n" if n == 1 else f"n^{n}")
        if i:
            parts.append("x" if i == 1 else f"x^{i}")
        if j:
            parts.append("y" if j == 1 else f"y^{j}")
        return " ".join(parts) or "e"

    g = CayleyGroup.from_table(
        table,
        [label(idx) for idx in range(order)],
        name=f"C{q}:(C{p}xC{p})",
    )
    N = Subgroup(g, tuple(enc(n, 0, 0) for n in range(q)))
    H = Subgroup(g, tuple(enc(0, i, j) for i in range(p) for j in range(p)))
    U = Subgroup(g, tuple(enc(n, i, 0) for n in range(q) for i in range(p)))
    V = Subgroup(g, tuple(enc(n, i, i) for n in range(q) for i in range(p)))
    return SemidirectData(
        spec=spec, group=g, N=N, H=H, U=U, V=V, x=enc(0, 1, 0), y=enc(0, 0, 1)
    )


def theorem33_report(spec: SemidirectSpec) -> dict:
    """Verify the radical/residual contrast on one semidirect instance.

    Checks: U and V are normal (depth 1); G = UV; the p-radical of G is
    <y> of order p while the factors have trivial p-radical, so the radical
    does not factor over the decomposition; the p-residual does factor; and
    the derived subgroup lies inside N.  Every check is expected to hold;
    any "violated" status means the build is wrong.
    """
    data = semidirect_q_p2(spec)
    g = data.group
    cap = g.order
    cls = p_group(spec.p)
    checks: list[dict] = []

    def add(claim: str, ok: bool, witness=None) -> None:
        checks.append(
            {"claim": claim, "status": "holds" if ok else "violated", "witness": witness}
        )

    for tag, h in (("U", data.U), ("V", data.V)):
        depth = subnormal_depth(g, h)
        add(
            f"{tag} is normal in G (subnormal of depth 1)",
            is_normal(g, h) and depth == 1,
            {"depth": depth},
        )

    prod, is_sub = product_set(g, data.U, data.V)
    add("G = UV", len(prod) == g.order and is_sub, {"product_size": len(prod)})

    rad = _radical_set(g, cls, cap)
    ygen = subgroup_generated(g, {data.y})
    add(
        f"the {spec.p}-radical of G is generated by y and has order {spec.p}",
        rad == ygen.member_set() and len(rad) == spec.p,
        {"radical_order": len(rad)},
    )

    radical_report = check_radical_product(g, data.U, data.V, cls, cap)
    ru = _lifted_radical(data.U, cls, cap)
    rv = _lifted_radical(data.V, cls, cap)
    add(
        "the p-radicals of U and V are trivial",
        ru == {g.identity} and rv == {g.identity},
        {"U_radical_order": len(ru), "V_radical_order": len(rv)},
    )
    add(
        "the p-radical of G is not the product of the factor radicals",
        radical_report["status"] == "violated",
        radical_report,
    )

    residual_report = check_residual_product(g, data.U, data.V, cls, cap)
    add(
        "the p-residual of G is the product of the factor residuals",
        residual_report["status"] == "holds",
        residual_report,
    )

    commutators = {
        g.mul(g.mul(u, v), g.inv(g.mul(v, u)))
        for u in range(g.order)
        for v in range(g.order)
    }
    derived = subgroup_generated(g, commutators)
    add(
        "the derived subgroup lies inside N",
        derived.member_set() <= data.N.member_set(),
        {"derived_order": derived.order},
    )

    # reading the decomposition with V = <xy> alone: the product still
    # covers G, but that V is not subnormal, so the factorization checks
    # use V = N<xy>
    v_stmt = subgroup_generated(g, {g.mul(data.x, data.y)})
    stmt_prod, _ = product_set(g, data.U, v_stmt)
    statement_reading = {
        "V_order": v_stmt.order,
        "V_subnormal": subnormal_depth(g, v_stmt) is not None,
        "UV_covers_G": len(stmt_prod) == g.order,
    }

    all_hold = all(ch["status"] == "holds" for ch in checks)
    first_bad = next((ch for ch in checks if ch["status"] != "holds"), None)
    return {
        "claim": (
            f"radical product fails and residual product holds on "
            f"C{spec.q} x| (C{spec.p} x C{spec.p}), a = {spec.a}"
        ),
        "status": "holds" if all_hold else "violated",
        "witness": None if all_hold else first_bad,
        "order": g.order,
        "checks": checks,
        "statement_reading": statement_reading,
    }


def ng_witness(n: int, cap: int = CLOSURE_CAP) -> TransGroup:
    """The order-(n-1)! group of non-bijective maps on {0..n-1}.

    The identity e collapses point 1 onto point 0 and fixes the rest; the
    members are sigma o e for every permutation sigma of the image
    T = {0, 2, ..., n-1}.  The result is check_group-verified.
    """
    if n < 2:
        raise ValueError(f"witness needs n >= 2, got {n}")
    size = math.factorial(n - 1)
    if size > cap:
        raise CapExceededError(
            f"witness order {size} exceeds cap {cap}"
        )
    e = Transformation(tuple([0, 0] + list(range(2, n))))
    image = [0] + list(range(2, n))
    maps = []
    for sigma in itertools.permutations(image):
        assign = dict(zip(image, sigma))
        maps.append(Transformation(tuple(assign[e.images[x]] for x in range(n))))
    group = check_group(maps)
    if group.order != size or not is_ng_group(group) or group.identity != e:
        raise InternalCheckError("witness construction produced a wrong group")
    return group
