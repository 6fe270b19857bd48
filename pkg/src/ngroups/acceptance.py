"""The acceptance suite: every headline claim as a timed, self-contained check.

Each criterion returns a CriterionResult with a pass flag, elapsed seconds
and a details string.  The suite is exposed programmatically (run_all), over
HTTP, and as the CLI's verify-all subcommand; the test-suite asserts every
criterion passes.  Checks that need an independent oracle carry their own
(the power-cycle membership test below is deliberately written against raw
image tuples rather than the package's composition helpers).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

from .cayley import (
    CayleyGroup,
    all_subgroups,
    product_set,
    subnormal_depth,
)
from .classes import (
    abelian,
    check_residual_product,
    nilpotent,
    p_group,
    residual_monotone_check,
    subgroup_belongs,
    subnormal_join_in_class,
    verify_shp_axioms,
)
from .constructions import (
    SemidirectSpec,
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    ng_witness,
    semidirect_q_p2,
    symmetric_group,
    theorem33_report,
)
from .search import (
    enumerate_idempotents,
    exhaustive_ng_scan,
    h_class_group,
    idempotent_count_formula,
    max_ng_order,
)
from .transformation import Transformation, can_be_member, image_rank, kernel_partition
from .transgroup import TransGroup, rho, try_group

__all__ = [
    "CriterionResult",
    "power_cycle_member",
    "build_library",
    "run_all",
    "CRITERIA",
]


@dataclass
class CriterionResult:
    cid: int
    name: str
    passed: bool
    seconds: float
    details: str

    def to_dict(self) -> dict:
        return {
            "id": self.cid,
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "details": self.details,
        }

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.cid}. {self.name} ({self.seconds:.2f}s) - {self.details}"


def power_cycle_member(images: tuple[int, ...], cap: Optional[int] = None) -> bool:
    """Independent membership oracle: some k <= n! has f^(k+1) = f.

    Works on raw image tuples so it shares no code with can_be_member.
    """
    n = len(images)
    limit = math.factorial(n) if cap is None else cap
    acc = images
    for _ in range(limit):
        acc = tuple(images[v] for v in acc)  # f^(k+1) from f^k
        if acc == images:
            return True
    return False


def _all_maps(n: int):
    def rec(prefix: list[int]):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(n):
            prefix.append(v)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def _criterion_max_ng(workers: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    expected = {n: math.factorial(n - 1) for n in range(2, 8)}
    problems = []
    for n in range(2, 8):
        size, witness = max_ng_order(n)
        ok = (
            size == expected[n]
            and witness.order == size
            and len(witness.image) < n
        )
        if not ok:
            problems.append(f"n={n}: got {size}, want {expected[n]}")
    elapsed = time.perf_counter() - start
    passed = not problems and elapsed < 10.0
    details = (
        "orders 1,2,6,24,120,720 for n=2..7, witnesses verified"
        if not problems
        else "; ".join(problems)
    )
    if elapsed >= 10.0:
        details += f"; over the 10s budget ({elapsed:.1f}s)"
    return CriterionResult(1, "maximal NG order equals (n-1)!", passed, elapsed, details)


def _criterion_scans(workers: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    problems = []
    s2 = exhaustive_ng_scan(2, workers=workers)
    if s2.max_ng_order != 1:
        problems.append(f"scan 2 max {s2.max_ng_order} != 1")
    s3 = exhaustive_ng_scan(3, workers=workers)
    if s3.max_ng_order != 2:
        problems.append(f"scan 3 max {s3.max_ng_order} != 2")
    s4 = exhaustive_ng_scan(4, bounded=True, workers=workers)
    if s4.max_ng_order > 6:
        problems.append(f"scan 4 found order {s4.max_ng_order} > 6")
    if s4.structural_max_ng_order != 6:
        problems.append(
            f"scan 4 structural bound {s4.structural_max_ng_order} != 6"
        )
    hviol = sum(len(p.member_hclass["violations"]) for p in s4.pools)
    if hviol:
        problems.append(f"{hviol} H-class containment violations")

    # relabelling invariance spot-check: conjugating a found group by a
    # random permutation of the carrier must yield another group of the
    # same order, so the census order statistics cannot depend on labels
    rng = random.Random(seed)
    perm = list(range(3))
    rng.shuffle(perm)
    inv = [0] * 3
    for i, v in enumerate(perm):
        inv[v] = i
    base_orders = sorted(g.order for p in s3.pools for g in p.groups)
    conj_orders = []
    for p in s3.pools:
        for g in p.groups:
            conj = [
                Transformation(tuple(perm[f.images[inv[x]]] for x in range(3)))
                for f in g.elements
            ]
            res = try_group(conj)
            if isinstance(res, TransGroup):
                conj_orders.append(res.order)
    conj_orders.sort()
    if base_orders != conj_orders:
        problems.append("relabelling changed the order statistics")
    groups_found = sum(len(p.groups) for s in (s2, s3, s4) for p in s.pools)
    elapsed = time.perf_counter() - start
    passed = not problems and elapsed < 60.0
    details = (
        f"max orders 1/2/<=6, structural bound 6, {groups_found} groups, "
        f"0 containment violations"
        if not problems
        else "; ".join(problems)
    )
    if elapsed >= 60.0:
        details += f"; over the 60s budget ({elapsed:.1f}s)"
    return CriterionResult(
        2, "exhaustive kernel-pool scans confirm the bound", passed, elapsed, details
    )


def _criterion_membership(workers: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    disagreements = []
    checked = 0
    for n in (3, 4):
        for images in _all_maps(n):
            checked += 1
            mine = can_be_member(Transformation(images))
            oracle = power_cycle_member(images)
            if mine != oracle:
                disagreements.append(images)
    elapsed = time.perf_counter() - start
    passed = not disagreements
    details = (
        f"{checked} maps (27 + 256), 0 disagreements with the power-cycle oracle"
        if passed
        else f"{len(disagreements)} disagreements, first {disagreements[0]}"
    )
    return CriterionResult(
        3, "image criterion matches the power-cycle oracle", passed, elapsed, details
    )


def _criterion_idempotents(workers: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    frozen = {1: 1, 2: 3, 3: 10, 4: 41, 5: 196}
    problems = []
    for n, want in frozen.items():
        brute = len(enumerate_idempotents(n))
        formula = idempotent_count_formula(n)
        if not (brute == formula == want):
            problems.append(f"n={n}: brute {brute}, formula {formula}, want {want}")
    elapsed = time.perf_counter() - start
    details = (
        "counts 1,3,10,41,196 for n=1..5, brute force and closed form agree"
        if not problems
        else "; ".join(problems)
    )
    return CriterionResult(
        4, "idempotent census matches the closed form", not problems, elapsed, details
    )


def _criterion_rho(workers: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    problems = []
    verified = 0

    def verify(g: TransGroup, tag: str) -> None:
        nonlocal verified
        try:
            pg = rho(g)
        except Exception as exc:
            problems.append(f"{tag}: {exc}")
            return
        if pg.order != g.order:
            problems.append(f"{tag}: quotient order {pg.order} != {g.order}")
            return
        verified += 1

    for n in range(2, 7):
        verify(ng_witness(n), f"witness n={n}")
    for n in range(1, 6):
        for e in enumerate_idempotents(n):
            verify(h_class_group(e), f"h-class {e} (n={n})")
    for n in (2, 3):
        scan = exhaustive_ng_scan(n, workers=workers)
        for p in scan.pools:
            for g in p.groups:
                verify(g, f"scan n={n} group of order {g.order}")
    elapsed = time.perf_counter() - start
    details = (
        f"{verified} groups transported to block permutation groups, "
        "bijective homomorphism confirmed by full tables"
        if not problems
        else "; ".join(problems[:3])
    )
    return CriterionResult(
        5,
        "quotient representation is a size-preserving isomorphism",
        not problems,
        elapsed,
        details,
    )


def _criterion_counterexample(workers: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    problems = []
    for p, q in ((2, 3), (2, 5), (3, 7)):
        t0 = time.perf_counter()
        report = theorem33_report(SemidirectSpec.choose(p, q))
        dt = time.perf_counter() - t0
        if report["status"] != "holds":
            problems.append(f"({p},{q}): {report['witness']}")
        if dt >= 5.0:
            problems.append(f"({p},{q}) took {dt:.1f}s, budget 5s")
    elapsed = time.perf_counter() - start
    details = (
        "radical differs from factor product while residual factors, "
        "for (2,3), (2,5), (3,7)"
        if not problems
        else "; ".join(problems)
    )
    return CriterionResult(
        6, "p-radical counterexample on the semidirect family", not problems, elapsed, details
    )


def build_library(max_order: int = 24) -> list[CayleyGroup]:
    """Constructed groups of order <= max_order used by the lemma sweeps."""
    lib: list[CayleyGroup] = []
    for m in range(1, max_order + 1):
        lib.append(cyclic_group(m))
    for m in range(2, max_order // 2 + 1):
        lib.append(dihedral_group(m))
    for m in range(2, 5):
        if math.factorial(m) <= max_order:
            lib.append(symmetric_group(m))
    lib.append(elementary_abelian_group(2, 2))
    for p, q in ((2, 3), (2, 5)):
        if q * p * p <= max_order:
            lib.append(semidirect_q_p2(SemidirectSpec.choose(p, q)).group)
    return lib


_LIBRARY_CLASSES = (p_group(2), p_group(3), p_group(5), nilpotent())


def _criterion_residual_products(workers: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    problems = []
    checks = 0
    for g in build_library():
        subs = all_subgroups(g, cap=max(g.order, 48))
        subnormal = [h for h in subs if subnormal_depth(g, h) is not None]
        covering = []
        for i, u in enumerate(subnormal):
            for v in subnormal:
                prod, _ = product_set(g, u, v)
                if len(prod) == g.order:
                    covering.append((u, v))
        for u, v in covering:
            for cls in _LIBRARY_CLASSES:
                report = check_residual_product(g, u, v, cls, cap=max(g.order, 48))
                checks += 1
                if report["status"] != "holds":
                    problems.append(
                        f"{g.name}: {cls.name} {report['status']} "
                        f"U={u.members} V={v.members}"
                    )
    elapsed = time.perf_counter() - start
    details = (
        f"{checks} factorization checks across the order<=24 library, 0 violations"
        if not problems
        else "; ".join(problems[:3])
    )
    return CriterionResult(
        7,
        "residual factorizes over subnormal product decompositions",
        not problems,
        elapsed,
        details,
    )


def _criterion_lemma_suite(workers: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    problems = []
    checks = 0
    library = build_library()
    for g in library:
        cap = max(g.order, 48)
        for cls in _LIBRARY_CLASSES:
            report = residual_monotone_check(g, cls, cap=cap, aut_cap=max(g.order, 24))
            checks += len(report["checks"])
            if report["status"] != "holds":
                problems.append(f"{g.name} x {cls.name}: {report['witness']}")
        subs = all_subgroups(g, cap=cap)
        for cls in _LIBRARY_CLASSES:
            members = [
                h
                for h in subs
                if subgroup_belongs(cls, h, cap)
                and subnormal_depth(g, h) is not None
            ]
            for i, a in enumerate(members):
                for b in members[i:]:
                    rep = subnormal_join_in_class(g, a, b, cls, cap=cap)
                    checks += 1
                    if rep["status"] != "holds":
                        problems.append(
                            f"{g.name} x {cls.name}: join of {a.members} and "
                            f"{b.members}: {rep['status']}"
                        )
    # negative control: abelian is not closed under normal products and the
    # harness must notice on the order-8 dihedral group
    control = verify_shp_axioms(abelian(), [dihedral_group(4)])
    if control["status"] != "violated" or not control["violations"]:
        problems.append("abelian control produced no violation on D4")
    elapsed = time.perf_counter() - start
    details = (
        f"{checks} lemma checks, 0 violations; abelian control flagged "
        f"{len(control['violations'])} normal-product failures on D4"
        if not problems
        else "; ".join(problems[:3])
    )
    return CriterionResult(
        8,
        "residual/radical lemma suite passes; non-SHP control detected",
        not problems,
        elapsed,
        details,
    )


def _criterion_shared_kernel(workers: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    problems = []
    groups = 0
    for n in (2, 3):
        scan = exhaustive_ng_scan(n, workers=workers)
        for p in scan.pools:
            for g in p.groups:
                groups += 1
                kern = kernel_partition(g.identity)
                img = image_rank(g.identity).image
                for f in g.elements:
                    if kernel_partition(f) != kern or image_rank(f).image != img:
                        problems.append(f"n={n}: {f} strays from {g.identity}")
    elapsed = time.perf_counter() - start
    details = (
        f"{groups} scanned groups, every element shares its identity's "
        "kernel and image"
        if not problems
        else "; ".join(problems[:3])
    )
    return CriterionResult(
        9, "group members share the identity's kernel and image", not problems, elapsed, details
    )


CRITERIA: tuple[tuple[int, Callable[[int, int], CriterionResult]], ...] = (
    (1, _criterion_max_ng),
    (2, _criterion_scans),
    (3, _criterion_membership),
    (4, _criterion_idempotents),
    (5, _criterion_rho),
    (6, _criterion_counterexample),
    (7, _criterion_residual_products),
    (8, _criterion_lemma_suite),
    (9, _criterion_shared_kernel),
)


def run_all(max_n: int = 4, seed: int = 0, workers: int = 1) -> dict:
    """Run every acceptance criterion; max_n < 4 skips the bounded n=4 scan."""
    results = []
    for cid, fn in CRITERIA:
        if cid == 2 and max_n < 4:
            # the scan criterion includes the n=4 bounded scan; honor the cap
            results.append(_criterion_scans_small(workers, seed))
            continue
        results.append(fn(workers, seed))
    return {
        "criteria": [r.to_dict() for r in results],
        "all_passed": all(r.passed for r in results),
    }


def _criterion_scans_small(workers: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    problems = []
    s2 = exhaustive_ng_scan(2, workers=workers)
    if s2.max_ng_order != 1:
        problems.append(f"scan 2 max {s2.max_ng_order} != 1")
    s3 = exhaustive_ng_scan(3, workers=workers)
    if s3.max_ng_order != 2:
        problems.append(f"scan 3 max {s3.max_ng_order} != 2")
    elapsed = time.perf_counter() - start
    details = (
        "max orders 1/2 over full subset scans (n=4 skipped by --max-n)"
        if not problems
        else "; ".join(problems)
    )
    return CriterionResult(
        2, "exhaustive kernel-pool scans confirm the bound", not problems, elapsed, details
    )
