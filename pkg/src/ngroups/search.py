"""Exhaustive desk-scale searches over the full transformation monoid.

The questions answered here are deliberately brute force so they can serve
as independent evidence: enumerate every idempotent of T_n; build the
maximal group sitting at an idempotent (all maps sharing its kernel and
image); take the maximum order over non-bijective idempotents; and scan
kernel pools subset-by-subset for composition groups, assuming nothing
beyond "all members of a group share the identity's kernel".
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import CapExceededError, InternalCheckError
from .transformation import (
    Partition,
    Transformation,
    can_be_member,
    compose,
    image_rank,
    is_idempotent,
    kernel_partition,
)
from .transgroup import GroupRejection, TransGroup, group_report, try_group, check_group

__all__ = [
    "IDEMPOTENT_SCAN_CAP",
    "iter_partitions",
    "enumerate_idempotents",
    "idempotent_count_formula",
    "h_class_maps",
    "h_class_group",
    "max_ng_order",
    "PoolScan",
    "ScanResult",
    "exhaustive_ng_scan",
]

IDEMPOTENT_SCAN_CAP = 7


def iter_partitions(n: int) -> Iterator[Partition]:
    """All partitions of {0..n-1} via restricted growth strings."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    labels = [0] * n

    def rec(i: int, top: int) -> Iterator[Partition]:
        if i == n:
            yield Partition(tuple(labels))
            return
        for lbl in range(top + 2):
            labels[i] = lbl
            yield from rec(i + 1, max(top, lbl))

    yield from rec(1, 0)


def enumerate_idempotents(n: int) -> list[Transformation]:
    """Every f in T_n with f*f = f, by scanning all n^n maps."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n > IDEMPOTENT_SCAN_CAP:
        raise CapExceededError(
            f"idempotent scan capped at n = {IDEMPOTENT_SCAN_CAP}, got {n}"
        )
    out = []
    for images in itertools.product(range(n), repeat=n):
        for v in images:
            if images[v] != v:
                break
        else:
            out.append(Transformation(images))
    return out


def idempotent_count_formula(n: int) -> int:
    """Closed form: sum over image sizes k of C(n,k) * k^(n-k)."""
    return sum(math.comb(n, k) * k ** (n - k) for k in range(1, n + 1))


def h_class_maps(e: Transformation) -> list[Transformation]:
    """All maps sharing e's kernel and image, e idempotent; sorted.

    Constructed as every bijective assignment of kernel blocks to image
    points, then re-verified map by map.
    """
    if not is_idempotent(e):
        raise ValueError(f"{e} is not idempotent")
    kern = kernel_partition(e)
    img = image_rank(e).image
    out = []
    for sigma in itertools.permutations(img):
        cand = Transformation(
            tuple(sigma[kern.block_of[x]] for x in range(e.n))
        )
        if kernel_partition(cand) != kern or image_rank(cand).image != img:
            raise InternalCheckError(
                f"h-class candidate {cand} lost the kernel or image of {e}"
            )
        out.append(cand)
    return sorted(out)


def h_class_group(e: Transformation) -> TransGroup:
    """The maximal group with identity e, verified by check_group."""
    group = check_group(h_class_maps(e))
    rank = image_rank(e).rank
    if group.identity != e or group.order != math.factorial(rank):
        raise InternalCheckError(
            f"h-class of {e} is not the expected group of order {rank}!"
        )
    return group


def max_ng_order(n: int) -> tuple[int, TransGroup]:
    """Largest order over the maximal groups at non-bijective idempotents.

    Orders are counted constructively per idempotent (candidate lists, not
    the factorial formula); the winning witness is then fully verified.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    best_size, best = 0, None
    for e in enumerate_idempotents(n):
        if image_rank(e).bijective:
            continue
        size = len(h_class_maps(e))
        if size > best_size:
            best_size, best = size, e
    if best is None:
        raise InternalCheckError(f"no non-bijective idempotent found for n = {n}")
    witness = h_class_group(best)
    if witness.order != best_size:
        raise InternalCheckError(
            f"witness order {witness.order} disagrees with the census {best_size}"
        )
    return best_size, witness


@dataclass(frozen=True)
class PoolScan:
    """Scan outcome for one kernel pool."""

    partition: Partition
    pool: tuple[Transformation, ...]
    groups: tuple[TransGroup, ...]
    subsets_total: int
    subsets_examined: int
    rejections: tuple[tuple[str, int], ...]
    member_hclass: Optional[dict]


@dataclass(frozen=True)
class ScanResult:
    """Census of every composition group found inside kernel pools."""

    n: int
    mode: str
    pools: tuple[PoolScan, ...]
    max_ng_order: int
    structural_max_ng_order: Optional[int]
    notes: tuple[str, ...]

    def to_census(self) -> dict:
        out = {
            "n": self.n,
            "mode": self.mode,
            "pools": [
                {
                    "partition": p.partition.blocks(),
                    "pool_size": len(p.pool),
                    "subsets_total": p.subsets_total,
                    "subsets_examined": p.subsets_examined,
                    "rejections": dict(p.rejections),
                    "groups": [group_report(g) for g in p.groups],
                    **(
                        {"member_hclass": p.member_hclass}
                        if p.member_hclass is not None
                        else {}
                    ),
                }
                for p in self.pools
            ],
            "max_ng_order": self.max_ng_order,
            "notes": list(self.notes),
        }
        if self.structural_max_ng_order is not None:
            out["structural_max_ng_order"] = self.structural_max_ng_order
        return out


def _pool_for_partition(p: Partition) -> tuple[Transformation, ...]:
    """All maps whose kernel is exactly p: injective block-to-point choices."""
    n, b = p.n, p.block_count
    maps = [
        Transformation(tuple(choice[p.block_of[x]] for x in range(n)))
        for choice in itertools.permutations(range(n), b)
    ]
    return tuple(sorted(maps))


def _scan_pool_full(task: tuple[Partition, tuple[Transformation, ...]]) -> PoolScan:
    """Literally test every subset of the pool."""
    partition, pool = task
    groups: list[TransGroup] = []
    rejections: Counter[str] = Counter()
    rejections["empty"] = 1
    for k in range(1, len(pool) + 1):
        for subset in itertools.combinations(pool, k):
            res = try_group(subset)
            if isinstance(res, GroupRejection):
                rejections[res.axiom] += 1
            else:
                groups.append(res)
    total = 2 ** len(pool)
    return PoolScan(
        partition=partition,
        pool=pool,
        groups=tuple(sorted(groups, key=lambda g: (g.order, g.elements))),
        subsets_total=total,
        subsets_examined=total,
        rejections=tuple(sorted(rejections.items())),
        member_hclass=None,
    )


def _member_hclass_check(partition: Partition, pool: tuple[Transformation, ...]) -> dict:
    """Second, structural route: each potential group member of the pool
    must land in the maximal group of the pool's idempotent with the same
    image, so no group in the pool can outgrow the largest such group."""
    pool_set = set(pool)
    checked = 0
    violations: list[str] = []
    for f in pool:
        if not can_be_member(f):
            continue
        checked += 1
        img = image_rank(f).image
        point_in_block: dict[int, int] = {}
        ok = True
        for t in img:
            blk = partition.block_of[t]
            if blk in point_in_block:
                ok = False
                break
            point_in_block[blk] = t
        if not ok or len(point_in_block) != partition.block_count:
            violations.append(str(f))
            continue
        e = Transformation(
            tuple(point_in_block[partition.block_of[x]] for x in range(partition.n))
        )
        if not (
            is_idempotent(e) and e in pool_set and f in h_class_group(e).elements
        ):
            violations.append(str(f))
    idems = [f for f in pool if is_idempotent(f)]
    max_order = max((len(h_class_maps(e)) for e in idems), default=0)
    return {
        "checked": checked,
        "violations": violations,
        "max_hclass_order": max_order,
    }


def _scan_pool_bounded(
    task: tuple[Partition, tuple[Transformation, ...], int]
) -> PoolScan:
    """Depth-first subset search up to the size cutoff.

    A pair whose product leaves the pool dooms every superset (the product
    cannot lie in any subset of the pool), so such branches are pruned and
    the skipped subsets are accounted for arithmetically.
    """
    partition, pool, cap_size = task
    k = len(pool)
    index = {f: i for i, f in enumerate(pool)}
    ptab = [
        [index.get(compose(pool[i], pool[j]), -1) for j in range(k)]
        for i in range(k)
    ]
    groups: list[TransGroup] = []
    rejections: Counter[str] = Counter()
    examined = 0
    combo: list[int] = []

    def dfs(start: int) -> None:
        nonlocal examined
        for nxt in range(start, k):
            if ptab[nxt][nxt] < 0:
                continue
            if any(ptab[m][nxt] < 0 or ptab[nxt][m] < 0 for m in combo):
                continue
            combo.append(nxt)
            examined += 1
            res = try_group(pool[i] for i in combo)
            if isinstance(res, GroupRejection):
                rejections[res.axiom] += 1
            else:
                groups.append(res)
            if len(combo) < cap_size:
                dfs(nxt + 1)
            combo.pop()

    dfs(0)
    total = sum(math.comb(k, size) for size in range(0, cap_size + 1))
    return PoolScan(
        partition=partition,
        pool=pool,
        groups=tuple(sorted(groups, key=lambda g: (g.order, g.elements))),
        subsets_total=total,
        subsets_examined=examined,
        rejections=tuple(sorted(rejections.items())),
        member_hclass=_member_hclass_check(partition, pool),
    )


def exhaustive_ng_scan(n: int, bounded: bool = False, workers: int = 1) -> ScanResult:
    """Scan every non-discrete kernel pool of T_n for composition groups.

    Full mode (n <= 3) tests literally every subset of every pool.  Bounded
    mode (n <= 4) tests subsets up to size (n-1)! + 1 and adds the
    structural route through maximal idempotent groups, which caps any
    group the subset search could have missed.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if bounded:
        if n > 4:
            raise CapExceededError(f"bounded scan capped at n = 4, got {n}")
    elif n > 3:
        raise CapExceededError(
            f"full scan capped at n = 3, got {n}; use bounded mode for n = 4"
        )
    tasks = []
    for part in iter_partitions(n):
        if part.block_count == n:
            continue
        tasks.append((part, _pool_for_partition(part)))

    cap_size = math.factorial(n - 1) + 1 if n >= 2 else 2
    if bounded:
        jobs = [(part, pool, cap_size) for part, pool in tasks]
        runner = _scan_pool_bounded
    else:
        jobs = tasks
        runner = _scan_pool_full
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pex:
            pools = list(pex.map(runner, jobs))
    else:
        pools = [runner(job) for job in jobs]

    found_max = 0
    for p in pools:
        for g in p.groups:
            if len(g.image) < n:
                found_max = max(found_max, g.order)
    structural = None
    notes = [
        "pools hold every map with one exact kernel; a group's members share "
        "its identity's kernel, so every group lies inside one pool",
        "a non-bijective kernel has at most n-1 blocks, so the induced "
        "permutation group lives on at most n-1 symbols",
    ]
    if bounded:
        structural = max(
            (p.member_hclass["max_hclass_order"] for p in pools), default=0
        )
        notes.append(
            f"subset search cut off at size {cap_size}; the structural route "
            "bounds any group in a pool by its largest idempotent group"
        )
        if found_max > structural:
            raise InternalCheckError(
                f"found a group of order {found_max} above the structural "
                f"bound {structural}"
            )
    return ScanResult(
        n=n,
        mode="bounded" if bounded else "full",
        pools=tuple(pools),
        max_ng_order=found_max,
        structural_max_ng_order=structural,
        notes=tuple(notes),
    )
