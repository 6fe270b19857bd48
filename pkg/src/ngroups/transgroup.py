"""Composition-closed sets of transformations and group detection.

``check_group`` verifies the group axioms one by one and, on success, also
verifies the structural fact that makes everything else work: all members
of a transformation group share one kernel partition and one image set.
``rho`` transports a verified group to the permutation group it induces on
the blocks of that shared kernel, checking bijectivity, injectivity and the
homomorphism law element by element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import (
    CapExceededError,
    DomainMismatchError,
    InternalCheckError,
    NotAGroupError,
)
from .transformation import (
    Partition,
    Transformation,
    compose,
    image_rank,
    induced_map,
    kernel_partition,
)

__all__ = [
    "TransGroup",
    "PermGroup",
    "GroupRejection",
    "CLOSURE_CAP",
    "RHO_TABLE_CHECK_CAP",
    "generate_closure",
    "try_group",
    "check_group",
    "is_ng_group",
    "common_kernel_image",
    "rho",
    "group_report",
]

CLOSURE_CAP = 10_000
RHO_TABLE_CHECK_CAP = 720


@dataclass(frozen=True)
class GroupRejection:
    """Why a set of maps is not a group: the first failed axiom plus witnesses."""

    axiom: str  # not-closed | no-identity | no-inverse | mixed-kernel
    witness: tuple[Transformation, ...]
    detail: str

    def to_report(self) -> dict:
        return {
            "axiom": self.axiom,
            "witness": [str(f) for f in self.witness],
            "detail": self.detail,
        }


@dataclass(frozen=True)
class TransGroup:
    """A verified group of transformations on a common carrier.

    ``elements`` is sorted by image sequence so iteration order, indices and
    JSON output are reproducible.  Construct via check_group, not directly.
    """

    elements: tuple[Transformation, ...]
    identity_index: int
    kernel: Partition
    image: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.elements[0].n

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Transformation:
        return self.elements[self.identity_index]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, f: Transformation) -> bool:
        return f in self.elements

    def index_of(self, f: Transformation) -> int:
        return self.elements.index(f)


@dataclass(frozen=True)
class PermGroup:
    """The permutation group a transformation group induces on its quotient.

    ``perms[i]`` is the block map of the source group's i-th element, so the
    association element -> block map is positional.
    """

    m: int
    perms: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.perms)

    @property
    def identity_perm(self) -> tuple[int, ...]:
        return tuple(range(self.m))

    def label_map(self, g: TransGroup) -> dict[str, tuple[int, ...]]:
        """Render the element -> block-map association for reporting."""
        if len(g.elements) != len(self.perms):
            raise DomainMismatchError("group and quotient have different orders")
        return {str(f): self.perms[i] for i, f in enumerate(g.elements)}


def generate_closure(
    gens: Iterable[Transformation], cap: int = CLOSURE_CAP
) -> tuple[Transformation, ...]:
    """Smallest composition-closed superset of gens, sorted by image sequence.

    Worklist saturation; raises CapExceededError if the closure would
    exceed cap elements.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    for f in gens:
        if f.n != n:
            raise DomainMismatchError(f"generators on carriers {n} and {f.n}")
    members: set[Transformation] = set(gens)
    if len(members) > cap:
        raise CapExceededError(f"closure exceeded cap {cap}")
    frontier = list(members)
    while frontier:
        fresh: list[Transformation] = []
        for f in frontier:
            for g in list(members):
                for prod in (compose(f, g), compose(g, f)):
                    if prod not in members:
                        members.add(prod)
                        fresh.append(prod)
                        if len(members) > cap:
                            raise CapExceededError(
                                f"closure exceeded cap {cap}"
                            )
        frontier = fresh
    return tuple(sorted(members))


def try_group(maps: Iterable[Transformation]) -> Union[TransGroup, GroupRejection]:
    """Check the group axioms; return a TransGroup or the first failure."""
    elements = tuple(sorted(set(maps)))
    if not elements:
        raise ValueError("need at least one map")
    n = elements[0].n
    for f in elements:
        if f.n != n:
            raise DomainMismatchError(f"maps on carriers {n} and {f.n}")
    index = {f: i for i, f in enumerate(elements)}

    # closure
    for f in elements:
        for g in elements:
            if compose(f, g) not in index:
                return GroupRejection(
                    axiom="not-closed",
                    witness=(f, g),
                    detail=f"{f}*{g} = {compose(f, g)} is outside the set",
                )

    # unique two-sided identity
    identity_index = -1
    for i, e in enumerate(elements):
        if all(compose(e, f) == f and compose(f, e) == f for f in elements):
            identity_index = i
            break
    if identity_index < 0:
        return GroupRejection(
            axiom="no-identity",
            witness=elements,
            detail="no element acts as a two-sided identity on every member",
        )
    e = elements[identity_index]

    # two-sided inverses
    for f in elements:
        if not any(
            compose(f, g) == e and compose(g, f) == e for g in elements
        ):
            return GroupRejection(
                axiom="no-inverse",
                witness=(f,),
                detail=f"{f} has no two-sided inverse for identity {e}",
            )

    # shared kernel and image; unreachable for a verified group, kept as an alarm
    kernel = kernel_partition(e)
    image = image_rank(e).image
    for f in elements:
        if kernel_partition(f) != kernel or image_rank(f).image != image:
            return GroupRejection(
                axiom="mixed-kernel",
                witness=(e, f),
                detail=f"{f} does not share the identity's kernel and image",
            )

    return TransGroup(
        elements=elements,
        identity_index=identity_index,
        kernel=kernel,
        image=image,
    )


def check_group(maps: Iterable[Transformation]) -> TransGroup:
    """Like try_group but raises NotAGroupError on rejection."""
    result = try_group(maps)
    if isinstance(result, GroupRejection):
        raise NotAGroupError(result)
    return result


def is_ng_group(g: TransGroup) -> bool:
    """True iff no member is bijective; decidable from the shared image."""
    return len(g.image) < g.n


def common_kernel_image(g: TransGroup) -> tuple[Partition, tuple[int, ...]]:
    """The shared kernel partition and image, re-verified on every member."""
    for f in g.elements:
        if kernel_partition(f) != g.kernel:
            raise InternalCheckError(f"{f} breaks the shared kernel of its group")
        if image_rank(f).image != g.image:
            raise InternalCheckError(f"{f} breaks the shared image of its group")
    return g.kernel, g.image


def rho(g: TransGroup) -> PermGroup:
    """The induced permutation group on the blocks of the shared kernel.

    Verifies, for every member: the block map is well defined and bijective;
    the assignment is injective; and, for groups of order up to
    RHO_TABLE_CHECK_CAP, the full homomorphism table rho(f*g) = rho(f)rho(g).
    Any failure raises InternalCheckError since a verified group cannot
    produce one.
    """
    kernel, _ = common_kernel_image(g)
    m = kernel.block_count
    perms: list[tuple[int, ...]] = []
    for f in g.elements:
        block_map = induced_map(f, kernel)
        if len(set(block_map)) != m:
            raise InternalCheckError(
                f"induced map of {f} is not a bijection on {m} blocks"
            )
        perms.append(block_map)
    if len(set(perms)) != len(perms):
        raise InternalCheckError("two group members induce one block map")
    if g.order <= RHO_TABLE_CHECK_CAP:
        lookup = {p: i for i, p in enumerate(perms)}
        for i, f in enumerate(g.elements):
            for j, h in enumerate(g.elements):
                prod = g.index_of(compose(f, h))
                composed = tuple(perms[i][v] for v in perms[j])
                if lookup[composed] != prod:
                    raise InternalCheckError(
                        f"block maps of {f} and {h} break the homomorphism law"
                    )
    identity_perm = tuple(range(m))
    if identity_perm not in perms:
        raise InternalCheckError("identity block map missing from the quotient")
    return PermGroup(m=m, perms=tuple(perms))


def group_report(g: TransGroup) -> dict:
    """The JSON-ready description of a verified group."""
    return {
        "n": g.n,
        "order": g.order,
        "identity": str(g.identity),
        "elements": [str(f) for f in g.elements],
        "kernel_blocks": g.kernel.blocks(),
        "image": list(g.image),
        "is_ng": is_ng_group(g),
        "quotient_order": g.kernel.block_count,
    }
