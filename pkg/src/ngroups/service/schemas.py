"""Request and response bodies for the HTTP facade.

Response shapes mirror the JSON the core modules already emit (group
reports, census reports, claim reports, table dumps); the models here pin
those shapes down for validation and the OpenAPI schema rather than invent
new ones.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field


class GroupReport(BaseModel):
    """A verified transformation group."""

    n: int
    order: int
    identity: str
    elements: list[str]
    kernel_blocks: list[list[int]]
    image: list[int]
    is_ng: bool
    quotient_order: int


class Rejection(BaseModel):
    """Why a set of maps failed the group axioms."""

    axiom: str
    witness: list[str]
    detail: str


class GroupDump(BaseModel):
    """A multiplication-table dump, accepted back by table endpoints."""

    order: int
    labels: list[str]
    table: list[list[int]]
    name: str = ""


class ClaimReport(BaseModel):
    """A verified or refuted claim; extra keys carry check-specific detail."""

    model_config = ConfigDict(extra="allow")

    claim: str
    status: str  # holds | violated | precondition-failed
    witness: Optional[Any] = None


class MembershipRequest(BaseModel):
    map: str = Field(description="transformation literal, e.g. [0,0,2]")


class MembershipResponse(BaseModel):
    map: str
    member: bool
    identity_capable: bool
    reason: str
    witness_group: Optional[GroupReport] = None


class IdempotentsRequest(BaseModel):
    n: int = Field(ge=1)


class IdempotentsResponse(BaseModel):
    n: int
    count: int
    formula_count: int
    idempotents: list[str]


class HClassRequest(BaseModel):
    map: str


class MaxNgRequest(BaseModel):
    n: int = Field(ge=2)


class MaxNgResponse(BaseModel):
    n: int
    max_ng_order: int
    witness: GroupReport


class ScanRequest(BaseModel):
    n: int = Field(ge=1)
    bounded: bool = False
    workers: int = Field(default=1, ge=1)


class PoolReport(BaseModel):
    model_config = ConfigDict(extra="allow")

    partition: list[list[int]]
    pool_size: int
    subsets_total: int
    subsets_examined: int
    rejections: dict[str, int]
    groups: list[GroupReport]
    member_hclass: Optional[dict] = None


class CensusReport(BaseModel):
    n: int
    mode: str
    pools: list[PoolReport]
    max_ng_order: int
    structural_max_ng_order: Optional[int] = None
    notes: list[str]


class WitnessRequest(BaseModel):
    n: int = Field(ge=2)


class RhoRequest(BaseModel):
    maps: list[str] = Field(min_length=1)


class QuotientPermGroup(BaseModel):
    m: int
    perms: list[list[int]]
    label_map: dict[str, list[int]]


class RhoResponse(BaseModel):
    group: Optional[GroupReport] = None
    rejection: Optional[Rejection] = None
    quotient: Optional[QuotientPermGroup] = None


class SemidirectRequest(BaseModel):
    spec: str = Field(description='spec string "p,q" or "p,q,a"')


class SemidirectResponse(BaseModel):
    p: int
    q: int
    a: int
    order: int
    group: GroupDump
    N: list[int]
    H: list[int]
    U: list[int]
    V: list[int]
    x: int
    y: int


class Thm33Request(BaseModel):
    spec: str


class ResidualRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    group: GroupDump
    group_class: str = Field(alias="class", description="p:<prime> or nilpotent")


class SubgroupResponse(BaseModel):
    group_class: str = Field(serialization_alias="class")
    members: list[int]
    labels: list[str]
    order: int


class CheckThm32Request(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    group: GroupDump
    u: list[int]
    v: list[int]
    group_class: str = Field(alias="class")


class VerifyAllRequest(BaseModel):
    max_n: int = Field(default=4, ge=2, le=4)
    seed: int = 0
    workers: int = Field(default=1, ge=1)


class CriterionReport(BaseModel):
    id: int
    name: str
    passed: bool
    seconds: float
    details: str


class VerifyAllResponse(BaseModel):
    criteria: list[CriterionReport]
    all_passed: bool
