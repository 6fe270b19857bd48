"""The FastAPI application wrapping the core package.

Every computation the CLI exposes is a POST endpoint taking and returning
the schemas in ``schemas``.  Package exceptions map to a structured error
envelope {"error": {"code", "detail"}} so clients can translate failures
into exit codes without parsing prose.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..acceptance import run_all
from ..cayley import Subgroup, group_dump, group_load
from ..classes import (
    parse_class,
    radical,
    residual,
    check_residual_product,
)
from ..constructions import SemidirectSpec, ng_witness, semidirect_q_p2, theorem33_report
from ..errors import (
    CapExceededError,
    DomainMismatchError,
    IllDefinedMapError,
    InternalCheckError,
    NotAGroupError,
    ParseError,
)
from ..search import (
    enumerate_idempotents,
    exhaustive_ng_scan,
    h_class_group,
    idempotent_count_formula,
    max_ng_order,
)
from ..transformation import Transformation, can_be_identity, can_be_member
from ..transgroup import (
    GroupRejection,
    generate_closure,
    group_report,
    rho,
    try_group,
)
from . import schemas


def _error(status: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "detail": detail}}
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="ngroups",
        version=__version__,
        description=(
            "Groups of non-bijective transformations on a finite set, "
            "exhaustive verification scans, and residual/radical checks "
            "for subgroup-closed group classes."
        ),
    )

    @app.exception_handler(ParseError)
    async def _parse_error(request: Request, exc: ParseError):
        return _error(400, "parse", str(exc))

    @app.exception_handler(DomainMismatchError)
    async def _domain_error(request: Request, exc: DomainMismatchError):
        return _error(400, "invalid", str(exc))

    @app.exception_handler(IllDefinedMapError)
    async def _illdefined_error(request: Request, exc: IllDefinedMapError):
        return _error(400, "invalid", str(exc))

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return _error(400, "invalid", str(exc))

    @app.exception_handler(CapExceededError)
    async def _cap_error(request: Request, exc: CapExceededError):
        return _error(422, "cap-exceeded", str(exc))

    @app.exception_handler(NotAGroupError)
    async def _not_group_error(request: Request, exc: NotAGroupError):
        return JSONResponse(
            status_code=422,
            content={
                "error": {
                    "code": "not-a-group",
                    "detail": str(exc),
                    "rejection": exc.rejection.to_report(),
                }
            },
        )

    @app.exception_handler(InternalCheckError)
    async def _internal_error(request: Request, exc: InternalCheckError):
        return _error(500, "internal-check", str(exc))

    @app.get("/")
    async def root() -> dict:
        return {
            "service": "ngroups",
            "version": __version__,
            "endpoints": sorted(
                r.path for r in app.routes if r.path.startswith("/") and "{" not in r.path
            ),
        }

    @app.post("/membership", response_model=schemas.MembershipResponse)
    async def membership(req: schemas.MembershipRequest):
        f = Transformation.parse(req.map)
        member = can_be_member(f)
        witness = None
        if member:
            closure = generate_closure([f])
            result = try_group(closure)
            if isinstance(result, GroupRejection):
                raise InternalCheckError(
                    f"cyclic closure of {f} rejected ({result.axiom}) although "
                    "the image criterion passed"
                )
            witness = group_report(result)
        return schemas.MembershipResponse(
            map=str(f),
            member=member,
            identity_capable=can_be_identity(f),
            reason=(
                "the image of f*f equals the image of f"
                if member
                else "the image of f*f is strictly smaller than the image of f"
            ),
            witness_group=witness,
        )

    @app.post("/idempotents", response_model=schemas.IdempotentsResponse)
    async def idempotents(req: schemas.IdempotentsRequest):
        found = enumerate_idempotents(req.n)
        return schemas.IdempotentsResponse(
            n=req.n,
            count=len(found),
            formula_count=idempotent_count_formula(req.n),
            idempotents=[str(f) for f in found],
        )

    @app.post("/hclass", response_model=schemas.GroupReport)
    async def hclass(req: schemas.HClassRequest):
        e = Transformation.parse(req.map)
        return group_report(h_class_group(e))

    @app.post("/max-ng", response_model=schemas.MaxNgResponse)
    async def max_ng(req: schemas.MaxNgRequest):
        size, witness = max_ng_order(req.n)
        return schemas.MaxNgResponse(
            n=req.n, max_ng_order=size, witness=group_report(witness)
        )

    @app.post("/scan", response_model=schemas.CensusReport)
    async def scan(req: schemas.ScanRequest):
        result = exhaustive_ng_scan(req.n, bounded=req.bounded, workers=req.workers)
        return result.to_census()

    @app.post("/witness", response_model=schemas.GroupReport)
    async def witness(req: schemas.WitnessRequest):
        return group_report(ng_witness(req.n))

    @app.post("/rho", response_model=schemas.RhoResponse)
    async def rho_endpoint(req: schemas.RhoRequest):
        maps = [Transformation.parse(text) for text in req.maps]
        result = try_group(maps)
        if isinstance(result, GroupRejection):
            return schemas.RhoResponse(rejection=result.to_report())
        quotient = rho(result)
        return schemas.RhoResponse(
            group=group_report(result),
            quotient=schemas.QuotientPermGroup(
                m=quotient.m,
                perms=[list(p) for p in quotient.perms],
                label_map={
                    k: list(v) for k, v in quotient.label_map(result).items()
                },
            ),
        )

    @app.post("/semidirect", response_model=schemas.SemidirectResponse)
    async def semidirect(req: schemas.SemidirectRequest):
        data = semidirect_q_p2(SemidirectSpec.parse(req.spec))
        return schemas.SemidirectResponse(
            p=data.spec.p,
            q=data.spec.q,
            a=data.spec.a,
            order=data.group.order,
            group=group_dump(data.group) | {"name": data.group.name},
            N=list(data.N.members),
            H=list(data.H.members),
            U=list(data.U.members),
            V=list(data.V.members),
            x=data.x,
            y=data.y,
        )

    @app.post("/thm33", response_model=schemas.ClaimReport)
    async def thm33(req: schemas.Thm33Request):
        return theorem33_report(SemidirectSpec.parse(req.spec))

    @app.post("/residual", response_model=schemas.SubgroupResponse)
    async def residual_endpoint(req: schemas.ResidualRequest):
        g = group_load(req.group.model_dump())
        cls = parse_class(req.group_class)
        sub = residual(g, cls, cap=max(g.order, 48))
        return schemas.SubgroupResponse(
            group_class=cls.name,
            members=list(sub.members),
            labels=[g.labels[i] for i in sub.members],
            order=sub.order,
        )

    @app.post("/radical", response_model=schemas.SubgroupResponse)
    async def radical_endpoint(req: schemas.ResidualRequest):
        g = group_load(req.group.model_dump())
        cls = parse_class(req.group_class)
        sub = radical(g, cls, cap=max(g.order, 48))
        return schemas.SubgroupResponse(
            group_class=cls.name,
            members=list(sub.members),
            labels=[g.labels[i] for i in sub.members],
            order=sub.order,
        )

    @app.post("/check-thm32", response_model=schemas.ClaimReport)
    async def check_thm32(req: schemas.CheckThm32Request):
        g = group_load(req.group.model_dump())
        cls = parse_class(req.group_class)
        u = Subgroup(g, tuple(req.u))
        v = Subgroup(g, tuple(req.v))
        return check_residual_product(g, u, v, cls, cap=max(g.order, 48))

    @app.post("/verify-all", response_model=schemas.VerifyAllResponse)
    async def verify_all(req: schemas.VerifyAllRequest):
        return run_all(max_n=req.max_n, seed=req.seed, workers=req.workers)

    return app


app = create_app()
