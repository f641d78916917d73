"""HTTP service exposing the group engine.

All computation lives in the core modules; this layer translates JSON
requests into engine calls and dataclass results back into JSON.  The
command-line client drives this same app in-process, so everything the
CLI does is equally available over HTTP.
"""
from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import __version__, catalog
from .group import PermGroup
from .perm import CycleParseError
from .sums import IsoSpec, decompose, direct_sum, parallel_multiple, parallel_sum
from .symmetry import (DEFAULT_LABELING_BUDGET, DEFAULT_SWEEP_BUDGET,
                       distinguishing_number, find_regular_set, orbitals,
                       regular_set_size_census)

app = FastAPI(title="symbreak", version=__version__)


# ---------------------------------------------------------------------------
# request/response models


class GroupSpec(BaseModel):
    """A group given either by designator or by explicit generators."""
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    degree: Optional[int] = Field(default=None, ge=0)
    generators: Optional[list[str]] = None


class GroupInfo(BaseModel):
    degree: int
    order: int
    generators: list[str]
    orbits: list[list[int]]
    fixed_points: list[int]
    transitive: bool
    primitive: Optional[bool] = None
    identified: Optional[str] = None


class InfoRequest(BaseModel):
    group: GroupSpec


class RegularSetRequest(BaseModel):
    group: GroupSpec
    sizes: Optional[list[int]] = None
    mode: str = "exhaustive"
    budget: int = DEFAULT_SWEEP_BUDGET
    seed: int = 0
    census: bool = False


class RegularSetResponse(BaseModel):
    status: str                      # found | none | inconclusive
    set: Optional[list[int]] = None
    mode: str
    budget_used: int = 0
    detail: str = ""
    census: Optional[dict[int, Optional[list[int]]]] = None


class DistinguishingRequest(BaseModel):
    group: GroupSpec
    k_max: int = 8
    budget: int = DEFAULT_LABELING_BUDGET
    sweep_budget: int = DEFAULT_SWEEP_BUDGET
    seed: int = 0


class DistinguishingResponse(BaseModel):
    status: str                      # exact | inconclusive
    value: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None
    labels: Optional[list[int]] = None
    detail: str = ""


class OrbitalsRequest(BaseModel):
    group: GroupSpec
    ordered: bool = True


class OrbitalsResponse(BaseModel):
    ordered: bool
    count: int
    orbitals: list[list[list[int]]]


class SumRequest(BaseModel):
    kind: str                        # direct | parallel | multiple
    components: list[GroupSpec]
    r: int = 2
    pairs: Optional[list[list[str]]] = None


class DecomposeRequest(BaseModel):
    group: GroupSpec
    split: Optional[list[list[int]]] = None


class DecomposeResponse(BaseModel):
    blocks: list[list[int]]
    constituents: list[GroupInfo]
    kernel_orders: list[int]
    pairs: list[list[str]]
    rebuilt_order: int


class CatalogEntryModel(BaseModel):
    id: str
    name: str
    kind: str
    suite: str
    degree: int
    order: int
    generators: list[str]
    blocks: list[int]
    abstract: Optional[str] = None
    D: Optional[int] = None
    D_basis: Optional[str] = None
    no_regular_set: bool
    regular_set: list[int]
    regular_set_in: str
    regular_set_sizes: list[int]
    repairs: list[str]
    aliases: list[str]
    nonpermutation_pairing: bool


class VerifyRequest(BaseModel):
    suite: str = "all"
    effort: str = "full"
    labeling_budget: int = catalog.VERIFY_LABELING_BUDGET
    sweep_budget: int = DEFAULT_SWEEP_BUDGET
    seed: int = 0


class CheckModel(BaseModel):
    name: str
    status: str
    detail: str = ""


class ReportModel(BaseModel):
    entry_id: str
    status: str
    elapsed: float
    checks: list[CheckModel]


class VerifyResponse(BaseModel):
    status: str                      # pass | fail | inconclusive
    reports: list[ReportModel]


# ---------------------------------------------------------------------------
# helpers


def _resolve(spec: GroupSpec) -> PermGroup:
    try:
        if spec.name is not None:
            if spec.degree is not None or spec.generators is not None:
                raise ValueError("give either a name or explicit generators")
            return catalog.build_named(spec.name)
        if spec.degree is None or spec.generators is None:
            raise ValueError("group needs a name, or degree plus generators")
        return PermGroup.from_cycles(spec.generators, spec.degree)
    except (KeyError, ValueError, CycleParseError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def _info(G: PermGroup) -> GroupInfo:
    transitive = G.is_transitive()
    ident = None
    if transitive and G.degree >= 1:
        ident = catalog.identify(G)
    return GroupInfo(
        degree=G.degree,
        order=G.order(),
        generators=[str(g) for g in G.generators],
        orbits=[sorted(o) for o in G.orbits()],
        fixed_points=sorted(G.fixed_points()),
        transitive=transitive,
        primitive=G.is_primitive() if transitive else None,
        identified=ident,
    )


def _report_model(rep: catalog.VerificationReport) -> ReportModel:
    return ReportModel(
        entry_id=rep.entry_id, status=rep.status, elapsed=rep.elapsed,
        checks=[CheckModel(name=c.name, status=c.status, detail=c.detail)
                for c in rep.checks])


# ---------------------------------------------------------------------------
# endpoints


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/group/info", response_model=GroupInfo)
def group_info(req: InfoRequest) -> GroupInfo:
    return _info(_resolve(req.group))


@app.post("/group/regular-set", response_model=RegularSetResponse)
def group_regular_set(req: RegularSetRequest) -> RegularSetResponse:
    G = _resolve(req.group)
    if req.sizes is not None and (len(req.sizes) != 2
                                  or req.sizes[0] > req.sizes[1]):
        raise HTTPException(status_code=400,
                            detail="sizes must be an inclusive [lo, hi] pair")
    if req.census:
        if not req.sizes:
            raise HTTPException(status_code=400,
                                detail="census requires explicit sizes")
        got = regular_set_size_census(G, req.sizes, budget=req.budget)
        found = {s: (sorted(v) if v else None) for s, v in got.items()}
        any_found = any(v is not None for v in found.values())
        return RegularSetResponse(status="found" if any_found else "none",
                                  mode="exhaustive", census=found)
    try:
        out = find_regular_set(G, sizes=req.sizes, mode=req.mode,
                               budget=req.budget, seed=req.seed)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    return RegularSetResponse(
        status=out.status,
        set=sorted(out.report.set) if out.report else None,
        mode=out.mode, budget_used=out.budget_used, detail=out.detail)


@app.post("/group/distinguishing", response_model=DistinguishingResponse)
def group_distinguishing(req: DistinguishingRequest) -> DistinguishingResponse:
    G = _resolve(req.group)
    rep = distinguishing_number(G, k_max=req.k_max, budget=req.budget,
                                sweep_budget=req.sweep_budget, seed=req.seed)
    return DistinguishingResponse(
        status=rep.status, value=rep.value, lower=rep.lower, upper=rep.upper,
        labels=list(rep.witness.labels) if rep.witness else None,
        detail=rep.detail)


@app.post("/group/orbitals", response_model=OrbitalsResponse)
def group_orbitals(req: OrbitalsRequest) -> OrbitalsResponse:
    G = _resolve(req.group)
    obs = orbitals(G, ordered=req.ordered)
    return OrbitalsResponse(
        ordered=req.ordered, count=len(obs),
        orbitals=[sorted([list(p) for p in ob]) for ob in obs])


@app.post("/group/sum", response_model=GroupInfo)
def group_sum(req: SumRequest) -> GroupInfo:
    groups = [_resolve(c) for c in req.components]
    try:
        if req.kind == "direct":
            if len(groups) < 2:
                raise ValueError("direct sum needs at least two components")
            return _info(direct_sum(*groups))
        if req.kind == "multiple":
            if len(groups) != 1:
                raise ValueError("multiple takes exactly one component")
            return _info(parallel_multiple(groups[0], req.r))
        if req.kind == "parallel":
            if len(groups) != 2:
                raise ValueError("parallel sum takes exactly two components")
            src, tgt = groups
            if req.pairs is not None:
                iso = IsoSpec.from_cycles(src, tgt, req.pairs)
            elif len(src.generators) == len(tgt.generators):
                iso = IsoSpec(src, tgt,
                              list(zip(src.generators, tgt.generators)))
            else:
                raise ValueError("generator counts differ; give explicit pairs")
            return _info(parallel_sum(iso))
        raise ValueError(f"unknown sum kind {req.kind!r}")
    except (ValueError, CycleParseError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


@app.post("/group/decompose", response_model=DecomposeResponse)
def group_decompose(req: DecomposeRequest) -> DecomposeResponse:
    G = _resolve(req.group)
    split = req.split
    if split is None:
        orbs = [sorted(o) for o in G.orbits()]
        if len(orbs) < 2:
            raise HTTPException(status_code=400,
                                detail="group is transitive; nothing to split")
        split = [orbs[0], sorted(x for o in orbs[1:] for x in o)]
    elif len(split) != 2:
        raise HTTPException(status_code=400,
                            detail="split must have exactly two parts")
    try:
        dec = decompose(G, split)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    return DecomposeResponse(
        blocks=[list(b) for b in dec.block_split],
        constituents=[_info(c) for c in dec.constituents],
        kernel_orders=[K.order() for K in dec.kernels],
        pairs=[[str(a), str(b)] for a, b in dec.iso_pairs],
        rebuilt_order=dec.rebuild().order())


@app.get("/catalog", response_model=list[CatalogEntryModel])
def catalog_list() -> list[CatalogEntryModel]:
    out = []
    for e in catalog.load_catalog():
        out.append(CatalogEntryModel(
            id=e.id, name=e.name, kind=e.kind, suite=e.suite,
            degree=e.degree, order=e.order, generators=list(e.generators),
            blocks=list(e.blocks), abstract=e.abstract, D=e.D,
            D_basis=e.D_basis, no_regular_set=e.no_regular_set,
            regular_set=list(e.regular_set), regular_set_in=e.regular_set_in,
            regular_set_sizes=list(e.regular_set_sizes),
            repairs=list(e.repairs), aliases=list(e.aliases),
            nonpermutation_pairing=e.nonpermutation_pairing))
    return out


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    try:
        reports = catalog.verify_suite(
            req.suite, req.effort, labeling_budget=req.labeling_budget,
            sweep_budget=req.sweep_budget, seed=req.seed)
    except (KeyError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    models = [_report_model(r) for r in reports]
    status = "pass"
    if any(m.status == "fail" for m in models):
        status = "fail"
    elif any(m.status == "inconclusive" for m in models):
        status = "inconclusive"
    return VerifyResponse(status=status, reports=models)
