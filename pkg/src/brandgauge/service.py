"""HTTP JSON service over the scoring, consistency and ranking pipeline.

One process, one immutable model bundle and profile table loaded at
startup; every request is computed fresh from them, so concurrent
requests share nothing mutable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, model_validator

from . import classify, consistency, ranker
from .classify import ModelBundle, TRAITS, assess
from .cli import build_ranking_context
from .config import Config, load_config
from .consistency import CompanyProfile, compare_to_profile, profile_from_label
from .errors import BrandGaugeError
from .features import extract_features
from .ranker import CentralEntitySet, RankingContext
from .textcore import Document

__all__ = ["Service", "create_service", "create_app"]


class TargetSpec(BaseModel):
    company: Optional[str] = None
    label_vector: Optional[list[int]] = None
    rank_vector: Optional[list[int]] = None
    confidences: Optional[list[float]] = None

    @model_validator(mode="after")
    def _exactly_one_form(self):
        if (self.company is None) == (self.label_vector is None):
            raise ValueError("target needs exactly one of 'company' or 'label_vector'")
        return self


class AnalyzeOptions(BaseModel):
    k: int = Field(default=3, ge=1, le=10)
    sentence_sim: Optional[Literal["full", "hamming_only"]] = None
    seed: int = 0
    method: str = ranker.MASR3


class AnalyzeRequest(BaseModel):
    text: str = Field(min_length=1)
    target: TargetSpec
    central_aliases: Optional[list[str]] = None
    central_entities: Optional[list[str]] = None
    options: AnalyzeOptions = AnalyzeOptions()


class ScoreRequest(BaseModel):
    text: str = Field(min_length=1)
    company: Optional[str] = None


class ConsistencyRequest(BaseModel):
    text: str = Field(min_length=1)
    target: TargetSpec


@dataclass
class Service:
    app: FastAPI
    bundle: ModelBundle
    profiles: dict[str, CompanyProfile]
    ctx: RankingContext
    cfg: Config


def _profile_payload(profile: CompanyProfile) -> dict:
    return {
        "company": profile.company,
        "label_vector": list(profile.representative_label),
        "rank_vector": list(profile.representative_rank),
        "confidences": (
            list(profile.representative_confidences)
            if profile.representative_confidences is not None
            else None
        ),
        "static_post_count": profile.static_post_count,
    }


def _assessment_payload(assessment: classify.TraitAssessment) -> dict:
    return {
        "traits": list(TRAITS),
        "confidences": list(assessment.confidences),
        "label_vector": list(assessment.label_vector),
        "rank_vector": list(assessment.rank_vector),
    }


def _sentences_payload(ranked) -> list[dict]:
    return [
        {
            "sentence_index": r.index,
            "text": r.text,
            "relevance": r.relevance,
            "whether_neg": r.aspects.whether_neg,
            "neg_scr": r.aspects.neg_scr,
            "pos_scr": r.aspects.pos_scr,
            "whether_central": r.aspects.whether_central,
            "central_mentions": r.aspects.central_mentions,
            "sentence_bin_sim": r.aspects.sentence_bin_sim,
        }
        for r in ranked
    ]


def create_app(
    bundle: ModelBundle,
    profiles: dict[str, CompanyProfile],
    ctx: RankingContext,
    cfg: Config,
) -> FastAPI:
    app = FastAPI(title="brandgauge", version=bundle.version[:12] or "dev")

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        detail = [
            {"loc": [str(p) for p in err["loc"]], "msg": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.middleware("http")
    async def _body_size_limit(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and int(length) > cfg.max_body_bytes:
            return JSONResponse(status_code=413, content={"detail": "request body too large"})
        return await call_next(request)

    def resolve_profile(target: TargetSpec) -> CompanyProfile:
        if target.company is not None:
            profile = profiles.get(target.company)
            if profile is None:
                raise HTTPException(status_code=404, detail=f"unknown company: {target.company}")
            return profile
        try:
            return profile_from_label(
                company="",
                label=target.label_vector,
                rank=target.rank_vector,
                confidences=target.confidences,
            )
        except BrandGaugeError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    def score_text(text: str, company: Optional[str]) -> classify.TraitAssessment:
        doc = Document.from_text(text, company=company or "")
        aliases = [company] if company else ["unknown"]
        try:
            fv = extract_features(doc, ctx.lexicons, ctx.tfidf, aliases)
            return assess(bundle.models, fv)
        except BrandGaugeError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    def ranking_context_for(options: AnalyzeOptions) -> RankingContext:
        mode = options.sentence_sim or ctx.sentence_sim
        if mode == ctx.sentence_sim:
            return ctx
        return RankingContext(
            bundle=ctx.bundle,
            lexicons=ctx.lexicons,
            tfidf=ctx.tfidf,
            sentiment=ctx.sentiment,
            sentence_sim=mode,
        )

    def rank_sentences(req: AnalyzeRequest, profile: CompanyProfile):
        doc = Document.from_text(req.text, company=profile.company)
        central = CentralEntitySet.for_company(
            aliases=tuple(
                req.central_aliases
                or ([profile.company] if profile.company else [])
            ),
            curated=frozenset(req.central_entities or []),
            resolve_pronouns=True,
        )
        try:
            return ranker.rank_with_method(
                req.options.method,
                doc,
                profile,
                central,
                ranking_context_for(req.options),
                seed=req.options.seed,
                k=req.options.k,
            )
        except BrandGaugeError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "bundle_version": bundle.version}

    @app.get("/v1/profiles/{company}")
    async def get_profile(company: str):
        profile = profiles.get(company)
        if profile is None:
            raise HTTPException(status_code=404, detail=f"unknown company: {company}")
        return _profile_payload(profile)

    @app.post("/v1/score")
    async def score(req: ScoreRequest):
        assessment = score_text(req.text, req.company)
        return {"bundle_version": bundle.version, **_assessment_payload(assessment)}

    @app.post("/v1/consistency")
    async def consistency_endpoint(req: ConsistencyRequest):
        profile = resolve_profile(req.target)
        assessment = score_text(req.text, profile.company or None)
        report = compare_to_profile(assessment, profile)
        return {
            "bundle_version": bundle.version,
            "assessment": _assessment_payload(assessment),
            "consistency": {
                "bin_label_sim": report.bin_label_sim,
                "rank_label_sim": report.rank_label_sim,
                "level": report.level,
            },
        }

    @app.post("/v1/rank")
    async def rank_endpoint(req: AnalyzeRequest):
        profile = resolve_profile(req.target)
        ranked = rank_sentences(req, profile)
        return {
            "bundle_version": bundle.version,
            "method": req.options.method,
            "k": req.options.k,
            "sentences": _sentences_payload(ranked),
        }

    @app.post("/v1/analyze")
    async def analyze(req: AnalyzeRequest):
        profile = resolve_profile(req.target)
        assessment = score_text(req.text, profile.company or None)
        report = compare_to_profile(assessment, profile)
        ranked = rank_sentences(req, profile)
        return {
            "bundle_version": bundle.version,
            "target": _profile_payload(profile),
            "assessment": _assessment_payload(assessment),
            "consistency": {
                "bin_label_sim": report.bin_label_sim,
                "rank_label_sim": report.rank_label_sim,
                "level": report.level,
            },
            "sentences": _sentences_payload(ranked),
        }

    return app


def create_service(
    bundle_path: str,
    profiles_path: Optional[str] = None,
    cfg: Optional[Config] = None,
) -> Service:
    cfg = cfg or load_config()
    bundle = classify.load_bundle(bundle_path)
    ctx = build_ranking_context(bundle, cfg)
    profiles = consistency.load_profiles(profiles_path) if profiles_path else {}
    app = create_app(bundle, profiles, ctx, cfg)
    return Service(app=app, bundle=bundle, profiles=profiles, ctx=ctx, cfg=cfg)
