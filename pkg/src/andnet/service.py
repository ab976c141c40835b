"""HTTP service exposing the disambiguation pipeline.

Corpora travel inline as JSON (the same paper objects as the JSONL file
format), clusterings as mention->cluster mappings. Data errors map to
HTTP 400 with the library's one-line diagnostics.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .corpus import AuthorMention, Clustering, Corpus, PaperRecord, filter_papers
from .errors import AndnetError
from .evalmetrics import evaluate
from .generator import SyntheticSpec, generate_synthetic
from .heuristic import ScoredPair
from .names import NicknameTable, OriginList
from .netstats import build_graph, compute_stats, cumulative_distribution, productivity
from .report import METHODS, compare_report, run_method

app = FastAPI(
    title="andnet",
    description="Author name disambiguation and coauthorship-network distortion measurement",
)


class AuthorIn(BaseModel):
    surname: str
    given: str = ""
    given_full: str | None = None
    affiliations: list[str] = Field(default_factory=list)
    email: str | None = None


class PaperIn(BaseModel):
    paper_id: str
    year: int | None = None
    venue: str | None = None
    authors: list[AuthorIn]


def _corpus_from(papers: list[PaperIn], apply_filter: bool = True) -> Corpus:
    records = []
    for paper in papers:
        mentions = tuple(
            AuthorMention(
                mention_id=f"{paper.paper_id}:{i}",
                surname_raw=a.surname,
                given_raw=a.given,
                given_full_raw=a.given_full,
                affiliations=tuple(a.affiliations),
                email=a.email,
            )
            for i, a in enumerate(paper.authors)
        )
        records.append(PaperRecord(paper.paper_id, mentions, paper.year, paper.venue))
    corpus = Corpus(records)
    return filter_papers(corpus) if apply_filter else corpus


def _papers_out(corpus: Corpus) -> list[dict]:
    out = []
    for paper in corpus.papers:
        out.append(
            {
                "paper_id": paper.paper_id,
                "year": paper.year,
                "venue": paper.venue,
                "authors": [
                    {
                        "surname": m.surname_raw,
                        "given": m.given_raw,
                        "given_full": m.given_full_raw,
                        "affiliations": list(m.affiliations),
                        "email": m.email,
                    }
                    for m in paper.authors
                ],
            }
        )
    return out


def _scored_out(pairs: tuple[ScoredPair, ...]) -> list[dict]:
    return [
        {"a": p.a, "b": p.b, "kind": p.kind.value, "total": p.total} for p in pairs
    ]


class GenerateRequest(BaseModel):
    n_authors: int
    n_papers: int
    seed: int = 0
    team_size_mean: float = 3.5
    collision_pool_share: float = 0.0
    full_given_name_probability: float = 0.85
    email_coverage: float = 0.9
    affiliation_coverage: float = 0.95
    two_token_given_probability: float = 0.35
    middle_dropout_probability: float = 0.25
    surname_pool_size: int = 1500
    surname_zipf_exponent: float = 1.1


class GenerateResponse(BaseModel):
    papers: list[PaperIn]
    truth: dict[str, str]
    origin_surnames: list[str]


class DisambiguateRequest(BaseModel):
    method: str
    papers: list[PaperIn]
    nicknames: list[tuple[str, str]] | None = None
    origins: list[str] = Field(default_factory=list)


class DisambiguateResponse(BaseModel):
    method: str
    assignment: dict[str, str]
    n_clusters: int
    review_pairs: list[dict]
    blocked_merges: list[dict]


class EvaluateRequest(BaseModel):
    truth: dict[str, str]
    predicted: dict[str, str]


class StatsRequest(BaseModel):
    papers: list[PaperIn]
    assignment: dict[str, str]
    include_distributions: bool = False


class CompareRequest(BaseModel):
    papers: list[PaperIn]
    truth: dict[str, str]
    methods: list[str] = Field(default_factory=lambda: ["fd", "ad", "hd"])
    origins: list[str] = Field(default_factory=list)
    nicknames: list[tuple[str, str]] | None = None


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/generate", response_model=GenerateResponse)
def generate(req: GenerateRequest) -> GenerateResponse:
    try:
        spec = SyntheticSpec(
            n_authors=req.n_authors,
            n_papers=req.n_papers,
            team_size_mean=req.team_size_mean,
            collision_pool_share=req.collision_pool_share,
            full_given_name_probability=req.full_given_name_probability,
            email_coverage=req.email_coverage,
            affiliation_coverage=req.affiliation_coverage,
            two_token_given_probability=req.two_token_given_probability,
            middle_dropout_probability=req.middle_dropout_probability,
            surname_pool_size=req.surname_pool_size,
            surname_zipf_exponent=req.surname_zipf_exponent,
            seed=req.seed,
        )
        result = generate_synthetic(spec)
    except AndnetError as exc:
        raise _bad_request(exc) from exc
    return GenerateResponse(
        papers=[PaperIn(**p) for p in _papers_out(result.corpus)],
        truth=result.truth.assignment,
        origin_surnames=list(result.origin_surnames),
    )


@app.post("/disambiguate", response_model=DisambiguateResponse)
def disambiguate(req: DisambiguateRequest) -> DisambiguateResponse:
    if req.method not in METHODS:
        raise HTTPException(
            status_code=400,
            detail=f"unknown method {req.method!r} (choose from {', '.join(METHODS)})",
        )
    try:
        corpus = _corpus_from(req.papers)
        nicknames = NicknameTable(list(req.nicknames)) if req.nicknames else None
        clustering, details = run_method(
            req.method, corpus, nicknames=nicknames, origins=OriginList(req.origins)
        )
    except AndnetError as exc:
        raise _bad_request(exc) from exc
    return DisambiguateResponse(
        method=req.method,
        assignment=clustering.assignment,
        n_clusters=clustering.n_clusters,
        review_pairs=_scored_out(details.review_pairs) if details else [],
        blocked_merges=_scored_out(details.blocked_merges) if details else [],
    )


@app.post("/evaluate")
def evaluate_endpoint(req: EvaluateRequest) -> dict:
    try:
        report = evaluate(Clustering(req.predicted), Clustering(req.truth))
    except AndnetError as exc:
        raise _bad_request(exc) from exc
    return report.as_dict()


@app.post("/stats")
def stats_endpoint(req: StatsRequest) -> dict:
    try:
        corpus = _corpus_from(req.papers)
        clustering = Clustering(req.assignment)
        stats = compute_stats(corpus, clustering)
        out = stats.as_dict()
        if req.include_distributions:
            prod = productivity(corpus, clustering)
            deg = build_graph(corpus, clustering).degrees()
            out["distributions"] = {
                "productivity": [
                    list(p) for p in cumulative_distribution(list(prod.values())).points
                ],
                "degree": [
                    list(p) for p in cumulative_distribution(list(deg.values())).points
                ],
            }
    except AndnetError as exc:
        raise _bad_request(exc) from exc
    return out


@app.post("/compare")
def compare_endpoint(req: CompareRequest) -> dict:
    for name in req.methods:
        if name not in METHODS:
            raise HTTPException(status_code=400, detail=f"unknown method {name!r}")
    try:
        corpus = _corpus_from(req.papers)
        origins = OriginList(req.origins) if req.origins else None
        nicknames = NicknameTable(list(req.nicknames)) if req.nicknames else None
        return compare_report(
            corpus,
            Clustering(req.truth),
            methods=tuple(req.methods),
            nicknames=nicknames,
            origins=origins,
        )
    except AndnetError as exc:
        raise _bad_request(exc) from exc
