"""FastAPI service exposing the train/predict/evaluate/basins/features flows.

Domain exceptions map onto stable machine-readable codes so clients can
translate them without scraping messages:

    ParseError         -> 422 {"code": "input"}
    DimensionMismatch  -> 409 {"code": "mismatch"}
    ValueError (other) -> 400 {"code": "config"}
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..clonal_trainer import TrainerConfig
from ..errors import DimensionMismatch, ParseError
from ..maca_model import deserialize, serialize
from ..pipeline import (
    basins_report,
    evaluate_report,
    feature_dump,
    parse_rules_spec,
    predict_report,
    train_from_table,
)
from ..seq_ingest import parse_fasta
from .schemas import (
    BasinsRequest,
    EvaluateRequest,
    FeaturesRequest,
    HealthResponse,
    PredictRequest,
    ReportResponse,
    TrainRequest,
    TrainResponse,
)

app = FastAPI(title="ais-inmaca", version=__version__)


def _error(status: int, code: str, exc: Exception) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"detail": {"code": code, "message": str(exc)}},
    )


@app.exception_handler(ParseError)
async def _on_parse_error(request: Request, exc: ParseError) -> JSONResponse:
    return _error(422, "input", exc)


@app.exception_handler(DimensionMismatch)
async def _on_mismatch(request: Request, exc: DimensionMismatch) -> JSONResponse:
    return _error(409, "mismatch", exc)


@app.exception_handler(ValueError)
async def _on_value_error(request: Request, exc: ValueError) -> JSONResponse:
    return _error(400, "config", exc)


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/train", response_model=TrainResponse)
def train_endpoint(req: TrainRequest) -> TrainResponse:
    config = TrainerConfig(
        population=req.population,
        generations=req.generations,
        select_top=req.select_top,
        clone_budget=req.clone_budget,
        editing_fraction=req.editing_fraction,
        fitness_metric=req.metric,
        seed=req.seed,
        n=req.n,
        size=req.size,
        rate_min=req.rate_min,
        rate_max=req.rate_max,
    )
    model, report = train_from_table(req.table, config)
    return TrainResponse(
        model=serialize(model),
        final_fitness=report.final_fitness,
        best_fitness_per_generation=list(report.best_fitness_per_generation),
        evaluations=report.evaluations,
    )


@app.post("/predict", response_model=ReportResponse)
def predict_endpoint(req: PredictRequest) -> ReportResponse:
    model = deserialize(req.model)
    records = parse_fasta(req.fasta)
    report = predict_report(
        model,
        records,
        req.task,
        window=req.window,
        stride=req.stride,
        threshold=req.threshold,
        fmt=req.format,
        both_strands=req.both_strands,
        positive_label=req.positive_label,
    )
    return ReportResponse(report=report)


@app.post("/evaluate", response_model=ReportResponse)
def evaluate_endpoint(req: EvaluateRequest) -> ReportResponse:
    return ReportResponse(
        report=evaluate_report(req.predictions, req.truth, req.sequence_length)
    )


@app.post("/basins", response_model=ReportResponse)
def basins_endpoint(req: BasinsRequest) -> ReportResponse:
    if (req.model is None) == (req.rules is None):
        raise ValueError("provide exactly one of 'model' or 'rules'")
    if req.model is not None:
        model = deserialize(req.model)
        rules = model.rules
        n = model.levels.n
    else:
        if req.n is None:
            raise ValueError("'rules' mode requires 'n'")
        rules = parse_rules_spec(req.rules, size=req.size)
        n = req.n
    return ReportResponse(report=basins_report(rules, n))


@app.post("/features", response_model=ReportResponse)
def features_endpoint(req: FeaturesRequest) -> ReportResponse:
    records = parse_fasta(req.fasta)
    return ReportResponse(
        report=feature_dump(records, req.task, window=req.window, stride=req.stride)
    )
