"""Request/response bodies for the HTTP service.

File-shaped payloads (dataset tables, FASTA, model text, region lists)
travel as plain strings; the service owns parsing so the CLI stays a thin
transport.
"""

from __future__ import annotations

from pydantic import BaseModel


class TrainRequest(BaseModel):
    table: str
    n: int = 6
    size: int | None = None
    population: int = 50
    generations: int = 50
    select_top: int | None = None
    clone_budget: int | None = None
    editing_fraction: float = 0.1
    metric: str = "accuracy"
    seed: int = 0
    rate_min: float = 0.05
    rate_max: float = 0.5


class TrainResponse(BaseModel):
    model: str
    final_fitness: float
    best_fitness_per_generation: list[float]
    evaluations: int


class PredictRequest(BaseModel):
    model: str
    fasta: str
    task: str
    window: int | None = None
    stride: int | None = None
    threshold: float = 0.5
    format: str | None = None
    both_strands: bool = False
    positive_label: str = "C"


class EvaluateRequest(BaseModel):
    predictions: str
    truth: str
    sequence_length: int


class BasinsRequest(BaseModel):
    model: str | None = None
    rules: str | None = None
    n: int | None = None
    size: int | None = None


class FeaturesRequest(BaseModel):
    fasta: str
    task: str
    window: int | None = None
    stride: int | None = None


class ReportResponse(BaseModel):
    report: str


class HealthResponse(BaseModel):
    status: str
    version: str
