"""HTTP/JSON facade over the sweep engine.

Endpoints: POST /runs, GET /runs/{id}, GET /runs/{id}/events (SSE),
GET /runs/{id}/plot.svg, DELETE /runs/{id}, GET /health.

Short runs are answered synchronously; long ones get a 202 with a run
id, stream step events, and can be cancelled.  The server keeps no
session state beyond the in-memory run registry: the resolved spectrum
(eigenvalues plus seed) is echoed in every response so a client can
resubmit it as a prescribed spectrum to continue from "previous".
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import asdict

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.responses import StreamingResponse
from pydantic import BaseModel, ConfigDict, Field

from .errors import QuanticipateError
from .exports import PlotKind, plot_svg
from .spectra import Spectrum, SpectrumKind
from .sweep import (
    Direction,
    MeasureKind,
    RunConfig,
    SEEK_MODES,
    SearchMode,
    SeekPredicate,
    SeekResult,
    StatsAccumulator,
    StepRecord,
    SweepStats,
    planned_steps,
    run_continuous,
    run_random,
    run_single,
    seek_many,
)

SYNC_STEP_LIMIT = 2000      # larger runs answer 202 and stream progress
PAGE_SIZE = 10_000          # series pagination threshold and default page

_MODE_PREDICATE = {
    SearchMode.SEEK_POSITIVE: SeekPredicate.POSITIVE,
    SearchMode.SEEK_EQUAL: SeekPredicate.EQUAL,
    SearchMode.SEEK_DIM_CHANGE: SeekPredicate.DIM_CHANGE,
}


class RunRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    mode: SearchMode
    spectrum: SpectrumKind = SpectrumKind.H_ATOM
    dimension: int = 3
    order: int = 1
    location: float = -0.5
    t_from: float = Field(0.0, alias="from")
    t_to: float = Field(72.0, alias="to")
    step: float = 0.01
    measure: MeasureKind = MeasureKind.OPTIMUM
    seed: int | None = None
    direction: Direction = Direction.FORWARD
    repeat: int = Field(1, ge=1)
    max_steps: int | None = Field(None, ge=1)
    prescribed_spectrum: list[float] | None = None
    prescribed_measure: list[float] | None = None
    previous_measure: list[float] | None = None


class SpectrumModel(BaseModel):
    eigenvalues: list[float]
    kind: SpectrumKind
    seed: int | None


class StatsModel(BaseModel):
    steps: int
    non_narrow_count: int
    non_narrow_fraction: float
    degenerate_count: int
    degenerate_fraction: float
    singular_count: int
    singular_fraction: float
    positive_count: int
    positive_fraction: float
    zero_count: int
    zero_fraction: float
    avg_nonzero_dimension: float
    max_measure: float
    avg_variance: float
    avg_probability: float
    max_probability: float
    avg_anticipation: float
    max_anticipation: float
    time_of_maximum: float | None


class StepModel(BaseModel):
    index: int
    T: float
    non_narrow: bool
    degenerate: bool
    singular: bool
    positive: bool
    zero_dim: bool
    anticipation: float
    probability: float
    variance: float
    nonzero_dimension: int
    max_weight: float
    measure: list[float] | None = None
    positions: list[float] | None = None
    original_indices: list[int] | None = None


class SeriesPage(BaseModel):
    total: int
    offset: int
    count: int
    items: list[StepModel]


class HitModel(BaseModel):
    T: float
    steps_taken: int
    record: StepModel


class RunResponse(BaseModel):
    id: str
    status: str
    mode: SearchMode
    seed: int | None
    spectrum: SpectrumModel | None
    planned_steps: int | None
    cancelled: bool
    stats: StatsModel | None
    series: SeriesPage | None
    hits: list[HitModel] | None
    error: str | None = None


def _step_model(rec: StepRecord, with_measure: bool) -> StepModel:
    payload = StepModel(
        index=rec.index,
        T=rec.T,
        non_narrow=rec.non_narrow,
        degenerate=rec.degenerate,
        singular=rec.singular,
        positive=rec.positive,
        zero_dim=rec.zero_dim,
        anticipation=rec.lookahead,
        probability=rec.total_prob,
        variance=rec.variance,
        nonzero_dimension=rec.nonzero_dimension,
        max_weight=rec.max_weight,
    )
    if with_measure and rec.measure is not None:
        payload.measure = [float(x) for x in rec.measure]
        payload.positions = [float(x) for x in rec.positions]
        payload.original_indices = [int(x) for x in rec.original_indices]
    return payload


def _spectrum_model(spectrum: Spectrum) -> SpectrumModel:
    return SpectrumModel(
        eigenvalues=[float(x) for x in spectrum.eigenvalues],
        kind=spectrum.kind,
        seed=spectrum.seed,
    )


def _stats_model(stats: SweepStats) -> StatsModel:
    return StatsModel(**asdict(stats))


class _RunState:
    """Registry entry for one run; mutation is lock-protected."""

    def __init__(self, run_id: str, request: RunRequest, config: RunConfig):
        self.id = run_id
        self.request = request
        self.config = config
        self.status = "running"
        self.cancel = threading.Event()
        self.lock = threading.Lock()
        self.events: list[dict] = []
        self.new_event = threading.Condition(self.lock)
        self.records: list[StepRecord] = []
        self.spectrum: Spectrum | None = None
        self.seed: int | None = None
        self.stats: SweepStats | None = None
        self.cancelled = False
        self.hits: list[SeekResult] | None = None
        self.error: str | None = None
        self.planned: int | None = None

    def emit(self, event: dict) -> None:
        with self.new_event:
            self.events.append(event)
            self.new_event.notify_all()

    def finish(self, status: str) -> None:
        with self.new_event:
            self.status = status
            self.new_event.notify_all()


def _config_from_request(req: RunRequest) -> RunConfig:
    kwargs = dict(
        mode=req.mode,
        spectrum_kind=req.spectrum,
        dimension=req.dimension,
        order=req.order,
        location=req.location,
        t_from=req.t_from,
        t_to=req.t_to,
        step_size=req.step,
        measure_kind=req.measure,
        seed=req.seed,
        direction=req.direction,
    )
    if req.max_steps is not None:
        kwargs["max_steps"] = req.max_steps
    if req.prescribed_spectrum is not None:
        kwargs["prescribed_spectrum"] = np.asarray(req.prescribed_spectrum, dtype=float)
    if req.prescribed_measure is not None:
        kwargs["prescribed_measure"] = np.asarray(req.prescribed_measure, dtype=float)
    if req.previous_measure is not None:
        kwargs["previous_measure"] = np.asarray(req.previous_measure, dtype=float)
    return RunConfig(**kwargs)


def _execute(state: _RunState) -> None:
    """Run to completion, recording step events; never raises."""
    config = state.config
    try:
        if config.mode in SEEK_MODES:
            outcomes = seek_many(
                config,
                _MODE_PREDICATE[config.mode],
                state.request.repeat,
                cancel=state.cancel,
            )
            hits = [o for o in outcomes if o.found]
            with state.lock:
                state.spectrum = outcomes[0].spectrum
                state.seed = outcomes[0].seed
                state.hits = hits
                state.records = [o.record for o in hits]
                acc = StatsAccumulator()
                for o in hits:
                    acc.add(o.record)
                state.stats = acc.finish()
            for o in hits:
                state.emit({"event": "hit", "T": o.record.T,
                            "steps_taken": o.steps_taken})
            done = state.cancel.is_set() and not hits
            state.cancelled = done
            state.finish("cancelled" if done else "completed")
            return

        def progress(index: int, T: float, rec: StepRecord) -> None:
            with state.lock:
                state.records.append(rec)
            state.emit({
                "event": "step",
                "index": index,
                "T": T,
                "non_narrow": rec.non_narrow,
                "degenerate": rec.degenerate,
                "singular": rec.singular,
                "positive": rec.positive,
                "zero_dim": rec.zero_dim,
                "anticipation": rec.lookahead,
                "probability": rec.total_prob,
                "variance": rec.variance,
            })

        if config.mode is SearchMode.SINGLE:
            result = run_single(config)
            with state.lock:
                state.records = list(result.series)
        elif config.mode is SearchMode.RANDOM:
            result = run_random(config, progress=progress, cancel=state.cancel)
        else:
            result = run_continuous(config, progress=progress, cancel=state.cancel)
        with state.lock:
            state.spectrum = result.spectrum
            state.seed = result.seed
            state.stats = result.stats
            state.cancelled = result.cancelled
        state.finish("cancelled" if result.cancelled else "completed")
    except (QuanticipateError, ValueError) as exc:
        state.error = str(exc)
        state.finish("failed")


def _response_for(state: _RunState, offset: int, limit: int) -> RunResponse:
    with state.lock:
        status = state.status
        records = list(state.records)
        stats = state.stats
        spectrum = state.spectrum
        seed = state.seed
        hits = state.hits
        cancelled = state.cancelled
        error = state.error
    with_measure = state.config.mode not in (SearchMode.CONTINUOUS, SearchMode.RANDOM)
    total = len(records)
    window = records[offset : offset + limit]
    series = SeriesPage(
        total=total,
        offset=offset,
        count=len(window),
        items=[_step_model(rec, with_measure) for rec in window],
    )
    return RunResponse(
        id=state.id,
        status=status,
        mode=state.config.mode,
        seed=seed,
        spectrum=None if spectrum is None else _spectrum_model(spectrum),
        planned_steps=state.planned,
        cancelled=cancelled,
        stats=None if stats is None else _stats_model(stats),
        series=series,
        hits=None if hits is None else [
            HitModel(T=o.record.T, steps_taken=o.steps_taken,
                     record=_step_model(o.record, True))
            for o in hits
        ],
        error=error,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="quanticipate", version="1.0")
    runs: dict[str, _RunState] = {}
    registry_lock = threading.Lock()
    counter = itertools.count(1)

    def _get_state(run_id: str) -> _RunState:
        with registry_lock:
            state = runs.get(run_id)
        if state is None:
            raise HTTPException(status_code=404, detail=f"unknown run {run_id!r}")
        return state

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/runs")
    def submit_run(request: RunRequest, response: Response) -> RunResponse:
        try:
            config = _config_from_request(request)
        except (ValueError, QuanticipateError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

        with registry_lock:
            run_id = f"run-{next(counter)}"
            state = _RunState(run_id, request, config)
            runs[run_id] = state

        if config.mode in SEEK_MODES:
            state.planned = config.max_steps * request.repeat
        elif config.mode is SearchMode.SINGLE:
            state.planned = 1
        else:
            state.planned = planned_steps(config)

        if state.planned <= SYNC_STEP_LIMIT:
            _execute(state)
            return _response_for(state, 0, PAGE_SIZE)

        thread = threading.Thread(target=_execute, args=(state,), daemon=True)
        thread.start()
        response.status_code = 202
        return _response_for(state, 0, 0)

    @app.get("/runs/{run_id}")
    def get_run(
        run_id: str,
        offset: int = Query(0, ge=0),
        limit: int = Query(PAGE_SIZE, ge=0, le=PAGE_SIZE),
    ) -> RunResponse:
        return _response_for(_get_state(run_id), offset, limit)

    @app.get("/runs/{run_id}/events")
    def get_events(run_id: str) -> StreamingResponse:
        state = _get_state(run_id)

        def stream():
            cursor = 0
            while True:
                with state.new_event:
                    while cursor >= len(state.events) and state.status == "running":
                        state.new_event.wait(timeout=1.0)
                    batch = state.events[cursor:]
                    cursor += len(batch)
                    finished = state.status != "running"
                for event in batch:
                    yield f"data: {json.dumps(event, sort_keys=True)}\n\n"
                if finished and cursor >= len(state.events):
                    yield f'data: {{"event": "done", "status": "{state.status}"}}\n\n'
                    return

        return StreamingResponse(stream(), media_type="text/event-stream")

    @app.get("/runs/{run_id}/plot.svg")
    def get_plot(run_id: str) -> Response:
        state = _get_state(run_id)
        with state.lock:
            records = list(state.records)
        if not records:
            raise HTTPException(status_code=409, detail="no evaluated steps yet")
        if state.config.mode in (SearchMode.CONTINUOUS, SearchMode.RANDOM):
            svg = plot_svg(records, PlotKind.CURVES, order=state.config.order)
        else:
            svg = plot_svg(records[-1], PlotKind.SPECTRUM_BARS)
        return Response(content=svg, media_type="image/svg+xml")

    @app.delete("/runs/{run_id}")
    def cancel_run(run_id: str) -> dict:
        state = _get_state(run_id)
        state.cancel.set()
        with state.lock:
            status = state.status
        return {"id": run_id, "status": status if status != "running" else "cancelling"}

    return app


app = create_app()
