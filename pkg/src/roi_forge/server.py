"""Stateless HTTP facade over the evaluation engine.

Every request is independent; scenario bodies are parsed with the same exact
decimal handling as the CLI, and appraise responses are byte-identical to
`roi-forge appraise --format json` for the same scenario text.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from .appraisal import ScenarioEvaluationError, evaluate, sweep
from .baseline import baseline_text
from .money import MoneyError, parse_decimal
from .report import build_report, build_sweep_report, render_report_json
from .scenario import Diagnostic, Severity, build_scenario, parse_scenario


def _diagnostics_response(diagnostics: list[Diagnostic], status: int = 422) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={
            "diagnostics": [
                {"severity": d.severity.value, "path": d.path, "message": d.message}
                for d in diagnostics
            ]
        },
    )


def _error(path: str, message: str) -> list[Diagnostic]:
    return [Diagnostic(Severity.ERROR, path, message)]


def create_app(static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="roi-forge", docs_url=None, redoc_url=None)

    @app.get("/healthz")
    def healthz() -> PlainTextResponse:
        return PlainTextResponse("ok")

    @app.get("/api/v1/baseline")
    def baseline() -> Response:
        return Response(content=baseline_text(), media_type="application/json")

    @app.post("/api/v1/appraise")
    async def appraise(request: Request) -> Response:
        body = await request.body()
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError:
            return _diagnostics_response(_error("$", "body must be UTF-8 text"))
        scenario, diagnostics = parse_scenario(text)
        if scenario is None:
            return _diagnostics_response(diagnostics)
        try:
            ev = evaluate(scenario)
        except ScenarioEvaluationError as exc:
            return _diagnostics_response(exc.diagnostics)
        return Response(
            content=render_report_json(build_report(ev, scenario)),
            media_type="application/json",
        )

    @app.post("/api/v1/sweep")
    async def run_sweep(request: Request) -> Response:
        body = await request.body()
        try:
            doc = json.loads(body.decode("utf-8"), parse_float=str)
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            return _diagnostics_response(_error("$", f"malformed JSON body: {exc}"))
        if not isinstance(doc, dict) or not isinstance(doc.get("scenario"), dict):
            return _diagnostics_response(_error("scenario", "expected an object"))
        param = doc.get("param")
        if not isinstance(param, str) or not param:
            return _diagnostics_response(_error("param", "expected a parameter path"))
        raw_values = doc.get("values")
        if not isinstance(raw_values, list) or not raw_values:
            return _diagnostics_response(_error("values", "expected a non-empty list"))
        try:
            values = [
                parse_decimal(v) if isinstance(v, str) else parse_decimal(str(v))
                for v in raw_values
            ]
        except MoneyError as exc:
            return _diagnostics_response(_error("values", str(exc)))
        scenario, diagnostics = build_scenario(doc["scenario"])
        if scenario is None:
            return _diagnostics_response(diagnostics)
        try:
            results = sweep(scenario, param, values)
        except ScenarioEvaluationError as exc:
            return _diagnostics_response(exc.diagnostics)
        except ValueError as exc:
            return _diagnostics_response(_error("param", str(exc)))
        report = build_sweep_report(param, results, scenario.options.rounding)
        return Response(content=render_report_json(report), media_type="application/json")

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")
    return app
