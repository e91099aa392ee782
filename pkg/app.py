import json
from typing import Optional

from fastapi import FastAPI, UploadFile, File, Depends
from fastapi.responses import JSONResponse
from sqlalchemy.orm import Session

from db import init_db, get_db
from controllers import GraphController, ProfileController, ResultsController, SetpointController
from models.errors import ConfigError, DepallocError, ValidationError
from views import RunView, SetpointView

app = FastAPI(title="depalloc")


def _error(error: DepallocError) -> JSONResponse:
    status_code = 422 if isinstance(error, ValidationError) else 400
    return JSONResponse(status_code=status_code, content=error.to_dict())


async def _read_json(upload: UploadFile, what: str):
    raw = await upload.read()
    try:
        return json.loads(raw)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ConfigError(f"{what} is not valid JSON: {e}")


@app.post("/validate")
async def validate(file: UploadFile = File(...)):
    try:
        graph, _ = GraphController.from_document(await _read_json(file, "application file"))
    except DepallocError as e:
        return _error(e)

    return {
        "valid": True,
        "app": graph.name,
        "functions": len(graph.functions),
        "edges": len(graph.edges),
        "entrypoints": graph.entrypoints(),
        "order": list(graph.order),
    }


@app.post("/setpoints")
async def setpoints(
    file: UploadFile = File(...),
    profile: Optional[UploadFile] = File(None),
    alpha: float = 0.5,
):
    try:
        graph, perf = GraphController.from_document(await _read_json(file, "application file"))
        if profile is not None:
            nlrt = ProfileController.from_document(await _read_json(profile, "profile file"))
        else:
            nlrt = ProfileController.profile_via_simulation(graph, perf)
        nominal = ProfileController.compose_nominal(graph, nlrt)
        table = SetpointController.propagate(graph, nominal, graph.entry_slas(), alpha)
    except DepallocError as e:
        return _error(e)

    return SetpointView.format_report(graph, table, nominal)


@app.get("/runs/{run_id}")
async def get_run(run_id: int, db: Session = Depends(get_db)):
    # Controller: Retrieve run from database
    run = ResultsController.get_by_id(db, run_id)

    if not run:
        return JSONResponse(status_code=404, content={"error": "Run not found"})

    # View: Format run for response
    return RunView.format_run(run)


@app.get("/runs/app/{app_name}")
async def get_runs_by_app(app_name: str, db: Session = Depends(get_db)):
    runs = ResultsController.get_by_app(db, app_name)
    return RunView.format_app_response(app_name, runs)


if __name__ == "__main__":  # pragma: no cover
    import uvicorn

    init_db()
    uvicorn.run(app, host="0.0.0.0", port=8080)
