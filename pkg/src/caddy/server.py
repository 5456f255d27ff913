"""Tablet feedback server: WebSocket endpoint /ws plus static tablet assets.

All tablet connections funnel into the session's single input queue; every
feedback message is broadcast to every connected tablet in seq order. The
first frame a client receives is a hello carrying the gesture alphabet,
followed by a state snapshot.
"""

import asyncio
import contextlib
import json
import logging
import os
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from .config import SessionConfig
from .session import Session
from .tokens import ALPHABET
from .wire import ACTION_TYPES, ActionDecodeError, decode_action

logger = logging.getLogger(__name__)


def hello_frame() -> str:
    return json.dumps(
        {
            "type": "hello",
            "alphabet": [tok.mnemonic for tok in ALPHABET],
            "actions": list(ACTION_TYPES),
        },
        sort_keys=True,
        separators=(",", ":"),
    )


def find_frontend_dir() -> Path | None:
    env = os.environ.get("CADDY_FRONTEND_DIR")
    candidates = [Path(env)] if env else []
    here = Path(__file__).resolve()
    candidates += [
        Path.cwd() / "frontend" / "dist",
        here.parents[2] / "frontend" / "dist",
        here.parents[3] / "frontend" / "dist" if len(here.parents) > 3 else None,
    ]
    for cand in candidates:
        if cand and (cand / "index.html").is_file():
            return cand
    return None


def create_app(config: SessionConfig = None, frontend_dir=None, tick_interval=None) -> FastAPI:
    config = config or SessionConfig()
    session = Session(config)
    interval = config.sim.dt_s if tick_interval is None else tick_interval

    async def ticker():
        while True:
            session.tick()
            await asyncio.sleep(interval)

    @contextlib.asynccontextmanager
    async def lifespan(app: FastAPI):
        task = asyncio.create_task(ticker())
        yield
        task.cancel()
        with contextlib.suppress(asyncio.CancelledError):
            await task

    app = FastAPI(title="caddy feedback service", lifespan=lifespan)
    app.state.session = session
    app.state.clients = []

    def broadcast(line: str):
        for queue in list(app.state.clients):
            queue.put_nowait(line)

    session.listeners.append(broadcast)

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        queue: asyncio.Queue = asyncio.Queue()
        app.state.clients.append(queue)
        await ws.send_text(hello_frame())
        session.broadcast_state("tablet connected")

        async def sender():
            while True:
                await ws.send_text(await queue.get())

        send_task = asyncio.create_task(sender())
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    session.submit_action(decode_action(raw))
                except ActionDecodeError as exc:
                    session.broadcast_error(f"bad tablet frame: {exc.code}")
        except WebSocketDisconnect:
            pass
        finally:
            send_task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await send_task
            app.state.clients.remove(queue)

    frontend = Path(frontend_dir) if frontend_dir else find_frontend_dir()
    if frontend is not None:
        app.mount("/", StaticFiles(directory=frontend, html=True), name="tablet")
    else:
        logger.warning("no frontend assets found; serving /ws only")

    return app


def run_server(config: SessionConfig, host: str = "127.0.0.1"):
    import uvicorn

    app = create_app(config)
    try:
        uvicorn.run(app, host=host, port=config.server.port, log_level="info")
    except OSError as exc:
        raise SystemExit(f"bind failure on {host}:{config.server.port}: {exc}")
