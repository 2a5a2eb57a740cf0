"""derhall FastAPI application entrypoint.

Mounts the read-only API router. The routes answer only when
DERHALL_HTTP_ENABLED is true; otherwise every endpoint returns 404.
"""
import logging

from fastapi import FastAPI

import config
from routes.api import router as api_router

logger = logging.getLogger(__name__)

app = FastAPI(title="derhall")
app.include_router(api_router)


@app.on_event("startup")
async def startup() -> None:
    """Configure logging and report whether the API is enabled."""
    logging.basicConfig(level=config.LOG_LEVEL.upper())
    if config.HTTP_ENABLED:
        logger.info("derhall API enabled for %s", config.QUIVER)
    else:
        logger.info("derhall API disabled; set DERHALL_HTTP_ENABLED=true to enable")
