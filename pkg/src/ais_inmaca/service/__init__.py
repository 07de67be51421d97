"""HTTP service wrapper; run with `uvicorn ais_inmaca.service:app`."""

from .app import app

__all__ = ["app"]
