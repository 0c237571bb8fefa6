"""Quality-estimation scoring microservice.

Run with: uvicorn qe_service.app:app
"""

from .app import MAX_BATCH_SIZE, create_app
from .backends import MockTrigramBackend, ScoringBackend, load_backend

__version__ = "0.1.0"

__all__ = ["MAX_BATCH_SIZE", "MockTrigramBackend", "ScoringBackend",
           "create_app", "load_backend"]
