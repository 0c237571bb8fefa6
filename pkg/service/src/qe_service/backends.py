"""Scoring backends behind the service endpoint.

A backend scores (src, tgt) pairs in order, one score in [0, 1] each,
and reports readiness so the service can answer 503 while a heavyweight
model is still loading. The deterministic trigram mock ships built in
and is bit-identical to the pipeline's local stand-in; a real QE model
(CometKiwi-class) plugs in through the import spec without this package
carrying any weights.
"""

from __future__ import annotations

import importlib
from typing import Protocol, Sequence

from docbitext.docscore import MOCK_BACKEND_ID, mock_score


class ScoringBackend(Protocol):
    identifier: str

    def ready(self) -> bool: ...

    def score_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]: ...


class MockTrigramBackend:
    """Deterministic stand-in: lowercased character-trigram set overlap."""

    identifier = MOCK_BACKEND_ID

    def ready(self) -> bool:
        return True

    def score_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        return [mock_score(src, tgt) for src, tgt in pairs]


def load_backend(spec: str) -> ScoringBackend:
    """Build a backend from a spec string.

    "mock" gives the built-in trigram backend. "import:pkg.mod:factory"
    imports pkg.mod and calls factory() — the hook for wiring up a real
    QE model without this service depending on its weights.
    """
    if spec == "mock":
        return MockTrigramBackend()
    if spec.startswith("import:"):
        target = spec.split(":", 1)[1]
        module_name, _, attr = target.partition(":")
        if not module_name or not attr:
            raise ValueError(f"backend spec {spec!r} needs "
                             "import:<module>:<factory>")
        module = importlib.import_module(module_name)
        return getattr(module, attr)()
    raise ValueError(f"unknown backend spec {spec!r}")
