"""Optional timing scopes inside the KEM primitives.

``scope(name)`` is a no-op until a recorder is installed with ``recording``;
the bench module installs one per measured call.
"""

from __future__ import annotations

import contextlib
import time
from collections import defaultdict
from contextvars import ContextVar

_active: ContextVar["Recorder | None"] = ContextVar("pybike_recorder", default=None)
_NULL = contextlib.nullcontext()


class Recorder:
    def __init__(self):
        self.totals: dict[str, int] = defaultdict(int)

    @contextlib.contextmanager
    def _timed(self, name: str):
        start = time.perf_counter_ns()
        try:
            yield
        finally:
            self.totals[name] += time.perf_counter_ns() - start


def scope(name: str):
    rec = _active.get()
    if rec is None:
        return _NULL
    return rec._timed(name)


@contextlib.contextmanager
def recording(rec: Recorder):
    token = _active.set(rec)
    try:
        yield rec
    finally:
        _active.reset(token)
