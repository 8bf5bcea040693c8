"""Per-operation timing breakdown of the three KEM primitives.

Each iteration runs KeyGen, Encaps and Decaps once on seeds derived from a
master seed and a counter, so two runs do the same work.  A discarded
warm-up flow precedes the timed ones.  Scopes inside the
primitives attribute time to the operations listed in ``OPERATIONS``.
Anything unattributed lands in an ``Other`` row, which makes the shares sum
to 100%.  Key and ciphertext (de)serialization is not timed.
"""

from __future__ import annotations

import csv
import hashlib
import io
import time
from collections import defaultdict
from dataclasses import dataclass, field

from . import kem
from ._profile import Recorder, recording
from .errors import ParameterError
from .params import Level, parameter_set

PRIMITIVES = ("KeyGen", "Encaps", "Decaps")
OPERATIONS = {
    "KeyGen": ("PRNG", "Inversion", "Multiplication"),
    "Encaps": ("H", "Multiplication", "L", "K"),
    "Decaps": ("Decoding", "L", "H", "K"),
}
OTHER = "Other"
TOTAL = "TOTAL"
OVERALL = "KEM"
CSV_HEADER = ("primitive", "operation", "mean_ms", "share_pct")


@dataclass(frozen=True)
class ProfileRow:
    primitive: str
    operation: str
    mean_ms: float
    share: float


@dataclass
class ProfileReport:
    level: Level
    iterations: int
    rows: list[ProfileRow]
    totals: dict[str, float]
    mismatches: int = 0
    instrumented: bool = True

    def row(self, primitive: str, operation: str) -> ProfileRow:
        for row in self.rows:
            if row.primitive == primitive and row.operation == operation:
                return row
        raise KeyError((primitive, operation))

    def share_of(self, operation: str) -> float:
        """Combined share of an operation across all primitives."""
        return sum(r.share for r in self.rows if r.operation == operation)

    @property
    def attributed_rows(self) -> list[ProfileRow]:
        return [r for r in self.rows if r.operation != OTHER]


def iteration_seeds(master: bytes, i: int) -> tuple[bytes, bytes]:
    """(key seed, message) for iteration i."""
    out = hashlib.shake_256(master + i.to_bytes(8, "little")).digest(64)
    return out[:32], out[32:]


@dataclass
class _Accumulator:
    ops: dict[tuple[str, str], int] = field(default_factory=lambda: defaultdict(int))
    totals: dict[str, int] = field(default_factory=lambda: defaultdict(int))


def _timed(acc: _Accumulator, primitive: str, instrument: bool, fn, *args):
    rec = Recorder()
    if instrument:
        with recording(rec):
            start = time.perf_counter_ns()
            result = fn(*args)
            elapsed = time.perf_counter_ns() - start
    else:
        start = time.perf_counter_ns()
        result = fn(*args)
        elapsed = time.perf_counter_ns() - start
    acc.totals[primitive] += elapsed
    for name, ns in rec.totals.items():
        acc.ops[primitive, name] += ns
    return result


def run_profile(
    level: Level | str,
    iterations: int,
    master_seed: bytes = bytes(32),
    instrument: bool = True,
    warmup: int = 1,
) -> ProfileReport:
    """Average ``iterations`` full KEM flows and break the time down.

    ``warmup`` untimed flows run first so that one-off costs (squaring
    tables, allocator growth) stay out of the means.
    """
    p = parameter_set(level)
    if iterations < 1:
        raise ParameterError("iterations must be at least 1")
    if warmup < 0:
        raise ParameterError("warmup must be non-negative")
    for i in range(warmup):
        seed, m = iteration_seeds(master_seed + b"warmup", i)
        sk, pk = kem.keygen(seed, p)
        kem.decaps(sk, kem.encaps(pk, m)[1])
    acc = _Accumulator()
    mismatches = 0
    for i in range(iterations):
        seed, m = iteration_seeds(master_seed, i)
        sk, pk = _timed(acc, "KeyGen", instrument, kem.keygen, seed, p)
        key, ct = _timed(acc, "Encaps", instrument, kem.encaps, pk, m)
        key2 = _timed(acc, "Decaps", instrument, kem.decaps, sk, ct)
        mismatches += key != key2
    return _summarise(p.level, iterations, acc, mismatches, instrument)


def _summarise(level, iterations, acc, mismatches, instrument) -> ProfileReport:
    to_ms = 1e-6 / iterations
    totals = {prim: acc.totals[prim] * to_ms for prim in PRIMITIVES}
    overall = sum(totals.values())
    totals[OVERALL] = overall

    def share(ms: float) -> float:
        return 100.0 * ms / overall if overall > 0 else 0.0

    rows = []
    for prim in PRIMITIVES:
        attributed = 0.0
        for op in OPERATIONS[prim]:
            ms = acc.ops[prim, op] * to_ms
            attributed += ms
            rows.append(ProfileRow(prim, op, ms, share(ms)))
        other = max(totals[prim] - attributed, 0.0)
        rows.append(ProfileRow(prim, OTHER, other, share(other)))
    return ProfileReport(level, iterations, rows, totals, mismatches, instrument)


def render_report(rep: ProfileReport, fmt: str = "csv") -> str:
    if fmt == "csv":
        return _render_csv(rep)
    if fmt in ("markdown", "md"):
        return _render_markdown(rep)
    raise ParameterError(f"unknown report format {fmt!r}")


def _total_share(rep: ProfileReport, prim: str) -> float:
    overall = rep.totals[OVERALL]
    return 100.0 * rep.totals[prim] / overall if overall > 0 else 0.0


def _render_csv(rep: ProfileReport) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(CSV_HEADER)
    for row in rep.rows:
        out.writerow([row.primitive, row.operation, f"{row.mean_ms:.2f}", f"{row.share:.2f}"])
    for prim in PRIMITIVES + (OVERALL,):
        out.writerow([prim, TOTAL, f"{rep.totals[prim]:.2f}", f"{_total_share(rep, prim):.2f}"])
    return buf.getvalue()


def parse_csv(text: str) -> list[tuple[str, str, float, float]]:
    """Inverse of the csv rendering: (primitive, operation, mean_ms, share_pct)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected header {header}")
    return [(a, b, float(c), float(d)) for a, b, c, d in reader]


def _render_markdown(rep: ProfileReport) -> str:
    lines = [
        f"## BIKE {rep.level.name} profile ({rep.iterations} iterations, mean ms)",
        "",
    ]
    for prim in PRIMITIVES:
        lines += [f"### {prim}", "", "| Operation | Mean (ms) | Share (%) |", "|---|---:|---:|"]
        for row in rep.rows:
            if row.primitive == prim:
                lines.append(f"| {row.operation} | {row.mean_ms:.2f} | {row.share:.2f} |")
        lines.append(f"| **Total** | **{rep.totals[prim]:.2f}** | **{_total_share(rep, prim):.2f}** |")
        lines.append("")
    lines.append(f"**Overall KEM**: {rep.totals[OVERALL]:.2f} ms")
    return "\n".join(lines) + "\n"
