"""Reading and writing core tables, metrics, and small analysis tables.

Core records are always ordered by (t_s, t_e, k) and member labels are
sorted, so equal results serialize to identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence, TextIO

from .span_cores import DecompositionResult, RunMetrics, SpanCore
from .temporal_graph import Interval

CORE_CSV_HEADER = ["k", "t_s", "t_e", "size", "members"]
MEMBER_SEPARATOR = ";"


def _ordered_cores(result: DecompositionResult) -> list[SpanCore]:
    return sorted(result.cores, key=SpanCore.sort_key)


def cores_to_csv(result: DecompositionResult) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CORE_CSV_HEADER)
    for core in _ordered_cores(result):
        labels = result.member_labels(core)
        writer.writerow([
            core.order, core.span.start, core.span.end,
            len(core.members), MEMBER_SEPARATOR.join(labels),
        ])
    return out.getvalue()


def cores_to_jsonl(result: DecompositionResult, maximal: bool = False) -> str:
    lines = []
    for core in _ordered_cores(result):
        record = {
            "k": core.order,
            "t_s": core.span.start,
            "t_e": core.span.end,
            "members": result.member_labels(core),
        }
        if maximal:
            record["maximal"] = True
        lines.append(json.dumps(record))
    return "".join(line + "\n" for line in lines)


def metrics_to_json(metrics: RunMetrics) -> str:
    payload = {
        "processed_vertices": metrics.processed_vertices,
        "cores": metrics.cores_emitted,
        "elapsed_ms": round(metrics.elapsed * 1000.0, 3),
    }
    return json.dumps(payload, indent=2) + "\n"


def _result_from_rows(rows: Iterable[tuple[int, int, int, list[str]]]) -> DecompositionResult:
    ids: dict[str, int] = {}
    labels: list[str] = []
    cores = []
    for order, t_s, t_e, members in rows:
        member_ids = []
        for label in members:
            if label not in ids:
                ids[label] = len(labels)
                labels.append(label)
            member_ids.append(ids[label])
        cores.append(SpanCore(order, Interval(t_s, t_e), frozenset(member_ids)))
    cores.sort(key=SpanCore.sort_key)
    return DecompositionResult(tuple(cores), tuple(labels), RunMetrics())


def read_cores_csv(stream: TextIO) -> DecompositionResult:
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != CORE_CSV_HEADER:
        raise ValueError(f"unexpected core CSV header: {header!r}")
    rows = []
    for row in reader:
        if not row:
            continue
        k, t_s, t_e, size, members = row
        labels = members.split(MEMBER_SEPARATOR) if members else []
        if int(size) != len(labels):
            raise ValueError(f"size field {size} disagrees with {len(labels)} members")
        rows.append((int(k), int(t_s), int(t_e), labels))
    return _result_from_rows(rows)


def read_cores_jsonl(stream: TextIO) -> DecompositionResult:
    rows = []
    for line in stream:
        line = line.strip()
        if not line:
            continue
        record = json.loads(line)
        rows.append((record["k"], record["t_s"], record["t_e"], list(record["members"])))
    return _result_from_rows(rows)


def read_cores(stream: TextIO, fmt: str) -> DecompositionResult:
    if fmt == "csv":
        return read_cores_csv(stream)
    if fmt == "jsonl":
        return read_cores_jsonl(stream)
    raise ValueError(f"unknown core file format {fmt!r}")


def table_to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """Small helper for the stats/grid/purity tables."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_render(cell) for cell in row])
    return out.getvalue()


def _render(cell) -> str:
    if isinstance(cell, float):
        return format(cell, ".10g")
    return str(cell)
