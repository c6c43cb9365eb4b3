"""Downstream analyses over decomposition results.

Covers the summary tables used to characterize a decomposition, attribute
purity of maximal cores, a degree-preserving temporal null model, and
span-core-based anomaly detection on contact logs.
"""

from __future__ import annotations

import csv
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, TextIO

from .core_kernel import core_decomposition
from .span_cores import DecompositionResult
from .temporal_graph import Edge, Interval, TemporalGraph, edges_in_interval


def stats_by_order(result: DecompositionResult) -> list[tuple[int, int, float]]:
    """Rows (order, count, mean member count), ascending by order."""
    sizes = defaultdict(list)
    for core in result.cores:
        sizes[core.order].append(len(core.members))
    return [(k, len(sizes[k]), sum(sizes[k]) / len(sizes[k])) for k in sorted(sizes)]


def stats_by_span(result: DecompositionResult) -> list[tuple[int, int, float]]:
    """Rows (interval width, count, mean member count), ascending by width."""
    sizes = defaultdict(list)
    for core in result.cores:
        sizes[core.span.width].append(len(core.members))
    return [(w, len(sizes[w]), sum(sizes[w]) / len(sizes[w])) for w in sorted(sizes)]


def activity_grid(result: DecompositionResult, min_span: int = 1) -> dict[tuple[int, int], int]:
    """Highest order per (start, width) cell, dropping widths below min_span."""
    grid: dict[tuple[int, int], int] = {}
    for core in result.cores:
        if core.span.width < min_span:
            continue
        cell = (core.span.start, core.span.width)
        if core.order > grid.get(cell, 0):
            grid[cell] = core.order
    return grid


class AttributeTable:
    """Categorical vertex attributes, keyed by vertex label.

    Expected CSV shape: a header "label,attr1,attr2,..." then one row per
    vertex.
    """

    def __init__(self, attributes: Iterable[str], values: Mapping[str, Mapping[str, str]]):
        self.attributes = tuple(attributes)
        self._values = {label: dict(row) for label, row in values.items()}

    @classmethod
    def from_csv(cls, stream: TextIO) -> "AttributeTable":
        reader = csv.reader(stream)
        header = next(reader, None)
        if not header or header[0] != "label" or len(header) < 2:
            raise ValueError(f"attribute CSV must start with 'label,<attr>,...', got {header!r}")
        attributes = header[1:]
        values: dict[str, dict[str, str]] = {}
        for row in reader:
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(f"attribute row {row!r} does not match header width")
            values[row[0]] = dict(zip(attributes, row[1:]))
        return cls(attributes, values)

    def value(self, label: str, attribute: str) -> str | None:
        row = self._values.get(label)
        if row is None:
            return None
        return row.get(attribute)


@dataclass
class PurityCurve:
    """Mean core purity per timestamp; timestamps no core spans are absent."""

    by_timestamp: dict[int, float]
    skipped_vertices: int


def purity_curve(result: DecompositionResult, attrs: AttributeTable,
                 attribute: str) -> PurityCurve:
    """Average attribute purity of the cores spanning each timestamp.

    A core's purity is its largest single-category share: the most common
    attribute value among members divided by member count. Members without a
    value are skipped and counted; a core with no valued members contributes
    nothing.
    """
    if attribute not in attrs.attributes:
        raise ValueError(f"unknown attribute {attribute!r}; table has {attrs.attributes}")
    skipped = 0
    per_timestamp: dict[int, list[float]] = defaultdict(list)
    for core in result.cores:
        categories: Counter[str] = Counter()
        for label in result.member_labels(core):
            value = attrs.value(label, attribute)
            if value is None:
                skipped += 1
            else:
                categories[value] += 1
        if not categories:
            continue
        purity = max(categories.values()) / len(core.members)
        for t in core.span.timestamps():
            per_timestamp[t].append(purity)
    curve = {t: sum(vals) / len(vals) for t, vals in sorted(per_timestamp.items())}
    return PurityCurve(curve, skipped)


_SEED_MIX = 0x9E3779B1  # per-timestamp stream: mix(seed, t), fixed across runs


def reshuffle_timestamps(g: TemporalGraph, seed: int = 0) -> TemporalGraph:
    """Degree-preserving null model: rewire each timestamp independently.

    Within a timestamp, two pending edges with four distinct endpoints are
    drawn and their endpoints crossed; swaps that would duplicate an existing
    edge are rejected. Processed edges leave the pending pool, and after
    10 * |E_t| draws whatever is still pending stays as-is. Every vertex
    keeps its exact degree at every timestamp.
    """
    shuffled = []
    for t in range(g.t_max + 1):
        rng = random.Random(seed * _SEED_MIX + t)
        shuffled.append(_reshuffle_edges(g.edges_at(t), rng))
    return TemporalGraph(g.labels, shuffled)


def _reshuffle_edges(edges: frozenset[Edge], rng: random.Random) -> set[Edge]:
    current = set(edges)
    pool = sorted(edges)  # deterministic draw order
    budget = 10 * len(pool)
    while len(pool) >= 2 and budget > 0:
        budget -= 1
        i, j = rng.sample(range(len(pool)), 2)
        u, v = pool[i]
        w, z = pool[j]
        if u in (w, z) or v in (w, z):
            continue
        first = (u, z) if u < z else (z, u)
        second = (w, v) if w < v else (v, w)
        if first in current or second in current:
            continue
        current.remove(pool[i])
        current.remove(pool[j])
        current.add(first)
        current.add(second)
        for index in sorted((i, j), reverse=True):
            pool.pop(index)
    return current


@dataclass
class AnomalyReport:
    """Outcome of span-core anomaly detection on a contact log."""

    anomalous_intervals: frozenset[Interval]
    anomalous_vertices_by_time: dict[int, frozenset[int]]
    removed_contacts: dict[int, int]
    dropped_timestamps: frozenset[int]
    surviving: TemporalGraph


def _order_one_core(g: TemporalGraph, interval: Interval) -> frozenset[int]:
    labeling = core_decomposition(range(g.vertex_count), edges_in_interval(g, interval))
    return frozenset(labeling.coreness)


def detect_anomalies(g: TemporalGraph, maximal: DecompositionResult, tr: int,
                     ratio: float | None = None,
                     span_cores_of: Callable[[Interval], frozenset[int]] | None = None,
                     ) -> AnomalyReport:
    """Flag and strip contacts tied to suspiciously long-lived cores.

    Intervals of maximal cores wider than tr are anomalous. At each
    timestamp such an interval covers, every vertex of its order-1 core is
    anomalous, and contacts touching an anomalous vertex are removed. With a
    ratio, a second pass drops whole timestamps where original/surviving
    contact counts exceed it (a timestamp filtered to zero counts as
    infinite).
    """
    if tr < 1:
        raise ValueError(f"tr must be >= 1, got {tr}")
    if ratio is not None and ratio <= 0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    if span_cores_of is None:
        span_cores_of = lambda interval: _order_one_core(g, interval)

    intervals = frozenset(c.span for c in maximal.cores if c.span.width > tr)
    flagged_members = {interval: span_cores_of(interval) for interval in sorted(intervals)}
    anomalous_by_time: dict[int, set[int]] = defaultdict(set)
    for interval, members in flagged_members.items():
        for t in interval.timestamps():
            anomalous_by_time[t].update(members)

    removed_counts: dict[int, int] = {}
    kept: list[set[Edge]] = []
    for t in range(g.t_max + 1):
        flagged = anomalous_by_time.get(t, ())
        edges = g.edges_at(t)
        surviving = {e for e in edges if e[0] not in flagged and e[1] not in flagged}
        removed_counts[t] = len(edges) - len(surviving)
        kept.append(surviving)

    dropped: set[int] = set()
    if ratio is not None:
        for t in range(g.t_max + 1):
            original = len(g.edges_at(t))
            if original == 0:
                continue
            if not kept[t] or original / len(kept[t]) > ratio:
                dropped.add(t)
                kept[t] = set()

    return AnomalyReport(
        anomalous_intervals=intervals,
        anomalous_vertices_by_time={t: frozenset(vs) for t, vs in sorted(anomalous_by_time.items())},
        removed_contacts=removed_counts,
        dropped_timestamps=frozenset(dropped),
        surviving=TemporalGraph(g.labels, kept),
    )


def precision_recall(original: TemporalGraph, report: AnomalyReport,
                     positive_timestamps: Iterable[int]) -> tuple[float | None, float | None]:
    """Score removed contacts against ground-truth anomalous timestamps.

    A removed contact at a positive timestamp is a true positive, a removed
    contact elsewhere a false positive, a surviving contact at a positive
    timestamp a false negative. Either score is None when its denominator is
    zero (nothing removed, or no positive contacts).
    """
    positives = set(positive_timestamps)
    out_of_range = [t for t in positives if not 0 <= t <= original.t_max]
    if out_of_range:
        raise ValueError(f"positive timestamps {sorted(out_of_range)} outside 0..{original.t_max}")
    tp = fp = fn = 0
    for t in range(original.t_max + 1):
        total = len(original.edges_at(t))
        surviving = len(report.surviving.edges_at(t))
        removed = total - surviving
        if t in positives:
            tp += removed
            fn += surviving
        else:
            fp += removed
    precision = tp / (tp + fp) if tp + fp else None
    recall = tp / (tp + fn) if tp + fn else None
    return precision, recall
