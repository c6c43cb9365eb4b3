"""Temporal graph model and contact-stream ingestion.

A temporal graph here is a fixed vertex set observed over a contiguous range
of discrete timestamps 0..t_max, with one undirected edge set per timestamp.
Vertices are dense integer ids internally; external string labels are kept
alongside so inputs and outputs can speak the caller's vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

Edge = tuple[int, int]
Contact = tuple[str, str, int]


class ContactParseError(ValueError):
    """A contact line that cannot be parsed, with its 1-based line number."""

    def __init__(self, line_number: int, line: str, reason: str):
        super().__init__(f"line {line_number}: {reason}: {line!r}")
        self.line_number = line_number
        self.line = line
        self.reason = reason


@dataclass(frozen=True, order=True)
class Interval:
    """Inclusive timestamp range [start, end]."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 0:
            raise ValueError(f"interval start must be >= 0, got {self.start}")
        if self.end < self.start:
            raise ValueError(f"interval end {self.end} precedes start {self.start}")

    @property
    def width(self) -> int:
        """Number of timestamps covered."""
        return self.end - self.start + 1

    def contains(self, other: "Interval") -> bool:
        """True if `other` lies entirely within this interval."""
        return self.start <= other.start and self.end >= other.end

    def timestamps(self) -> range:
        return range(self.start, self.end + 1)

    def __str__(self) -> str:
        return f"[{self.start},{self.end}]"


class EdgeDiffSets(NamedTuple):
    """Difference encoding of the interval edge sets anchored at one start time.

    ``removed[i]`` holds the edges alive in every timestamp of
    [start, start+i] but absent at start+i+1, for i in 0..t_star-start-1.
    The edge set of [start, t_e] is recovered by unioning ``removed[j]`` for
    j >= t_e-start onto the edge set of [start, t_star].
    """

    t_star: int
    removed: tuple[frozenset[Edge], ...]


class TemporalGraph:
    """Immutable temporal graph over timestamps 0..t_max.

    Edge sets are canonicalized on construction: endpoints ordered low-high,
    duplicates collapsed. Self-loops are rejected outright; droppers belong
    in the ingestion layer, not here.
    """

    __slots__ = ("_labels", "_ids", "_edges")

    def __init__(self, labels: Sequence[str], edges_by_time: Sequence[Iterable[Edge]]):
        if not edges_by_time:
            raise ValueError("a temporal graph needs at least one timestamp")
        self._labels = tuple(labels)
        self._ids = {label: i for i, label in enumerate(self._labels)}
        if len(self._ids) != len(self._labels):
            raise ValueError("duplicate vertex labels")
        n = len(self._labels)
        canon = []
        for t, edges in enumerate(edges_by_time):
            seen: set[Edge] = set()
            for u, v in edges:
                if u == v:
                    raise ValueError(f"self-loop on vertex {u} at t={t}")
                if not (0 <= u < n and 0 <= v < n):
                    raise ValueError(f"edge ({u},{v}) at t={t} references unknown vertex")
                seen.add((u, v) if u < v else (v, u))
            canon.append(frozenset(seen))
        self._edges = tuple(canon)

    @property
    def vertex_count(self) -> int:
        return len(self._labels)

    @property
    def t_max(self) -> int:
        return len(self._edges) - 1

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def domain(self) -> Interval:
        """The whole observed timestamp range."""
        return Interval(0, self.t_max)

    def edges_at(self, t: int) -> frozenset[Edge]:
        if not 0 <= t <= self.t_max:
            raise ValueError(f"timestamp {t} outside 0..{self.t_max}")
        return self._edges[t]

    def id_of(self, label: str) -> int:
        return self._ids[label]

    def label_of(self, vertex: int) -> str:
        return self._labels[vertex]

    def contact_count(self) -> int:
        """Total number of (edge, timestamp) contacts."""
        return sum(len(e) for e in self._edges)

    def __repr__(self) -> str:
        return (f"TemporalGraph(|V|={self.vertex_count}, t_max={self.t_max}, "
                f"contacts={self.contact_count()})")


def parse_contact_lines(lines: Iterable[str], strict: bool = True) -> tuple[list[Contact], int]:
    """Parse text lines into (label, label, raw_time) contact triples.

    A contact line is "u v t" with whitespace- or comma-separated fields and a
    non-negative integer time. Lines starting with '#' and blank lines are
    skipped. Malformed lines raise ContactParseError in strict mode and are
    counted (second return value) otherwise.
    """
    contacts: list[Contact] = []
    skipped = 0
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in (line.split(",") if "," in line else line.split())]
        reason = None
        if len(parts) != 3:
            reason = "expected three fields"
        elif not parts[0] or not parts[1]:
            reason = "empty vertex label"
        else:
            try:
                raw_time = int(parts[2])
            except ValueError:
                reason = "time is not an integer"
            else:
                if raw_time < 0:
                    reason = "negative time"
        if reason is not None:
            if strict:
                raise ContactParseError(line_number, line, reason)
            skipped += 1
            continue
        contacts.append((parts[0], parts[1], raw_time))
    return contacts, skipped


def ingest_contacts(contacts: Iterable[Contact], window: int = 1,
                    origin: int | None = None) -> TemporalGraph:
    """Build a temporal graph from (label_u, label_v, raw_time) contacts.

    Raw times are discretized as (raw_time - origin) // window; origin
    defaults to the earliest raw time seen, so with window=1 and origin=0
    pre-discretized timestamps pass through verbatim. Duplicate contacts in a
    window collapse, self-loops are dropped (their labels and timestamps
    still count), and empty windows are kept so the time domain stays
    contiguous.
    """
    contacts = list(contacts)
    if not contacts:
        raise ValueError("no contacts")
    if window < 1:
        raise ValueError(f"window must be a positive integer, got {window}")
    if origin is None:
        origin = min(t for _, _, t in contacts)
    ids: dict[str, int] = {}
    labels: list[str] = []

    def intern(label: str) -> int:
        vid = ids.get(label)
        if vid is None:
            vid = len(labels)
            ids[label] = vid
            labels.append(label)
        return vid

    staged: dict[int, set[Edge]] = {}
    t_max = 0
    for label_u, label_v, raw_time in contacts:
        if raw_time < origin:
            raise ValueError(f"contact time {raw_time} precedes origin {origin}")
        t = (raw_time - origin) // window
        u = intern(label_u)
        v = intern(label_v)
        t_max = max(t_max, t)
        if u == v:
            continue
        staged.setdefault(t, set()).add((u, v) if u < v else (v, u))
    empty: set[Edge] = set()
    return TemporalGraph(labels, [staged.get(t, empty) for t in range(t_max + 1)])


def edges_in_interval(g: TemporalGraph, interval: Interval) -> frozenset[Edge]:
    """Edges present at every timestamp of the interval."""
    if interval.end > g.t_max:
        raise ValueError(f"interval {interval} exceeds t_max={g.t_max}")
    edges = g.edges_at(interval.start)
    for t in range(interval.start + 1, interval.end + 1):
        if not edges:
            break
        edges = edges & g.edges_at(t)
    return frozenset(edges)


def temporal_degree(g: TemporalGraph, members: frozenset[int] | set[int],
                    vertex: int, interval: Interval) -> int:
    """Number of neighbors of `vertex` inside `members` across the interval.

    Counts only edges that persist through every timestamp of the interval.
    """
    if vertex not in members:
        raise ValueError(f"vertex {vertex} is not in the member set")
    edges = edges_in_interval(g, interval)
    count = 0
    for u, v in edges:
        if u == vertex and v in members:
            count += 1
        elif v == vertex and u in members:
            count += 1
    return count


def edge_diff_sets(g: TemporalGraph, start: int) -> EdgeDiffSets | None:
    """Difference sets for all intervals starting at `start`, or None.

    Returns None when no edge survives even the singleton interval, i.e.
    E_start is empty and no non-empty interval begins here. Otherwise t_star
    is the last timestamp for which [start, t_star] still has surviving
    edges. Total storage is bounded by |E_start|: the diff sets partition
    the edges that eventually drop out.
    """
    running = g.edges_at(start)
    if not running:
        return None
    removed: list[frozenset[Edge]] = []
    t = start
    while t < g.t_max:
        surviving = running & g.edges_at(t + 1)
        if not surviving:
            break
        removed.append(frozenset(running - surviving))
        running = surviving
        t += 1
    return EdgeDiffSets(t, tuple(removed))


def canonical_dump(g: TemporalGraph) -> str:
    """Stable textual form: one "t: (u,v) (u,v)" line per timestamp.

    Edge endpoints and edges are ordered lexicographically by label, so two
    graphs are equal iff their dumps are byte-identical.
    """
    lines = []
    for t in range(g.t_max + 1):
        pairs = sorted(
            tuple(sorted((g.label_of(u), g.label_of(v)))) for u, v in g.edges_at(t)
        )
        rendered = "".join(f" ({a},{b})" for a, b in pairs)
        lines.append(f"{t}:{rendered}")
    return "\n".join(lines) + "\n"


def contact_lines(g: TemporalGraph) -> Iterator[str]:
    """Render the graph as re-ingestable contact lines "u v t".

    Timestamps are emitted verbatim, so feeding the lines back through
    ingest_contacts(window=1, origin=0) reproduces the graph.
    """
    for t in range(g.t_max + 1):
        pairs = sorted(
            tuple(sorted((g.label_of(u), g.label_of(v)))) for u, v in g.edges_at(t)
        )
        for a, b in pairs:
            yield f"{a} {b} {t}"
