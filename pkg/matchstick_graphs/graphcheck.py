"""
Matchstick-graph verification of an Embedding.

Checks regularity, girth, unit edge lengths, crossing-free drawing with
clearance and point symmetry, and aggregates them into a report.
"""

import itertools
import json
import logging
import math
from collections import Counter, deque
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from matchstick_graphs import geom
from matchstick_graphs.config import DEFAULT_TOLERANCES
from matchstick_graphs.errors import MappingNotInvolution

logger = logging.getLogger(__name__)

# Girth of a forest.
INFINITE_GIRTH = math.inf


@dataclass(frozen=True)
class Crossing:
    """Two edges whose drawing violates the matchstick rules."""

    edge_a: Tuple[str, str]
    edge_b: Tuple[str, str]
    kind: geom.SegmentRelation

    def to_dict(self):
        return {"edges": [list(self.edge_a), list(self.edge_b)], "kind": self.kind.value}


@dataclass(frozen=True)
class UnitLengthReport:
    max_unit_deviation: float
    closing_length: Optional[float]
    worst_edge: Optional[Tuple[str, str]]
    within_tolerance: bool


@dataclass(frozen=True)
class CrossingReport:
    crossings: Tuple[Crossing, ...]
    min_clearance: float
    closest: Optional[str] = None   # human-readable description of the minimizing pair


@dataclass(frozen=True)
class PartitionReport:
    """How named vertex groups split the graph."""

    disjoint: bool
    uncovered: Tuple[str, ...]
    cut_edges: Tuple[Tuple[str, str], ...]
    mirrored: Optional[bool]


@dataclass
class VerificationReport:
    vertex_count: int
    edge_count: int
    degree_histogram: Dict[int, int]
    girth: float
    max_unit_deviation: float
    closing_length: Optional[float]
    crossings: List[Crossing]
    min_clearance: float
    symmetry_residual: Optional[float]
    passed: bool
    tolerances: Dict[str, float] = field(default_factory=dict)

    def to_dict(self):
        data = asdict(self)
        data["degree_histogram"] = {str(k): v for k, v in sorted(self.degree_histogram.items())}
        data["girth"] = None if math.isinf(self.girth) else int(self.girth)
        data["crossings"] = [c.to_dict() for c in self.crossings]
        if math.isinf(self.min_clearance):
            data["min_clearance"] = None
        return data

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)


def degree_map(embedding):
    """Vertex -> number of incident edges (the closing edge counts)."""
    degrees = {v: 0 for v in embedding.coords}
    for a, b in embedding.edges:
        degrees[a] += 1
        degrees[b] += 1
    return degrees


def degrees(embedding):
    """Degree histogram: degree -> number of vertices with that degree."""
    return dict(sorted(Counter(degree_map(embedding).values()).items()))


def girth(embedding):
    """Length of the shortest cycle, INFINITE_GIRTH for forests."""
    return girth_of_adjacency(embedding.adjacency())


def girth_of_adjacency(neighbors):
    """Shortest cycle by a BFS from every vertex."""
    best = INFINITE_GIRTH
    for root in neighbors:
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            # Nothing shorter can close beyond this depth.
            if 2 * dist[u] >= best:
                break
            for w in neighbors[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def unit_length_report(embedding, tol=DEFAULT_TOLERANCES.unit_length):
    """Largest |length - 1| over unit edges; the closing length on its own."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    worst, worst_edge = 0.0, None
    for a, b in embedding.unit_edges:
        deviation = abs(embedding.length(a, b) - 1.0)
        if deviation > worst or worst_edge is None:
            worst, worst_edge = deviation, (a, b)
    closing_length = None
    if embedding.closing is not None:
        closing_length = embedding.length(*embedding.closing)
    return UnitLengthReport(worst, closing_length, worst_edge, worst <= tol)


def _vertex_clearance(names, points, adjacency):
    """Smallest distance between non-adjacent vertices."""
    diff = points[:, None, :] - points[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    index = {v: i for i, v in enumerate(names)}
    mask = np.triu(np.ones(dist.shape, dtype=bool), k=1)
    for v, others in adjacency.items():
        for w in others:
            mask[index[v], index[w]] = False
    if not mask.any():
        return math.inf, None
    flat = np.where(mask, dist, np.inf)
    i, j = np.unravel_index(np.argmin(flat), flat.shape)
    return float(flat[i, j]), f"{names[i]} ~ {names[j]}"


def _edge_clearance(names, points, edges):
    """Smallest distance from a vertex to an edge not incident to it."""
    if not edges:
        return math.inf, None
    index = {v: i for i, v in enumerate(names)}
    ea = points[[index[a] for a, _ in edges]]
    eb = points[[index[b] for _, b in edges]]
    seg = eb - ea
    length_sq = np.einsum("ij,ij->i", seg, seg)
    rel = points[:, None, :] - ea[None, :, :]
    t = np.clip(np.einsum("vei,ei->ve", rel, seg) / length_sq, 0.0, 1.0)
    nearest = ea[None, :, :] + t[..., None] * seg[None, :, :]
    dist = np.hypot(*(nearest - points[:, None, :]).transpose(2, 0, 1))
    for k, (a, b) in enumerate(edges):
        dist[index[a], k] = np.inf
        dist[index[b], k] = np.inf
    v, k = np.unravel_index(np.argmin(dist), dist.shape)
    if math.isinf(dist[v, k]):
        return math.inf, None
    a, b = edges[k]
    return float(dist[v, k]), f"{names[v]} ~ {a}-{b}"


def min_clearance(embedding):
    """Minimum over non-adjacent vertex pairs and vertex/non-incident edge pairs."""
    names = list(embedding.coords)
    if not names:
        return math.inf, None
    points = np.array([embedding.coords[v].as_tuple() for v in names], dtype=float)
    vv = _vertex_clearance(names, points, embedding.adjacency())
    drawn = [(a, b) for a, b in embedding.edges if embedding.length(a, b) > 0.0]
    ve = _edge_clearance(names, points, drawn)
    return min(vv, ve, key=lambda item: item[0])


def crossing_report(embedding, tol=DEFAULT_TOLERANCES.coincidence):
    """
    Classify every edge pair and measure the drawing's clearance.

    An edge whose endpoints coincide is a contact in itself; it is reported
    paired with itself as a collinear overlap and left out of the pairwise scan.
    """
    coords = embedding.coords
    crossings = []
    drawn = []
    for a, b in embedding.edges:
        if geom.distance(coords[a], coords[b]) <= tol:
            crossings.append(Crossing((a, b), (a, b), geom.SegmentRelation.COLLINEAR_OVERLAP))
        else:
            drawn.append((a, b))
    for (a1, a2), (b1, b2) in itertools.combinations(drawn, 2):
        relation = geom.segment_relation(coords[a1], coords[a2], coords[b1], coords[b2], tol)
        if relation.is_violation:
            crossings.append(Crossing((a1, a2), (b1, b2), relation))
    clearance, closest = min_clearance(embedding)
    if crossings:
        logger.debug("Found %d crossing violations", len(crossings))
    return CrossingReport(tuple(crossings), clearance, closest)


def symmetry_residual(embedding, anchor_a, anchor_b, mapping):
    """Largest distance between a reflected vertex and the coordinate of its image."""
    coords = embedding.coords
    for v in coords:
        image = mapping.get(v, v)
        if image not in coords or mapping.get(image, image) != v:
            raise MappingNotInvolution(v, image)
    center = geom.midpoint(coords[anchor_a], coords[anchor_b])
    return max(
        (geom.distance(geom.point_reflect(c, center), coords[mapping.get(v, v)]) for v, c in coords.items()),
        default=0.0,
    )


def partition_report(embedding, groups, mapping=None):
    """
    Check how `groups` (name -> vertex ids) split the graph.

    `mirrored` is True when the mapping sends the first group exactly onto the
    second; it is None without a mapping or with other than two groups.
    """
    owner = {}
    disjoint = True
    for name, members in groups.items():
        for v in members:
            if v in owner:
                disjoint = False
            owner.setdefault(v, name)
    uncovered = tuple(v for v in embedding.coords if v not in owner)
    cut_edges = tuple(
        (a, b) for a, b in embedding.edges
        if a in owner and b in owner and owner[a] != owner[b]
    )
    mirrored = None
    if mapping is not None and len(groups) == 2:
        first, second = groups.values()
        mirrored = {mapping.get(v, v) for v in first} == set(second)
    return PartitionReport(disjoint, uncovered, cut_edges, mirrored)


def verify(embedding, config=DEFAULT_TOLERANCES):
    """Run every check and decide whether the drawing is a 3-regular girth-5 matchstick graph."""
    histogram = degrees(embedding)
    shortest = girth(embedding)
    lengths = unit_length_report(embedding, config.unit_length)
    drawing = crossing_report(embedding, config.coincidence)

    residual = None
    if embedding.symmetry is not None:
        sym = embedding.symmetry
        residual = symmetry_residual(embedding, sym.anchor_a, sym.anchor_b, sym.mapping)

    max_deviation = lengths.max_unit_deviation
    if lengths.closing_length is not None:
        max_deviation = max(max_deviation, abs(lengths.closing_length - 1.0))

    passed = (
        bool(embedding.coords)
        and set(histogram) == {3}
        and shortest == 5
        and max_deviation <= config.unit_length
        and not drawing.crossings
        and drawing.min_clearance > config.clearance_floor
    )
    logger.info(
        "Verified %d vertices / %d edges: girth=%s, passed=%s",
        len(embedding.coords), len(embedding.edges), shortest, passed,
    )
    return VerificationReport(
        vertex_count=len(embedding.coords),
        edge_count=len(embedding.edges),
        degree_histogram=histogram,
        girth=shortest,
        max_unit_deviation=max_deviation,
        closing_length=lengths.closing_length,
        crossings=list(drawing.crossings),
        min_clearance=drawing.min_clearance,
        symmetry_residual=residual,
        passed=passed,
        tolerances={
            "unit_length": config.unit_length,
            "clearance_floor": config.clearance_floor,
            "coincidence": config.coincidence,
        },
    )
