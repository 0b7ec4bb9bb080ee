"""
Construction scripts: parsing, execution and the bundled 54-vertex graph.

A script is line oriented. Each line holds one statement; `#` starts a
comment. See the "Script format" section of docs/api-docs.md for the grammar.
"""

import functools
import importlib.resources as pkg_resources
import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Tuple, Union

from matchstick_graphs import geom
from matchstick_graphs.config import DEFAULT_TOLERANCES
from matchstick_graphs.errors import (
    ApexInfeasible,
    CopyAnchorMismatch,
    DuplicatePoint,
    EdgeLengthMismatch,
    EmbeddingFormatError,
    NoIntersection,
    ParameterOutOfRange,
    ScriptSyntaxError,
    UndeclaredParameter,
    UnknownPoint,
    UnresolvedOrientation,
)
from matchstick_graphs.geom import Coord, Turn

logger = logging.getLogger(__name__)

BUILTIN_SCRIPT = "graph54.msc"

# Parameters declared without `range` may take any legal angle.
ANGLE_DOMAIN = (0.0, 360.0)

_ID_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_RANGE_RE = re.compile(r"^([A-Za-z_]+)(\d+)\.\.([A-Za-z_]+)(\d+)$")


# ---------------------------------------------------------------------------
# Steps and constructions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Parameter:
    """A named angle with its default and admissible range (degrees)."""

    name: str
    default: float
    lo: float = ANGLE_DOMAIN[0]
    hi: float = ANGLE_DOMAIN[1]

    @property
    def is_free(self):
        return self.lo < self.hi and (self.lo, self.hi) != ANGLE_DOMAIN

    def contains(self, value):
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class InitialPoints:
    """Place p at (0, 0) and q at (1, 0) and join them."""

    p: str
    q: str
    line: int = field(default=0, compare=False)

    kind = "points"


@dataclass(frozen=True)
class AngleEdge:
    """New point at unit distance from `base`, `angle` away from base->ref."""

    new: str
    base: str
    ref: str
    angle: Union[float, str]
    turn: Optional[Turn]
    line: int = field(default=0, compare=False)

    kind = "angle_edge"


@dataclass(frozen=True)
class Apex:
    """Isosceles apex over an open base; adds new-base_a and new-base_b."""

    new: str
    base_a: str
    base_b: str
    side: Optional[Turn]
    line: int = field(default=0, compare=False)

    kind = "apex"


@dataclass(frozen=True)
class Edge:
    """Unit edge between two existing points."""

    a: str
    b: str
    line: int = field(default=0, compare=False)

    kind = "edge"


@dataclass(frozen=True)
class Copy:
    """Half-turn image of `sources` about midpoint(anchor_a, anchor_b)."""

    sources: Tuple[str, ...]
    mapping: Tuple[Tuple[str, str], ...]
    anchor_a: str
    anchor_b: str
    line: int = field(default=0, compare=False)

    kind = "copy"

    @property
    def target_of(self):
        return dict(self.mapping)


@dataclass(frozen=True)
class ClosingEdge:
    """Edge whose length is not constrained by the construction."""

    a: str
    b: str
    line: int = field(default=0, compare=False)

    kind = "closing_edge"


@dataclass(frozen=True)
class SolveDirective:
    """Drive the closing edge to `target` by varying `parameter`."""

    parameter: str
    target: float
    lo: float
    hi: float
    line: int = field(default=0, compare=False)

    kind = "solve"


Step = Union[InitialPoints, AngleEdge, Apex, Edge, Copy, ClosingEdge, SolveDirective]


@dataclass(frozen=True)
class Symmetry:
    """Point symmetry: half turn about midpoint(anchor_a, anchor_b) with vertex map."""

    anchor_a: str
    anchor_b: str
    mapping: Mapping[str, str]

    def image(self, point):
        return self.mapping.get(point, point)

    def to_dict(self):
        return {"anchors": [self.anchor_a, self.anchor_b], "map": dict(self.mapping)}


@dataclass(frozen=True)
class Construction:
    """A parsed construction script."""

    steps: Tuple[Step, ...]
    parameters: Mapping[str, Parameter]
    symmetry: Optional[Symmetry] = None
    groups: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)

    @property
    def points(self):
        """Point ids in definition order."""
        defined = []
        seen = set()
        for step in self.steps:
            for point in _defines(step):
                if point not in seen:
                    seen.add(point)
                    defined.append(point)
        return tuple(defined)

    @property
    def solve_directive(self):
        for step in self.steps:
            if isinstance(step, SolveDirective):
                return step
        return None

    @property
    def closing_edge(self):
        for step in self.steps:
            if isinstance(step, ClosingEdge):
                return (step.a, step.b)
        return None

    @property
    def free_parameters(self):
        return tuple(p.name for p in self.parameters.values() if p.is_free)

    def step_counts(self):
        """Number of steps of each kind, keyed by script keyword."""
        return Counter(step.kind for step in self.steps)

    def resolve_parameters(self, overrides=None):
        """Merge overrides into the defaults, checking names and ranges."""
        values = {name: p.default for name, p in self.parameters.items()}
        for name, value in (overrides or {}).items():
            if name not in self.parameters:
                raise UndeclaredParameter(name)
            values[name] = float(value)
        for name, value in values.items():
            param = self.parameters[name]
            if not param.contains(value):
                raise ParameterOutOfRange(name, value, param.lo, param.hi)
        return values

    def with_defaults(self, overrides=None):
        """Copy of this construction with some parameter defaults replaced."""
        if not overrides:
            return self
        parameters = dict(self.parameters)
        for name, value in overrides.items():
            if name not in parameters:
                raise UndeclaredParameter(name)
            parameters[name] = replace(parameters[name], default=float(value))
        return replace(self, parameters=MappingProxyType(parameters))


def _defines(step):
    if isinstance(step, InitialPoints):
        return (step.p, step.q)
    if isinstance(step, (AngleEdge, Apex)):
        return (step.new,)
    if isinstance(step, Copy):
        return tuple(target for _, target in step.mapping)
    return ()


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _expand_ids(token, line):
    """Expand `P1..P4` into P1, P2, P3, P4; plain ids pass through."""
    match = _RANGE_RE.match(token)
    if match:
        prefix, start, prefix_end, stop = match.groups()
        if prefix != prefix_end:
            raise ScriptSyntaxError(line, f"range {token} mixes prefixes")
        start, stop = int(start), int(stop)
        if stop < start:
            raise ScriptSyntaxError(line, f"range {token} is descending")
        return [f"{prefix}{i}" for i in range(start, stop + 1)]
    if not _ID_RE.match(token):
        raise ScriptSyntaxError(line, f"invalid point id {token!r}")
    return [token]


def _expand_pairs(tokens, line):
    """Expand `A:B` and `A1..A4:B1..B4` pair tokens into (source, target) tuples."""
    pairs = []
    for token in tokens:
        if token.count(":") != 1:
            raise ScriptSyntaxError(line, f"expected SOURCE:TARGET, got {token!r}")
        left, right = token.split(":")
        sources = _expand_ids(left, line)
        targets = _expand_ids(right, line)
        if len(sources) != len(targets):
            raise ScriptSyntaxError(line, f"ranges in {token} differ in length")
        pairs.extend(zip(sources, targets))
    return pairs


def _number(token, line, what):
    try:
        return float(token)
    except ValueError:
        raise ScriptSyntaxError(line, f"{what} must be a number, got {token!r}") from None


def _turn(token, line):
    if token == "?":
        return None
    try:
        return Turn.parse(token)
    except ValueError:
        raise ScriptSyntaxError(line, f"turn must be +, -, ccw, cw or ?, got {token!r}") from None


def _expect(tokens, index, keyword, line):
    if index >= len(tokens) or tokens[index] != keyword:
        found = tokens[index] if index < len(tokens) else "end of line"
        raise ScriptSyntaxError(line, f"expected '{keyword}', found {found!r}")


def _exact(tokens, count, usage, line):
    if len(tokens) != count:
        raise ScriptSyntaxError(line, f"usage: {usage}")


class _ScriptParser:
    """Parses statements one line at a time and validates references."""

    def __init__(self):
        self.steps = []
        self.parameters = {}
        self.defined = set()
        self.param_uses = []      # (name, line)
        self.symmetry = None
        self.symmetry_line = 0
        self.groups = {}
        self.group_lines = {}

    # Point bookkeeping

    def _use(self, point, line):
        if point not in self.defined:
            raise UnknownPoint(point, line)
        return point

    def _define(self, point, line):
        if point in self.defined:
            raise DuplicatePoint(point, line)
        self.defined.add(point)
        return point

    def _require_start(self, keyword, line):
        if not any(isinstance(s, InitialPoints) for s in self.steps):
            raise ScriptSyntaxError(line, f"'{keyword}' before 'points'")

    # Statements

    def parse_line(self, tokens, line):
        keyword = tokens[0]
        handler = getattr(self, f"_parse_{keyword}", None)
        if handler is None:
            raise ScriptSyntaxError(line, f"unknown statement {keyword!r}")
        handler(tokens[1:], line)

    def _parse_param(self, args, line):
        # param NAME = VALUE [range LO HI]
        if len(args) not in (3, 6) or args[1] != "=":
            raise ScriptSyntaxError(line, "usage: param NAME = VALUE [range LO HI]")
        name = args[0]
        if not _ID_RE.match(name):
            raise ScriptSyntaxError(line, f"invalid parameter name {name!r}")
        if name in self.parameters:
            raise ScriptSyntaxError(line, f"parameter {name} declared twice")
        default = _number(args[2], line, "parameter value")
        lo, hi = ANGLE_DOMAIN
        if len(args) == 6:
            _expect(args, 3, "range", line)
            lo = _number(args[4], line, "range bound")
            hi = _number(args[5], line, "range bound")
            if lo > hi:
                raise ScriptSyntaxError(line, f"empty range [{lo:g}, {hi:g}]")
        if not lo <= default <= hi:
            raise ScriptSyntaxError(line, f"default {default:g} outside range [{lo:g}, {hi:g}]")
        self.parameters[name] = Parameter(name, default, lo, hi)

    def _parse_points(self, args, line):
        _exact(args, 2, "points P Q", line)
        if self.steps:
            raise ScriptSyntaxError(line, "'points' must be the first construction step")
        for token in args:
            if _RANGE_RE.match(token):
                raise ScriptSyntaxError(line, f"initial point {token!r} must be a single id")
            _expand_ids(token, line)
        p, q = args
        if p == q:
            raise ScriptSyntaxError(line, "initial points must differ")
        self._define(p, line)
        self._define(q, line)
        self.steps.append(InitialPoints(p, q, line=line))

    def _parse_angle_edge(self, args, line):
        # angle_edge NEW base B ref R angle X turn T
        usage = "angle_edge NEW base B ref R angle X turn T"
        _exact(args, 9, usage, line)
        for index, keyword in ((1, "base"), (3, "ref"), (5, "angle"), (7, "turn")):
            _expect(args, index, keyword, line)
        self._require_start("angle_edge", line)
        base = self._use(args[2], line)
        ref = self._use(args[4], line)
        if base == ref:
            raise ScriptSyntaxError(line, "base and reference must differ")
        angle_token = args[6]
        if _ID_RE.match(angle_token):
            angle = angle_token
            self.param_uses.append((angle, line))
        else:
            angle = _number(angle_token, line, "angle")
            if not 0.0 < angle < 360.0:
                raise ScriptSyntaxError(line, f"angle {angle:g} outside (0, 360)")
        turn = _turn(args[8], line)
        new = self._define(args[0], line)
        self.steps.append(AngleEdge(new, base, ref, angle, turn, line=line))

    def _parse_apex(self, args, line):
        # apex NEW base A B side T
        _exact(args, 6, "apex NEW base A B side T", line)
        _expect(args, 1, "base", line)
        _expect(args, 4, "side", line)
        self._require_start("apex", line)
        base_a = self._use(args[2], line)
        base_b = self._use(args[3], line)
        if base_a == base_b:
            raise ScriptSyntaxError(line, "apex base points must differ")
        side = _turn(args[5], line)
        new = self._define(args[0], line)
        self.steps.append(Apex(new, base_a, base_b, side, line=line))

    def _parse_edge(self, args, line):
        _exact(args, 2, "edge A B", line)
        a, b = self._use(args[0], line), self._use(args[1], line)
        if a == b:
            raise ScriptSyntaxError(line, "edge endpoints must differ")
        self.steps.append(Edge(a, b, line=line))

    def _parse_copy(self, args, line):
        # copy IDS... anchors A B map SRC:TGT ...
        if "anchors" not in args or "map" not in args:
            raise ScriptSyntaxError(line, "usage: copy IDS... anchors A B map SRC:TGT ...")
        anchors_at = args.index("anchors")
        map_at = args.index("map")
        if map_at != anchors_at + 3 or anchors_at == 0 or map_at == len(args) - 1:
            raise ScriptSyntaxError(line, "usage: copy IDS... anchors A B map SRC:TGT ...")
        sources = []
        for token in args[:anchors_at]:
            sources.extend(_expand_ids(token, line))
        if len(set(sources)) != len(sources):
            raise ScriptSyntaxError(line, "copy lists a source point twice")
        for point in sources:
            self._use(point, line)
        anchor_a = self._use(args[anchors_at + 1], line)
        anchor_b = self._use(args[anchors_at + 2], line)
        if anchor_a == anchor_b:
            raise ScriptSyntaxError(line, "copy anchors must differ")

        pairs = _expand_pairs(args[map_at + 1:], line)
        mapping = dict(pairs)
        if len(mapping) != len(pairs):
            raise ScriptSyntaxError(line, "copy maps a source point twice")
        missing = [s for s in sources if s not in mapping]
        if missing:
            raise ScriptSyntaxError(line, f"copy map does not cover {', '.join(missing)}")
        extra = [s for s in mapping if s not in sources]
        if extra:
            raise ScriptSyntaxError(line, f"copy map names non-source points {', '.join(extra)}")
        targets = [mapping[s] for s in sources]
        if len(set(targets)) != len(targets):
            raise ScriptSyntaxError(line, "copy maps two sources onto one target")
        # Targets are fresh points or existing points the image must land on.
        for target in targets:
            if target not in self.defined:
                self._define(target, line)
        self.steps.append(
            Copy(tuple(sources), tuple((s, mapping[s]) for s in sources), anchor_a, anchor_b, line=line)
        )

    def _parse_closing_edge(self, args, line):
        _exact(args, 2, "closing_edge A B", line)
        if any(isinstance(s, ClosingEdge) for s in self.steps):
            raise ScriptSyntaxError(line, "only one closing_edge is allowed")
        a, b = self._use(args[0], line), self._use(args[1], line)
        if a == b:
            raise ScriptSyntaxError(line, "closing edge endpoints must differ")
        self.steps.append(ClosingEdge(a, b, line=line))

    def _parse_solve(self, args, line):
        # solve NAME [target L] bracket LO HI
        if len(args) == 4:
            target = 1.0
            rest = args[1:]
        elif len(args) == 6:
            _expect(args, 1, "target", line)
            target = _number(args[2], line, "target length")
            if target <= 0:
                raise ScriptSyntaxError(line, "target length must be positive")
            rest = args[3:]
        else:
            raise ScriptSyntaxError(line, "usage: solve NAME [target L] bracket LO HI")
        _expect(rest, 0, "bracket", line)
        lo = _number(rest[1], line, "bracket bound")
        hi = _number(rest[2], line, "bracket bound")
        if not lo < hi:
            raise ScriptSyntaxError(line, "bracket must satisfy LO < HI")
        if any(isinstance(s, SolveDirective) for s in self.steps):
            raise ScriptSyntaxError(line, "only one solve directive is allowed")
        self.param_uses.append((args[0], line))
        self.steps.append(SolveDirective(args[0], target, lo, hi, line=line))

    def _parse_symmetry(self, args, line):
        # symmetry anchors A B map X:Y ...
        if len(args) < 4 or args[0] != "anchors" or args[3] != "map":
            raise ScriptSyntaxError(line, "usage: symmetry anchors A B map X:Y ...")
        if self.symmetry is not None:
            raise ScriptSyntaxError(line, "only one symmetry statement is allowed")
        mapping = {}
        for a, b in _expand_pairs(args[4:], line):
            for x, y in ((a, b), (b, a)):
                if mapping.get(x, y) != y:
                    raise ScriptSyntaxError(line, f"symmetry maps {x} twice")
                mapping[x] = y
        self.symmetry = Symmetry(args[1], args[2], MappingProxyType(mapping))
        self.symmetry_line = line

    def _parse_group(self, args, line):
        if len(args) < 2:
            raise ScriptSyntaxError(line, "usage: group NAME IDS...")
        name = args[0]
        if name in self.groups:
            raise ScriptSyntaxError(line, f"group {name} declared twice")
        members = []
        for token in args[1:]:
            members.extend(_expand_ids(token, line))
        self.groups[name] = tuple(members)
        self.group_lines[name] = line

    def finish(self):
        if not any(isinstance(s, InitialPoints) for s in self.steps):
            raise ScriptSyntaxError(0, "script defines no initial points")
        for name, line in self.param_uses:
            if name not in self.parameters:
                raise UndeclaredParameter(name, line)
        if self.symmetry is not None:
            sym = self.symmetry
            for point in (sym.anchor_a, sym.anchor_b, *sym.mapping):
                if point not in self.defined:
                    raise UnknownPoint(point, self.symmetry_line)
        for name, members in self.groups.items():
            for point in members:
                if point not in self.defined:
                    raise UnknownPoint(point, self.group_lines[name])
        return Construction(
            steps=tuple(self.steps),
            parameters=MappingProxyType(dict(self.parameters)),
            symmetry=self.symmetry,
            groups=MappingProxyType(dict(self.groups)),
        )


def parse_script(text):
    """Parse construction-script text into a validated Construction."""
    parser = _ScriptParser()
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            parser.parse_line(tokens, number)
    construction = parser.finish()
    logger.info(
        "Parsed script: %d steps, %d points, %d parameters",
        len(construction.steps), len(parser.defined), len(construction.parameters),
    )
    return construction


def load_script(path):
    """Read and parse a `.msc` file."""
    return parse_script(Path(path).read_text(encoding="utf-8"))


def builtin_script_text():
    """Source text of the bundled 54-vertex construction."""
    resource = pkg_resources.files("matchstick_graphs") / "scripts" / BUILTIN_SCRIPT
    return resource.read_text(encoding="utf-8")


@functools.lru_cache(maxsize=1)
def builtin_graph54():
    """The bundled construction of the 3-regular girth-5 graph on 54 vertices."""
    return parse_script(builtin_script_text())


# ---------------------------------------------------------------------------
# Orientation helpers (used by calibration)
# ---------------------------------------------------------------------------

def orientation_vector(construction):
    """(step index, Turn or None) for every step that carries a sign."""
    vector = []
    for index, step in enumerate(construction.steps):
        if isinstance(step, AngleEdge):
            vector.append((index, step.turn))
        elif isinstance(step, Apex):
            vector.append((index, step.side))
    return tuple(vector)


def with_orientations(construction, signs):
    """Copy of `construction` with the given step signs (index -> Turn) applied."""
    steps = list(construction.steps)
    for index, sign in signs.items():
        step = steps[index]
        if isinstance(step, AngleEdge):
            steps[index] = replace(step, turn=sign)
        elif isinstance(step, Apex):
            steps[index] = replace(step, side=sign)
        else:
            raise ValueError(f"step {index} ({step.kind}) has no orientation")
    return replace(construction, steps=tuple(steps))


def unresolve_orientations(construction):
    """Copy of `construction` with every sign cleared."""
    return with_orientations(
        construction, {index: None for index, _ in orientation_vector(construction)}
    )


# ---------------------------------------------------------------------------
# Embeddings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Embedding:
    """Coordinates and edges produced by executing a construction."""

    coords: Mapping[str, Coord]
    edges: Tuple[Tuple[str, str], ...]
    closing: Optional[Tuple[str, str]] = None
    params: Mapping[str, float] = field(default_factory=dict)
    symmetry: Optional[Symmetry] = None
    groups: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)

    @property
    def vertices(self):
        return tuple(self.coords)

    def is_closing(self, edge):
        return self.closing is not None and set(edge) == set(self.closing)

    @property
    def unit_edges(self):
        return tuple(e for e in self.edges if not self.is_closing(e))

    def length(self, a, b):
        return geom.distance(self.coords[a], self.coords[b])

    def adjacency(self):
        neighbors = {v: set() for v in self.coords}
        for a, b in self.edges:
            neighbors[a].add(b)
            neighbors[b].add(a)
        return neighbors

    def to_dict(self):
        data = {
            "points": {v: [c.x, c.y] for v, c in self.coords.items()},
            "edges": [[a, b] for a, b in self.edges],
            "closing": list(self.closing) if self.closing else None,
            "params": dict(self.params),
        }
        if self.symmetry is not None:
            data["symmetry"] = self.symmetry.to_dict()
        if self.groups:
            data["groups"] = {name: list(members) for name, members in self.groups.items()}
        return data

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data):
        try:
            coords = {}
            for v, xy in data["points"].items():
                if len(xy) != 2:
                    raise ValueError(f"point {v} needs exactly two coordinates")
                coords[str(v)] = Coord(float(xy[0]), float(xy[1]))
            edges = tuple((str(a), str(b)) for a, b in data["edges"])
            closing = tuple(str(v) for v in data["closing"]) if data.get("closing") else None
            params = {str(k): float(v) for k, v in data.get("params", {}).items()}
            symmetry = None
            if data.get("symmetry"):
                anchor_a, anchor_b = data["symmetry"]["anchors"]
                symmetry = Symmetry(anchor_a, anchor_b, MappingProxyType(dict(data["symmetry"]["map"])))
            groups = {name: tuple(members) for name, members in data.get("groups", {}).items()}
        except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
            raise EmbeddingFormatError(f"malformed embedding document: {exc}") from exc

        def require(point, where):
            if point not in coords:
                raise EmbeddingFormatError(f"{where} references unknown point {point}")

        for a, b in edges:
            require(a, f"edge {a}-{b}")
            require(b, f"edge {a}-{b}")
            if a == b:
                raise EmbeddingFormatError(f"edge {a}-{b} joins a point to itself")
        if len({frozenset(e) for e in edges}) != len(edges):
            raise EmbeddingFormatError("duplicate edges")
        if closing is not None:
            if len(closing) != 2:
                raise EmbeddingFormatError("closing must name exactly two points")
            for point in closing:
                require(point, "closing")
        if symmetry is not None:
            require(symmetry.anchor_a, "symmetry")
            require(symmetry.anchor_b, "symmetry")
        for name, members in groups.items():
            for point in members:
                require(point, f"group {name}")
        return cls(
            coords=MappingProxyType(coords),
            edges=edges,
            closing=closing,
            params=MappingProxyType(params),
            symmetry=symmetry,
            groups=MappingProxyType(groups),
        )

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise EmbeddingFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

class Builder:
    """
    Mutable execution state.

    Steps are applied one at a time so the calibration search can branch on
    signs; `fork` gives an independent copy.
    """

    def __init__(self, tolerances=DEFAULT_TOLERANCES):
        self.tolerances = tolerances
        self.coords: Dict[str, Coord] = {}
        self.edges = []
        self._edge_keys = set()
        self.closing = None

    def fork(self):
        other = Builder(self.tolerances)
        other.coords = dict(self.coords)
        other.edges = list(self.edges)
        other._edge_keys = set(self._edge_keys)
        other.closing = self.closing
        return other

    def _add_edge(self, a, b):
        key = frozenset((a, b))
        if key in self._edge_keys:
            return False
        self._edge_keys.add(key)
        self.edges.append((a, b))
        return True

    def apply(self, number, step, values):
        """Apply one step (1-based `number` for error messages). Returns the new edges."""
        before = len(self.edges)
        coords = self.coords

        if isinstance(step, InitialPoints):
            coords[step.p] = Coord(0.0, 0.0)
            coords[step.q] = Coord(1.0, 0.0)
            self._add_edge(step.p, step.q)

        elif isinstance(step, AngleEdge):
            if step.turn is None:
                raise UnresolvedOrientation(number)
            angle = values[step.angle] if isinstance(step.angle, str) else step.angle
            coords[step.new] = geom.place_by_angle(coords[step.base], coords[step.ref], angle, step.turn)
            self._add_edge(step.new, step.base)

        elif isinstance(step, Apex):
            if step.side is None:
                raise UnresolvedOrientation(number)
            a, b = coords[step.base_a], coords[step.base_b]
            try:
                candidates = geom.circle_circle_intersection(a, 1.0, b, 1.0)
            except NoIntersection as exc:
                raise ApexInfeasible(number, exc.distance) from exc
            if len(candidates) == 1 or step.side is Turn.CCW:
                coords[step.new] = candidates[0]
            else:
                coords[step.new] = candidates[1]
            self._add_edge(step.new, step.base_a)
            self._add_edge(step.new, step.base_b)

        elif isinstance(step, Edge):
            length = geom.distance(coords[step.a], coords[step.b])
            if abs(length - 1.0) > self.tolerances.unit_length:
                raise EdgeLengthMismatch(step.a, step.b, length)
            self._add_edge(step.a, step.b)

        elif isinstance(step, Copy):
            self._apply_copy(step)

        elif isinstance(step, ClosingEdge):
            self._add_edge(step.a, step.b)
            self.closing = (step.a, step.b)

        return self.edges[before:]

    def _apply_copy(self, step):
        coords = self.coords
        center = geom.midpoint(coords[step.anchor_a], coords[step.anchor_b])
        target_of = step.target_of
        for source in step.sources:
            image = geom.point_reflect(coords[source], center)
            target = target_of[source]
            if target in coords:
                offset = geom.distance(image, coords[target])
                if offset > self.tolerances.copy_anchor:
                    raise CopyAnchorMismatch(source, offset)
            else:
                coords[target] = image
        members = set(step.sources)
        for a, b in list(self.edges):
            if (a, b) == self.closing:
                continue
            if a in members and b in members:
                self._add_edge(target_of[a], target_of[b])

    def to_embedding(self, construction, values):
        return Embedding(
            coords=MappingProxyType(dict(self.coords)),
            edges=tuple(self.edges),
            closing=self.closing,
            params=MappingProxyType(dict(values)),
            symmetry=construction.symmetry,
            groups=construction.groups,
        )


def execute(construction, params=None, tolerances=DEFAULT_TOLERANCES):
    """Run every step of `construction` with parameter overrides `params`."""
    values = construction.resolve_parameters(params)
    builder = Builder(tolerances)
    for number, step in enumerate(construction.steps, start=1):
        builder.apply(number, step, values)
    embedding = builder.to_embedding(construction, values)
    logger.debug(
        "Executed construction: %d points, %d edges", len(embedding.coords), len(embedding.edges)
    )
    return embedding
