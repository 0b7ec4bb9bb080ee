"""
Solving the free angle, sweeping it, and calibrating orientation signs.

The closing edge of a construction has a length that depends on one free
parameter. `solve_param` finds the value where that length hits its target,
`sweep` samples the whole range, and `calibrate_orientations` searches the
turn/side signs a script leaves open.
"""

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from matchstick_graphs import geom
from matchstick_graphs.config import DEFAULT_TOLERANCES
from matchstick_graphs.construct import (
    AngleEdge,
    Apex,
    Builder,
    Copy,
    execute,
    with_orientations,
)
from matchstick_graphs.errors import (
    ConstructionError,
    GeometryError,
    MaxIterations,
    NoAssignmentFound,
    NoSignChange,
    SolveError,
)
from matchstick_graphs.geom import Turn
from matchstick_graphs.graphcheck import crossing_report, verify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootResult:
    value: float
    residual: float
    iterations: int
    bracket_lo: float
    bracket_hi: float
    history: Tuple[Tuple[float, float], ...] = ()


@dataclass(frozen=True)
class SolveResult:
    """Solved parameter value and how it was reached."""

    param_name: str
    value: float
    residual: float
    iterations: int
    bracket_lo: float
    bracket_hi: float
    history: Tuple[Tuple[float, float], ...] = ()
    sign_changes: Optional[int] = None

    def to_dict(self):
        return {
            "param_name": self.param_name,
            "value": self.value,
            "value_deg": f"{self.value:.12f}",
            "residual": self.residual,
            "iterations": self.iterations,
            "bracket_lo": self.bracket_lo,
            "bracket_hi": self.bracket_hi,
            "history": [list(pair) for pair in self.history],
            "sign_changes": self.sign_changes,
        }


@dataclass(frozen=True)
class SweepSample:
    param_value: float
    closing_length: float
    min_clearance: float
    crossings_found: bool


@dataclass(frozen=True)
class Trajectories:
    """Point positions over a parameter sweep."""

    values: Tuple[float, ...]
    paths: Dict[str, List[geom.Coord]] = field(default_factory=dict)


def find_root(f, lo, hi, tol=DEFAULT_TOLERANCES.residual,
              xtol=DEFAULT_TOLERANCES.bracket_width,
              max_iter=DEFAULT_TOLERANCES.max_iterations):
    """
    Bracketed root of f on [lo, hi]: bisection with secant and
    inverse-quadratic steps (Brent).

    Stops when |f| <= tol or the bracket is at most xtol wide.
    """
    f_lo = f(lo)
    f_hi = f(hi)
    history = [(lo, hi)]
    if f_lo == 0.0:
        return RootResult(lo, f_lo, 0, lo, lo, tuple(history))
    if f_hi == 0.0:
        return RootResult(hi, f_hi, 0, hi, hi, tuple(history))
    if f_lo * f_hi > 0.0:
        raise NoSignChange(lo, hi, f_lo, f_hi)

    xpre, fpre = lo, f_lo
    xcur, fcur = hi, f_hi
    xblk, fblk = 0.0, 0.0
    spre = scur = 0.0
    delta = xtol / 2.0

    for iteration in range(max_iter + 1):
        if fpre * fcur < 0.0:
            xblk, fblk = xpre, fpre
            spre = scur = xcur - xpre
        if abs(fblk) < abs(fcur):
            xpre, xcur, xblk = xcur, xblk, xcur
            fpre, fcur, fblk = fcur, fblk, fcur

        bracket = (min(xcur, xblk), max(xcur, xblk))
        if history[-1] != bracket:
            history.append(bracket)
        if abs(fcur) <= tol or abs(xblk - xcur) <= xtol:
            return RootResult(xcur, fcur, iteration, bracket[0], bracket[1], tuple(history))
        if iteration == max_iter:
            break

        sbis = (xblk - xcur) / 2.0
        if abs(spre) > delta and abs(fcur) < abs(fpre):
            if xpre == xblk:
                stry = -fcur * (xcur - xpre) / (fcur - fpre)
            else:
                dpre = (fpre - fcur) / (xpre - xcur)
                dblk = (fblk - fcur) / (xblk - xcur)
                stry = -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            if 2.0 * abs(stry) < min(abs(spre), 3.0 * abs(sbis) - delta):
                spre, scur = scur, stry
            else:
                spre = scur = sbis
        else:
            spre = scur = sbis

        xpre, fpre = xcur, fcur
        if abs(scur) > delta:
            xcur += scur
        else:
            xcur += delta if sbis > 0 else -delta
        fcur = f(xcur)

    raise MaxIterations(max_iter, min(xcur, xblk), max(xcur, xblk))


def _solve_setup(construction, param=None, target=None):
    """Work out (parameter, target length, default bracket) for a construction."""
    if construction.closing_edge is None:
        raise SolveError("construction has no closing edge to solve for")
    directive = construction.solve_directive
    if param is None:
        if directive is not None:
            param = directive.parameter
        elif len(construction.free_parameters) == 1:
            param = construction.free_parameters[0]
        else:
            raise SolveError("cannot tell which parameter to solve; name one explicitly")
    if target is None:
        target = directive.target if directive is not None else 1.0
    if directive is not None and directive.parameter == param:
        bracket = (directive.lo, directive.hi)
    else:
        spec = construction.parameters[param]
        bracket = (spec.lo, spec.hi)
    return param, target, bracket


def residual(construction, value, param=None, target=None, tolerances=DEFAULT_TOLERANCES):
    """Closing length minus its target with `param` set to `value` degrees."""
    param, target, _ = _solve_setup(construction, param, target)
    embedding = execute(construction, {param: value}, tolerances)
    return embedding.length(*embedding.closing) - target


def count_sign_changes(construction, bracket=None, samples=DEFAULT_TOLERANCES.sweep_steps,
                       param=None, tolerances=DEFAULT_TOLERANCES):
    """Number of sign changes of the residual over uniform samples of the bracket."""
    param, target, default_bracket = _solve_setup(construction, param)
    lo, hi = bracket or default_bracket
    signs = [
        np.sign(residual(construction, float(v), param, target, tolerances))
        for v in np.linspace(lo, hi, samples)
    ]
    # Exact zeros carry no sign; a root landing on a sample still counts once.
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def solve_param(construction, bracket=None, tol=None, param=None,
                tolerances=DEFAULT_TOLERANCES, check_unique=True):
    """Solve for the parameter value that gives the closing edge its target length."""
    param, target, default_bracket = _solve_setup(construction, param)
    lo, hi = bracket or default_bracket
    tol = tolerances.residual if tol is None else tol

    def f(value):
        return residual(construction, value, param, target, tolerances)

    root = find_root(f, lo, hi, tol=tol, xtol=tolerances.bracket_width,
                     max_iter=tolerances.max_iterations)

    changes = None
    if check_unique:
        changes = count_sign_changes(construction, (lo, hi), tolerances.sweep_steps, param, tolerances)
        if changes > 1:
            logger.warning(
                "Residual changes sign %d times on [%g, %g]; returning the root at %.12f",
                changes, lo, hi, root.value,
            )
    logger.info("Solved %s = %.12f (residual %.3e, %d iterations)",
                param, root.value, root.residual, root.iterations)
    return SolveResult(
        param_name=param,
        value=root.value,
        residual=root.residual,
        iterations=root.iterations,
        bracket_lo=root.bracket_lo,
        bracket_hi=root.bracket_hi,
        history=root.history,
        sign_changes=changes,
    )


def _sample(construction, param, target, value, tolerances):
    embedding = execute(construction, {param: value}, tolerances)
    drawing = crossing_report(embedding, tolerances.coincidence)
    return SweepSample(
        param_value=value,
        closing_length=embedding.length(*embedding.closing),
        min_clearance=drawing.min_clearance,
        crossings_found=bool(drawing.crossings),
    )


def sweep(construction, lo, hi, steps=DEFAULT_TOLERANCES.sweep_steps, param=None,
          tolerances=DEFAULT_TOLERANCES, workers=None):
    """Uniform samples of closing length and clearance, endpoints included, ascending."""
    if steps < 2:
        raise ValueError("a sweep needs at least 2 steps")
    lo, hi = sorted((float(lo), float(hi)))
    param, target, _ = _solve_setup(construction, param)
    values = [float(v) for v in np.linspace(lo, hi, steps)]

    def run(value):
        return _sample(construction, param, target, value, tolerances)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(run, values))
    else:
        samples = [run(v) for v in values]
    logger.info("Swept %s over [%g, %g] in %d steps", param, lo, hi, steps)
    return samples


def sweep_to_csv(samples, param_name="mu"):
    """CSV text with one row per sample, full double precision."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f"{param_name}_deg", "closing_length", "min_clearance", "crossings"])
    for s in samples:
        writer.writerow([
            f"{s.param_value:.17g}",
            f"{s.closing_length:.17g}",
            f"{s.min_clearance:.17g}",
            "true" if s.crossings_found else "false",
        ])
    return buffer.getvalue()


def point_trajectories(construction, ids, lo, hi, steps=DEFAULT_TOLERANCES.sweep_steps,
                       param=None, rotation_deg=0.0, tolerances=DEFAULT_TOLERANCES):
    """
    Positions of `ids` across a sweep from lo to hi (lo may exceed hi).

    Coordinates are reported in the construction frame rotated counterclockwise
    by `rotation_deg` about the first initial point.
    """
    if param is None:
        param = _solve_setup(construction)[0]
    values = tuple(float(v) for v in np.linspace(lo, hi, steps))
    paths = {point: [] for point in ids}
    for value in values:
        embedding = execute(construction, {param: value}, tolerances)
        for point in ids:
            paths[point].append(geom.rotate(embedding.coords[point], rotation_deg))
    return Trajectories(values, paths)


# ---------------------------------------------------------------------------
# Orientation calibration
# ---------------------------------------------------------------------------

def _sign_options(step):
    if isinstance(step, AngleEdge):
        return [step.turn] if step.turn is not None else [Turn.CCW, Turn.CW]
    if isinstance(step, Apex):
        return [step.side] if step.side is not None else [Turn.CCW, Turn.CW]
    return [None]


def _with_sign(step, sign):
    if isinstance(step, AngleEdge):
        return AngleEdge(step.new, step.base, step.ref, step.angle, sign, line=step.line)
    if isinstance(step, Apex):
        return Apex(step.new, step.base_a, step.base_b, sign, line=step.line)
    return step


def _new_points(step, before):
    if isinstance(step, (AngleEdge, Apex)):
        return [step.new]
    if isinstance(step, Copy):
        return [t for _, t in step.mapping if t not in before]
    return []


def _prefix_conflict(builder, new_points, new_edges, tolerances):
    """True when the partial drawing already has a contact or crossing."""
    coords = builder.coords
    for point in new_points:
        for other, c in coords.items():
            if other != point and geom.distance(c, coords[point]) < tolerances.prune_coincidence:
                return True
    fresh = set(new_edges)
    for a1, a2 in new_edges:
        for b1, b2 in builder.edges:
            if (b1, b2) in fresh and (b1, b2) >= (a1, a2):
                continue
            relation = geom.segment_relation(
                coords[a1], coords[a2], coords[b1], coords[b2], tolerances.coincidence
            )
            if relation.is_violation:
                return True
    return False


def _accepts(candidate, expected, value_tol, require_passed, tolerances):
    params = None
    if candidate.solve_directive is not None:
        try:
            result = solve_param(candidate, tolerances=tolerances, check_unique=False)
        except (SolveError, ConstructionError, GeometryError):
            return False
        if expected is not None and abs(result.value - expected) > value_tol:
            return False
        params = {result.param_name: result.value}
    try:
        report = verify(execute(candidate, params, tolerances), tolerances)
    except (ConstructionError, GeometryError):
        return False
    if require_passed:
        return report.passed
    return (
        not report.crossings
        and report.min_clearance > tolerances.clearance_floor
        and report.max_unit_deviation <= tolerances.unit_length
    )


def calibrate_orientations(skeleton, expected=None, value_tol=1e-6, require_passed=True,
                           tolerances=DEFAULT_TOLERANCES):
    """
    Depth-first search over the open turn/side signs of `skeleton`.

    Prefixes whose partial drawing has a crossing, two vertices closer than
    `tolerances.prune_coincidence`, or an infeasible apex are pruned. A full
    assignment is accepted when the drawing verifies at the solved parameter
    (and the solved value matches `expected` within `value_tol`, if given).
    Returns every accepted assignment as {step index: Turn}.
    """
    values = skeleton.resolve_parameters()
    steps = skeleton.steps
    accepted = []
    explored = 0

    def descend(index, builder, signs):
        nonlocal explored
        explored += 1
        if index == len(steps):
            candidate = with_orientations(skeleton, signs)
            if _accepts(candidate, expected, value_tol, require_passed, tolerances):
                accepted.append(dict(signs))
            return
        step = steps[index]
        for sign in _sign_options(step):
            branch = builder.fork()
            resolved = _with_sign(step, sign)
            before = set(branch.coords)
            try:
                new_edges = branch.apply(index + 1, resolved, values)
            except (ConstructionError, GeometryError):
                continue
            if _prefix_conflict(branch, _new_points(resolved, before), new_edges, tolerances):
                continue
            descend(index + 1, branch, signs if sign is None else {**signs, index: sign})

    descend(0, Builder(tolerances), {})
    if not accepted:
        logger.warning("Orientation search exhausted %d nodes without a valid drawing", explored)
        raise NoAssignmentFound(explored)
    logger.info("Orientation search: %d assignment(s) accepted, %d nodes", len(accepted), explored)
    return accepted
