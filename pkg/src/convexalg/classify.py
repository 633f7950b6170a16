"""Recover the classification data of an algebra from its operations.

Constructed handles expose their data set exactly.  Black boxes are
probed: the eater set by absorption tests on a grid with bisection
refinement of every boundary, and each gap's endpoint tag by the growth
of the product sequence built from successive path preimages inside the
gap.  Probed answers are heuristic by nature: finite probing cannot tell
a half-line gap from a capped gap with an enormous scale, so an
inconclusive sequence raises instead of guessing.
"""

from __future__ import annotations

from .core import Algebra, StructuredAlgebra, eats
from .eaterspec import Component, EaterSpec, GapTag, validate_spec
from .rational import ZERO, Rat, rat

GRID_DEFAULT = 64
REFINE_STEPS = 40         # bisection depth per boundary: error <= 2^-40 of a cell
TAU_DEPTH_DEFAULT = 30
TAU_THRESHOLD_DEFAULT = 1e3
TAU_CONV_TOL = 1e-8
TAU_GROWTH_FACTOR = 1.5   # sustained growth over half the sequence: divergent
POINT_COLLAPSE_TOLS = 16  # spurious width, in handle tolerances, absorbed into a point


class UndecidedError(RuntimeError):
    """Neither divergence nor convergence of the growth sequence certified."""


class NotAGapError(ValueError):
    """Absorption structure contradicts the claimed gap."""


def _is_eater(alg: Algebra, y: Rat) -> bool:
    return eats(alg, alg.point(y), alg.zero())


def _refine_boundary(alg: Algebra, inside: Rat, outside: Rat, steps: int) -> Rat:
    """Bisect between a confirmed eater and a confirmed non-eater.

    Returns the confirmed-eater bound; the true boundary lies between it
    and the last non-eater, within 2^-steps of the starting cell.
    """
    lo, hi = inside, outside
    for _ in range(steps):
        mid = (lo + hi) / 2
        if _is_eater(alg, mid):
            lo = mid
        else:
            hi = mid
    return lo


def extract_eaters(alg: Algebra, grid: int = GRID_DEFAULT,
                   refine: int = REFINE_STEPS) -> list[Component]:
    """Closed components of the eater set.

    Exact read-off for constructed handles.  Otherwise probes absorption
    of 0 at every grid point and refines each component boundary by
    bisection; components narrower than the handle's resolving power
    collapse to their confirmed grid point.
    """
    if isinstance(alg, StructuredAlgebra):
        return list(alg.spec.components)
    if grid < 2:
        raise ValueError("grid must be at least 2")
    hits = [i for i in range(grid + 1) if _is_eater(alg, rat(i, grid))]
    comps: list[Component] = []
    collapse_width = POINT_COLLAPSE_TOLS * alg.tol if alg.tol else None
    i = 0
    while i < len(hits):
        j = i
        while j + 1 < len(hits) and hits[j + 1] == hits[j] + 1:
            j += 1
        run_lo, run_hi = hits[i], hits[j]
        left = rat(run_lo, grid)
        if run_lo > 0:
            left = _refine_boundary(alg, left, rat(run_lo - 1, grid), refine)
        right = rat(run_hi, grid)
        if run_hi < grid:
            right = _refine_boundary(alg, right, rat(run_hi + 1, grid), refine)
        if collapse_width is not None and run_lo == run_hi and float(right - left) <= collapse_width:
            comps.append(Component.point(rat(run_lo, grid)))
        elif left == right:
            comps.append(Component.point(left))
        else:
            comps.append(Component.interval(left, right))
        i = j + 1
    return comps


def growth_sequence(alg: Algebra, a, b, depth: int = TAU_DEPTH_DEFAULT) -> list[float]:
    """The scale sequence t_1..t_depth of a gap (a, b).

    Probe points y_k = b - (b-a)/2^k walk up to b; each ratio r_k is the
    path parameter carrying y_{k+1} back to y_k, found by bisection, and
    t_{k+1} = t_k / r_k.  The sequence converges to the gap's finite local
    scale (capped case) or diverges (half-line case).
    """
    a_pt = alg.point(a)
    af, bf = float(a), float(b)
    width = bf - af

    def y_at(k: int) -> float:
        return bf - width / (2.0 ** k)

    def path_value(y: float, t: float) -> float:
        return float(alg.combine(alg.point(y), a_pt, t))

    t_seq = [1.0]
    for k in range(1, depth):
        y_k, y_k1 = y_at(k), y_at(k + 1)
        lo, hi = 0.0, 1.0
        for _ in range(64):
            mid = (lo + hi) / 2.0
            if path_value(y_k1, mid) < y_k:
                lo = mid
            else:
                hi = mid
        r_k = (lo + hi) / 2.0
        if not 0.0 < r_k < 1.0:
            raise NotAGapError(f"path preimage degenerate inside ({a}, {b})")
        t_seq.append(t_seq[-1] / r_k)
    return t_seq


def extract_gap_tag(alg: Algebra, a, b, depth: int = TAU_DEPTH_DEFAULT,
                    threshold: float = TAU_THRESHOLD_DEFAULT) -> GapTag:
    """Endpoint tag of the gap (a, b).

    Constructed handles answer from their spec.  Probed handles examine
    the growth sequence: divergence is certified either by crossing the
    hard threshold or by sustained multiplicative growth across the
    second half of the sequence (a convergent scale sequence flattens);
    convergence by a vanishing final increment.  Anything else raises
    UndecidedError rather than guessing.
    """
    a, b = rat(a), rat(b)
    if isinstance(alg, StructuredAlgebra):
        for i, tag in enumerate(alg.spec.gap_tags):
            if alg.spec.components[i].hi == a and alg.spec.components[i + 1].lo == b:
                return tag
        raise NotAGapError(f"({a},{b}) is not a gap of {alg.spec!r}")
    if not (_is_eater(alg, a) and _is_eater(alg, b)):
        raise NotAGapError(f"endpoints of ({a},{b}) are not both eaters")
    if _is_eater(alg, (a + b) / 2):
        raise NotAGapError(f"midpoint of ({a},{b}) is an eater")
    t_seq = growth_sequence(alg, a, b, depth)
    t_last, t_prev = t_seq[-1], t_seq[-2]
    t_half = t_seq[len(t_seq) // 2]
    if t_last > threshold or t_last >= TAU_GROWTH_FACTOR * t_half:
        return GapTag.INFINITY
    if abs(t_last - t_prev) < TAU_CONV_TOL * t_last:
        return GapTag.ONE
    raise UndecidedError(
        f"growth sequence for ({a},{b}) neither converged nor diverged "
        f"(t_last={t_last:.6g}, t_prev={t_prev:.6g})"
    )


def classify(alg: Algebra, grid: int = GRID_DEFAULT, depth: int = TAU_DEPTH_DEFAULT,
             threshold: float = TAU_THRESHOLD_DEFAULT) -> EaterSpec:
    """Full data set of the algebra: eater components plus gap tags.

    The identity on constructed handles; probed for everything else.
    """
    if isinstance(alg, StructuredAlgebra):
        return alg.spec
    comps = extract_eaters(alg, grid)
    tags = [
        extract_gap_tag(alg, comps[i].hi, comps[i + 1].lo, depth, threshold)
        for i in range(len(comps) - 1)
    ]
    return validate_spec(EaterSpec(tuple(comps), tuple(tags)))


def components_floor(comps: list[Component], y: Rat) -> Rat:
    """max of a component union intersected with [0, y]; mirrors eater_floor."""
    best = None
    for c in comps:
        if c.lo > y:
            break
        best = y if y <= c.hi else c.hi
    if best is None:
        raise ValueError("no component at or below y")
    return best


def check_v_max_formula(alg: Algebra, y) -> bool:
    """Does the path infimum from 0 up to y hit the largest eater below y?"""
    from .core import path_infimum  # local import to avoid cycle at module load

    if isinstance(alg, StructuredAlgebra):
        y_pt = alg.point(y)
        v = path_infimum(alg, alg.zero(), y_pt)
        expected = y_pt if y_pt.offset == ZERO else alg.eater_floor_of(y_pt)
        return v == expected
    y = rat(y)
    comps = extract_eaters(alg)
    expected = components_floor(comps, y)
    v = path_infimum(alg, alg.zero(), alg.point(y))
    return alg.eq(v, alg.point(expected))
