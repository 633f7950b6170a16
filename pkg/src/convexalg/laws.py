"""Seeded, randomized verification of the algebra laws.

Every suite walks a deterministic sample stream (same seed, same report),
evaluates with the handle's own arithmetic, and records concrete
counterexample witnesses.  Limits are certified as monotone K-deep
estimates: a law quantifying over a limit passes when the final probe is
within one step's progress of the limit value (doubled for slack), which
is exact for affine chains and one-sided in general.  Exact handles run
with zero tolerance; float handles use their equality tolerance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import (
    Algebra,
    PointDist,
    PreconditionError,
    StructuredAlgebra,
    barycenter,
    eats,
    path_kernel,
    KernelClass,
)
from .eaterspec import GapTag
from .plonka import Carrier, CarrierKind, SPoint, ambient_exact, eater_point, locate, spoint_le
from .rational import ONE, ZERO, Rat, rat

AXIOMS = "axioms"
MONOTONICITY = "monotonicity"
UPPER_SEMICONTINUITY = "upper-semicontinuity"
LOWER_SEMICONTINUITY = "lower-semicontinuity"
CANCELLATION = "cancellation"
EXTENSION_LSC = "extension-lsc"
KERNEL_COHERENCE = "kernel-coherence"

CORE_SUITES = (AXIOMS, MONOTONICITY, UPPER_SEMICONTINUITY, LOWER_SEMICONTINUITY, CANCELLATION)

DEFAULT_DEPTH = 40
FLOAT_TOL_FLOOR = 1e-9
MAX_STORED_FAILURES = 8

_SPECIALS = (ZERO, rat(1, 4), rat(1, 2), rat(3, 4), ONE)


@dataclass(frozen=True)
class Sampler:
    """Deterministic sample stream: same seed and count, same stream."""

    seed: int
    count: int
    max_den: int = 64


@dataclass
class LawReport:
    law: str
    samples: int
    failure_count: int = 0
    failures: list = field(default_factory=list)
    tol_used: float = 0.0
    note: str | None = None
    # probe chains that were not monotone; evidence against the
    # monotonicity law, reported there, not against this law
    mo_probe_violations: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    @property
    def mode(self) -> str:
        return "exact" if self.tol_used == 0.0 else f"tol({self.tol_used:g})"

    def record(self, witness) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_STORED_FAILURES:
            self.failures.append(witness)

    def line(self) -> str:
        status = "pass" if self.passed else f"FAIL({self.failure_count})"
        return f"{self.law:<22} {status:<10} samples={self.samples} mode={self.mode}"


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def _rand_unit_rat(rnd: random.Random, max_den: int) -> Rat:
    if rnd.random() < 0.125:
        return rnd.choice(_SPECIALS)
    den = rnd.randint(1, max_den)
    return rat(rnd.randint(0, den), den)


def _rand_param(rnd: random.Random, max_den: int) -> Rat:
    den = rnd.randint(2, max_den)
    return rat(rnd.randint(1, den - 1), den)


def _sample_spoint(alg: StructuredAlgebra, rnd: random.Random, max_den: int) -> SPoint:
    """Block-stratified structured point: eaters, gap offsets, top offsets."""
    spec = alg.spec
    comps = spec.components
    n_gaps = len(spec.gap_tags)
    choices = len(comps) + n_gaps + (1 if spec.top_open else 0)
    pick = rnd.randrange(choices)
    if pick < len(comps):
        c = comps[pick]
        if c.is_point:
            value = c.lo
        else:
            value = c.lo + (c.hi - c.lo) * _rand_unit_rat(rnd, max_den)
        return _eater_spoint(alg, value)
    pick -= len(comps)
    if pick < n_gaps:
        a, b = comps[pick].hi, comps[pick + 1].lo
        tag = spec.gap_tags[pick]
        if tag is GapTag.ONE:
            den = rnd.randint(1, max_den)
            off = rat(rnd.randint(0, den - 1), den)
        else:
            off = _rand_unit_rat(rnd, max_den) * rnd.randint(1, 6)
        return SPoint(a, off, Carrier(CarrierKind.GAP, a, b, tag))
    a = spec.max_eater
    return SPoint(a, _rand_unit_rat(rnd, max_den), Carrier(CarrierKind.TOP, a))


def _eater_spoint(alg: StructuredAlgebra, value: Rat) -> SPoint:
    return eater_point(alg.spec, value)


def sample_point(alg: Algebra, rnd: random.Random, max_den: int = 64):
    if isinstance(alg, StructuredAlgebra):
        return _sample_spoint(alg, rnd, max_den)
    return alg.point(_rand_unit_rat(rnd, max_den))


def sample_ambient(alg: Algebra, rnd: random.Random, max_den: int = 64) -> Rat:
    """Ambient rational coordinate that the handle can represent exactly
    (for structured handles: not interior to an Infinity gap)."""
    if not isinstance(alg, StructuredAlgebra):
        return _rand_unit_rat(rnd, max_den)
    for _ in range(16):
        p = _sample_spoint(alg, rnd, max_den)
        amb = ambient_exact(alg.spec, p)
        if amb is not None:
            return amb
    return alg.spec.components[rnd.randrange(len(alg.spec.components))].lo


def _point_at(alg: Algebra, amb: Rat):
    """Handle point for an ambient rational; approximate inside Infinity gaps."""
    if isinstance(alg, StructuredAlgebra):
        return locate(alg.spec, amb, allow_approx=True)
    return alg.point(amb)


# ---------------------------------------------------------------------------
# Numeric gap measurements (exact where possible)
# ---------------------------------------------------------------------------

def _pair_diff(alg: Algebra, hi, lo):
    """hi - lo as (value, exact); offsets are compared within one carrier."""
    if isinstance(alg, StructuredAlgebra):
        if not hi.approx and not lo.approx:
            ehi = ambient_exact(alg.spec, hi)
            elo = ambient_exact(alg.spec, lo)
            if ehi is not None and elo is not None:
                return ehi - elo, True
        if hi.carrier == lo.carrier:
            d = hi.offset - lo.offset
            if hi.approx or lo.approx:
                return float(d), False
            return d, True
        return alg.embed(hi) - alg.embed(lo), False
    if alg.exact:
        return hi - lo, True
    return float(hi) - float(lo), False


def _chain_gaps(alg: Algebra, limit, prev, last, from_above: bool):
    """Deficit of the final probe against the limit, and the final step size.

    Measured in one consistent scale: exact ambient rationals when all
    three points admit them, a shared carrier's local coordinates
    otherwise, floats as a last resort.
    """
    if from_above:
        deficit, e1 = _pair_diff(alg, last, limit)
    else:
        deficit, e1 = _pair_diff(alg, limit, last)
    step, e2 = _pair_diff(alg, last, prev) if not from_above else _pair_diff(alg, prev, last)
    exact = e1 and e2
    if step < 0:
        step = -step if not exact else ZERO - step
    return deficit, step, exact


def depth_probes(depth: int) -> list[int]:
    base = [k for k in (1, 2, 3, 4, 6, 8, 12, 16, 24, 32) if k < depth - 1]
    return base + [max(depth - 1, 1), depth]


def _tol_for(alg: Algebra, exact_sample: bool) -> float:
    if exact_sample and alg.exact:
        return 0.0
    return max(alg.tol, FLOAT_TOL_FLOOR)


def _exceeds(deficit, step, tol: float) -> bool:
    """deficit > 2*step + tol, without float contamination when tol is 0."""
    if tol:
        return deficit > 2 * step + tol
    return deficit > 2 * step


# ---------------------------------------------------------------------------
# The law suites
# ---------------------------------------------------------------------------

def check_axioms(alg: Algebra, s: Sampler) -> LawReport:
    """Idempotence, parametric commutativity and associativity, projection."""
    rnd = random.Random(s.seed)
    report = LawReport(AXIOMS, s.count, tol_used=alg.tol)
    for _ in range(s.count):
        x = sample_point(alg, rnd, s.max_den)
        y = sample_point(alg, rnd, s.max_den)
        z = sample_point(alg, rnd, s.max_den)
        p = _rand_param(rnd, s.max_den)
        q = _rand_param(rnd, s.max_den)
        if not alg.eq(alg.combine(x, x, p), x):
            report.record(("idempotence", x, p))
        if not alg.eq(alg.combine(x, y, p), alg.combine(y, x, ONE - p)):
            report.record(("commutativity", x, y, p))
        pq = p * q
        if pq != ONE:
            lhs = alg.combine(alg.combine(x, y, p), z, q)
            rhs = alg.combine(x, alg.combine(y, z, (ONE - p) * q / (ONE - pq)), pq)
            if not alg.eq(lhs, rhs):
                report.record(("associativity", x, y, z, p, q, lhs, rhs))
        if not alg.eq(alg.combine(x, y, ONE), x) or not alg.eq(alg.combine(x, y, ZERO), y):
            report.record(("projection", x, y))
    return report


def check_mo(alg: Algebra, s: Sampler) -> LawReport:
    """Monotonicity in each argument, jointly, between the arguments, and
    in the parameter."""
    rnd = random.Random(s.seed)
    report = LawReport(MONOTONICITY, s.count, tol_used=alg.tol)
    for _ in range(s.count):
        x = sample_point(alg, rnd, s.max_den)
        x2 = sample_point(alg, rnd, s.max_den)
        if not alg.le(x, x2):
            x, x2 = x2, x
        y = sample_point(alg, rnd, s.max_den)
        y2 = sample_point(alg, rnd, s.max_den)
        if not alg.le(y, y2):
            y, y2 = y2, y
        p = _rand_param(rnd, s.max_den)
        p2 = _rand_param(rnd, s.max_den)
        if p2 < p:
            p, p2 = p2, p
        if not alg.le(alg.combine(x, y, p), alg.combine(x2, y, p)):
            report.record(("argument", x, x2, y, p))
        if not alg.le(alg.combine(x, y, p), alg.combine(x2, y2, p)):
            report.record(("joint", x, x2, y, y2, p))
        lo, hi = (x, y) if alg.le(x, y) else (y, x)
        mid1 = alg.combine(lo, hi, p)
        mid2 = alg.combine(hi, lo, p)
        if not (alg.le(lo, mid1) and alg.le(mid1, hi)):
            report.record(("betweenness", lo, hi, p, mid1))
        if not (alg.le(lo, mid2) and alg.le(mid2, hi)):
            report.record(("betweenness", lo, hi, p, mid2))
        if not alg.le(alg.combine(hi, lo, p), alg.combine(hi, lo, p2)):
            report.record(("parameter", lo, hi, p, p2))
    return report


def check_uc(alg: Algebra, s: Sampler, depth: int = DEFAULT_DEPTH) -> LawReport:
    """Upper semicontinuity under joint upward perturbation.

    The probe sequence (x+e_k) (+)_p (y+e_k) is nonincreasing under
    monotonicity; the estimate passes when the final probe sits within
    twice the final step of the unperturbed value.
    """
    rnd = random.Random(s.seed)
    report = LawReport(UPPER_SEMICONTINUITY, s.count)
    probes = depth_probes(depth)
    worst_tol = 0.0
    mono_violations = 0
    for _ in range(s.count):
        x = sample_ambient(alg, rnd, s.max_den)
        y = sample_ambient(alg, rnd, s.max_den)
        if x == ONE or y == ONE:
            continue
        p = _rand_param(rnd, s.max_den)
        eps0 = min(ONE - x, ONE - y)
        target = alg.combine(_point_at(alg, x), _point_at(alg, y), p)
        values = []
        for k in probes:
            e = eps0 / (2 ** k)
            values.append(alg.combine(_point_at(alg, x + e), _point_at(alg, y + e), p))
        for a, b in zip(values, values[1:]):
            if not alg.le(b, a):
                mono_violations += 1
                break
        deficit, step, exact = _chain_gaps(alg, target, values[-2], values[-1], from_above=True)
        tol = _tol_for(alg, exact)
        worst_tol = max(worst_tol, tol)
        if _exceeds(deficit, step, tol):
            report.record((x, y, p, deficit, step))
    report.tol_used = worst_tol
    report.mo_probe_violations = mono_violations
    if mono_violations:
        report.note = "conditional: probe chains not monotone (see the monotonicity suite)"
    return report


def check_lc(alg: Algebra, s: Sampler, depth: int = DEFAULT_DEPTH) -> LawReport:
    """Lower semicontinuity of the path at its far end.

    w_k = y (+)_{1-2^-k} x climbs toward y; the estimate passes when the
    remaining gap is within twice the final step.
    """
    rnd = random.Random(s.seed)
    report = LawReport(LOWER_SEMICONTINUITY, s.count)
    probes = depth_probes(depth)
    worst_tol = 0.0
    mono_violations = 0
    for _ in range(s.count):
        x = sample_point(alg, rnd, s.max_den)
        y = sample_point(alg, rnd, s.max_den)
        if not alg.le(x, y):
            x, y = y, x
        values = [alg.combine(y, x, ONE - rat(1, 2 ** k)) for k in probes]
        for a, b in zip(values, values[1:]):
            if not alg.le(a, b):
                mono_violations += 1
                break
        deficit, step, exact = _chain_gaps(alg, y, values[-2], values[-1], from_above=False)
        tol = _tol_for(alg, exact)
        worst_tol = max(worst_tol, tol)
        if _exceeds(deficit, step, tol):
            report.record((x, y, deficit, step))
    report.tol_used = worst_tol
    report.mo_probe_violations = mono_violations
    if mono_violations:
        report.note = "conditional: probe chains not monotone (see the monotonicity suite)"
    return report


def check_cancellation(alg: Algebra, s: Sampler) -> LawReport:
    """One-sided cancellation: equal mixtures over a common lower point
    force equal points."""
    rnd = random.Random(s.seed)
    report = LawReport(CANCELLATION, s.count, tol_used=alg.tol)
    for _ in range(s.count):
        pts = sorted(
            (sample_point(alg, rnd, s.max_den) for _ in range(3)),
            key=lambda v: _sort_key(alg, v),
        )
        z, x, y = pts[0], pts[1], pts[2]
        p = _rand_param(rnd, s.max_den)
        if alg.eq(alg.combine(x, z, p), alg.combine(y, z, p)) and not alg.eq(x, y):
            report.record((x, y, z, p))
    return report


def _sort_key(alg: Algebra, v):
    if isinstance(alg, StructuredAlgebra):
        return (v.base, v.offset)
    return v


def check_kernel_coherence(alg: Algebra, s: Sampler) -> LawReport:
    """eats(y, x) holds exactly when the path kernel collapses its right end."""
    rnd = random.Random(s.seed)
    report = LawReport(KERNEL_COHERENCE, s.count, tol_used=alg.tol)
    for _ in range(s.count):
        x = sample_point(alg, rnd, s.max_den)
        y = sample_point(alg, rnd, s.max_den)
        k = path_kernel(alg, x, y)
        expected = k in (KernelClass.RIGHT_COLLAPSED, KernelClass.UNIVERSAL)
        if eats(alg, y, x) != expected:
            report.record((x, y, k))
    return report


# ---------------------------------------------------------------------------
# Homomorphic extensions over label distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dist:
    """Finitely supported exact distribution over labels."""

    weights: tuple[tuple[str, Rat], ...]

    @staticmethod
    def of(mapping: Mapping[str, object] | Sequence[tuple[str, object]]) -> "Dist":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        weights = tuple((label, rat(w)) for label, w in items if rat(w) != 0)
        if not weights:
            raise PreconditionError("distribution needs support")
        for _, w in weights:
            if w <= 0:
                raise PreconditionError(f"weight {w} is not positive")
        total = sum((w for _, w in weights), ZERO)
        if total != ONE:
            raise PreconditionError(f"weights sum to {total}, not 1")
        return Dist(weights)

    def mix(self, other: "Dist", t: Rat) -> "Dist":
        """(1-t) * self + t * other, exactly."""
        acc: dict[str, Rat] = {}
        for label, w in self.weights:
            acc[label] = acc.get(label, ZERO) + (ONE - t) * w
        for label, w in other.weights:
            acc[label] = acc.get(label, ZERO) + t * w
        return Dist.of(tuple(acc.items()))


def homomorphic_extension(alg: Algebra, point_of: Mapping[str, object], d: Dist):
    """Value of the unique homomorphism extending a labelled point family."""
    try:
        entries = [(point_of[label], w) for label, w in d.weights]
    except KeyError as exc:
        raise PreconditionError(f"label {exc.args[0]!r} has no point assigned") from None
    return barycenter(alg, PointDist.of(entries))


def check_extension_lsc(alg: Algebra, point_of: Mapping[str, object], q: Dist,
                        directions: Sequence[Dist], depth: int = DEFAULT_DEPTH) -> LawReport:
    """Lower semicontinuity of the extension along line mixtures toward q.

    For each direction d the probe walks q_k = (1-2^-k) q + 2^-k d; the
    liminf estimate (minimum over the probe tail) must come within twice
    the final step of the value at q.
    """
    report = LawReport(EXTENSION_LSC, len(directions))
    probes = depth_probes(depth)
    limit = homomorphic_extension(alg, point_of, q)
    worst_tol = 0.0
    for d in directions:
        values = [
            homomorphic_extension(alg, point_of, q.mix(d, rat(1, 2 ** k)))
            for k in probes
        ]
        vmin = values[-1] if alg.le(values[-1], values[-2]) else values[-2]
        deficit, e1 = _pair_diff(alg, limit, vmin)
        step, e2 = _pair_diff(alg, values[-2], values[-1])
        if step < 0:
            step = -step
        tol = _tol_for(alg, e1 and e2)
        worst_tol = max(worst_tol, tol)
        if _exceeds(deficit, step, tol):
            report.record((q, d, deficit, step))
    report.tol_used = worst_tol
    return report


def check_clamped_extension(alg: StructuredAlgebra, w: SPoint,
                            xi: Mapping[str, SPoint], q: Dist,
                            directions: Sequence[Dist],
                            depth: int = DEFAULT_DEPTH) -> LawReport:
    """Lower semicontinuity of an extension whose values are pinned to the
    segment between the infimum value below w and w itself."""
    from .core import path_infimum

    if w.offset == ZERO:
        raise PreconditionError("w must not be an eater")
    v = path_infimum(alg, alg.zero(), w)
    for label, pt in xi.items():
        if not (spoint_le(v, pt) and spoint_le(pt, w)):
            raise PreconditionError(f"xi[{label!r}] outside the pinned segment")
    report = check_extension_lsc(alg, xi, q, directions, depth)
    report.law = "clamped-extension-lsc"
    return report


def run_core_suites(alg: Algebra, s: Sampler, depth: int = DEFAULT_DEPTH) -> dict[str, LawReport]:
    """The five core suites, keyed by law name."""
    return {
        AXIOMS: check_axioms(alg, s),
        MONOTONICITY: check_mo(alg, s),
        UPPER_SEMICONTINUITY: check_uc(alg, s, depth),
        LOWER_SEMICONTINUITY: check_lc(alg, s, depth),
        CANCELLATION: check_cancellation(alg, s),
    }
