"""Uniform interface over every algebra this package can evaluate.

A handle is either exact (rational arithmetic end to end: the linear, max,
and capped blocks, plus every constructed algebra on structured points) or
float-backed with an explicit equality tolerance (the exponential block
and arbitrary black-box operations).  All operations here are pure
functions of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from . import plonka
from .blocks import BlockKind, DomainError, block_combine
from .eaterspec import EaterSpec, LadderSpec, ladder_to_window, validate_spec
from .plonka import SPoint, s_combine, spoint_le, zero_point
from .rational import HALF, ONE, ZERO, Rat, rat

DEFAULT_TOL = 1e-9
INFIMUM_DEPTH = 40  # dyadic probe depth for black-box infimum estimates


class PreconditionError(ValueError):
    pass


class KernelClass(Enum):
    """Which of the five congruences a mixture path collapses to."""

    DIAGONAL = "diagonal"
    MIDDLE_COLLAPSED = "middle-collapsed"
    LEFT_COLLAPSED = "left-collapsed"
    RIGHT_COLLAPSED = "right-collapsed"
    UNIVERSAL = "universal"


class Algebra:
    """Base handle: binary mixtures plus point order/equality."""

    name: str = "algebra"
    tol: float = 0.0

    @property
    def exact(self) -> bool:
        return self.tol == 0.0

    def combine(self, x, y, p):
        raise NotImplementedError

    def point(self, value):
        """Coerce a raw value into this handle's point representation."""
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def eq(self, u, v) -> bool:
        return u == v

    def le(self, u, v) -> bool:
        return u <= v

    def lt(self, u, v) -> bool:
        return self.le(u, v) and not self.eq(u, v)

    def maximum(self, u, v):
        return v if self.le(u, v) else u

    def __repr__(self) -> str:
        return f"<{self.name}>"


class BlockAlgebra(Algebra):
    """One of the four closed-form reference algebras."""

    def __init__(self, kind: BlockKind):
        self.kind = kind
        self.name = kind.value
        self.tol = DEFAULT_TOL if kind is BlockKind.EXP else 0.0

    def combine(self, x, y, p):
        return block_combine(self.kind, x, y, p)

    def point(self, value):
        if self.kind is BlockKind.EXP:
            v = float(rat(value)) if isinstance(value, str) else float(value)
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{v} outside [0,1]")
            return v
        v = rat(value)
        if not ZERO <= v <= ONE:
            raise DomainError(f"{v} outside [0,1]")
        return v

    def zero(self):
        return 0.0 if self.kind is BlockKind.EXP else ZERO

    def eq(self, u, v) -> bool:
        if self.tol:
            return abs(u - v) <= self.tol
        return u == v

    def le(self, u, v) -> bool:
        if self.tol:
            return u <= v + self.tol
        return u <= v

    def eater_floor_of(self, v):
        """Largest eater of this block not exceeding v (closed form)."""
        if self.kind is BlockKind.LINEAR:
            return self.zero()
        if self.kind is BlockKind.MAX:
            return v
        one = 1.0 if self.kind is BlockKind.EXP else ONE
        return one if self.eq(v, one) else self.zero()


class StructuredAlgebra(Algebra):
    """Exact constructed algebra over a validated eater spec."""

    def __init__(self, spec: EaterSpec):
        self.spec = validate_spec(spec)
        self.name = f"structured{self.spec!r}"
        self.tol = 0.0

    def combine(self, x: SPoint, y: SPoint, p) -> SPoint:
        return s_combine(self.spec, x, y, p)

    def point(self, value, *, allow_approx: bool = False) -> SPoint:
        if isinstance(value, SPoint):
            plonka.check_member(self.spec, value)
            return value
        if isinstance(value, str) and not value.replace("/", "").lstrip("-").isdigit():
            return plonka.parse_point(self.spec, value, allow_approx=allow_approx)
        return plonka.locate(self.spec, rat(value), allow_approx=allow_approx)

    def zero(self) -> SPoint:
        return zero_point(self.spec)

    def le(self, u: SPoint, v: SPoint) -> bool:
        return spoint_le(u, v)

    def embed(self, p: SPoint) -> float:
        return plonka.embed(self.spec, p)

    def eater_floor_of(self, v: SPoint) -> SPoint:
        return plonka.eater_point(self.spec, v.base)


class LadderAlgebra(StructuredAlgebra):
    """Finite window of a geometric-ladder algebra."""

    def __init__(self, ladder: LadderSpec, n_lo: int, n_hi: int):
        super().__init__(ladder_to_window(ladder, n_lo, n_hi))
        self.ladder = ladder
        self.window = (n_lo, n_hi)
        self.name = f"ladder(r={ladder.r},window={n_lo}..{n_hi})"


class NumericAlgebra(Algebra):
    """Black-box float operation probed under an explicit tolerance policy."""

    def __init__(self, fn: Callable[[float, float, float], float], tol: float = DEFAULT_TOL,
                 name: str = "numeric"):
        if tol <= 0:
            raise ValueError("numeric handles need tol > 0")
        self.fn = fn
        self.tol = tol
        self.name = name

    def combine(self, x, y, p):
        p = float(p)
        if p >= 1.0:
            return x
        if p <= 0.0:
            return y
        v = self.fn(float(x), float(y), p)
        if not -self.tol <= v <= 1.0 + self.tol:
            raise DomainError(f"black-box returned {v} outside [0,1]")
        return v

    def point(self, value):
        v = float(rat(value)) if isinstance(value, str) else float(value)
        if not 0.0 <= v <= 1.0:
            raise DomainError(f"{v} outside [0,1]")
        return v

    def zero(self):
        return 0.0

    def eq(self, u, v) -> bool:
        return abs(u - v) <= self.tol

    def le(self, u, v) -> bool:
        return u <= v + self.tol


class RationalOpAlgebra(Algebra):
    """Exact rational operation given as a function; used for test fixtures."""

    def __init__(self, fn: Callable[[Rat, Rat, Rat], Rat], name: str):
        self.fn = fn
        self.name = name
        self.tol = 0.0

    def combine(self, x, y, p):
        p = rat(p)
        if p == ONE:
            return x
        if p == ZERO:
            return y
        return self.fn(x, y, p)

    def point(self, value):
        v = rat(value)
        if not ZERO <= v <= ONE:
            raise DomainError(f"{v} outside [0,1]")
        return v

    def zero(self):
        return ZERO


def build(spec: EaterSpec) -> StructuredAlgebra:
    """Construct the exact algebra carrying the given eater data set."""
    return StructuredAlgebra(spec)


def block(kind: BlockKind | str) -> BlockAlgebra:
    if isinstance(kind, str):
        kind = BlockKind.parse(kind)
    return BlockAlgebra(kind)


# ---------------------------------------------------------------------------
# Distributions over points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointDist:
    """Finitely supported rational distribution over points of one handle."""

    entries: tuple[tuple[object, Rat], ...]

    @staticmethod
    def of(pairs: Sequence[tuple[object, object]]) -> "PointDist":
        entries = tuple((pt, rat(w)) for pt, w in pairs)
        if not entries:
            raise PreconditionError("distribution needs at least one entry")
        for _, w in entries:
            if w <= 0:
                raise PreconditionError(f"weight {w} is not positive")
        total = sum((w for _, w in entries), ZERO)
        if total != ONE:
            raise PreconditionError(f"weights sum to {total}, not 1")
        return PointDist(entries)

    def __len__(self) -> int:
        return len(self.entries)


def combine(alg: Algebra, x, y, p):
    """x (+)_p y with weight p on x; p = 1 and p = 0 project."""
    return alg.combine(alg.point(x), alg.point(y), rat(p) if alg.exact else p)


def barycenter(alg: Algebra, dist: PointDist):
    """n-ary mixture as a right fold, leftmost entry first.

    The tail is renormalized by exact rational division, so the result is
    independent of fold order wherever arithmetic is exact.
    """
    entries = dist.entries
    acc = entries[-1][0]
    remaining = entries[-1][1]
    for pt, w in reversed(entries[:-1]):
        remaining = remaining + w
        acc = alg.combine(pt, acc, w / remaining)
    return acc


def path(alg: Algebra, x, y, t):
    """The mixture path from x (t=0) to y (t=1)."""
    return alg.combine(y, x, t)


def path_kernel(alg: Algebra, x, y) -> KernelClass:
    """Classify which congruence the path from x to y collapses.

    Three probes decide among the five possibilities, relying on
    monotonicity of the path in its parameter.
    """
    g_mid_l = path(alg, x, y, rat(1, 3))
    g_mid_r = path(alg, x, y, rat(2, 3))
    if not alg.eq(g_mid_l, g_mid_r):
        return KernelClass.DIAGONAL
    g_half = path(alg, x, y, HALF)
    c_left = alg.eq(x, g_half)
    c_right = alg.eq(g_half, y)
    if c_left and c_right:
        return KernelClass.UNIVERSAL
    if c_left:
        return KernelClass.LEFT_COLLAPSED
    if c_right:
        return KernelClass.RIGHT_COLLAPSED
    return KernelClass.MIDDLE_COLLAPSED


def eats(alg: Algebra, y, x) -> bool:
    """Does y absorb x?  One probe at parameter 1/2 decides."""
    return alg.eq(alg.combine(y, x, HALF), y)


def path_infimum(alg: Algebra, x, y, depth: int = INFIMUM_DEPTH):
    """Greatest lower bound of the path from x to y over positive parameters.

    Exact handles use the closed form max(x, largest eater below y); the
    estimate for black boxes walks the dyadic parameters 2^-k, which is
    one-sided because the path is monotone in its parameter.
    """
    if not alg.le(x, y):
        raise PreconditionError("path_infimum needs x <= y")
    if isinstance(alg, (BlockAlgebra, StructuredAlgebra)):
        floor = alg.eater_floor_of(y)
        return alg.maximum(x, floor)
    best = alg.combine(y, x, HALF)
    t = 0.5
    for _ in range(depth):
        t /= 2.0
        v = alg.combine(y, x, t)
        if v < best:
            best = v
    return best


def rewrite_eaters(alg: Algebra, dist: PointDist, j: int) -> PointDist:
    """Replace every entry absorbed by entry j with entry j's point.

    The mixture of the result equals the mixture of the input.
    """
    if not 0 <= j < len(dist.entries):
        raise PreconditionError(f"index {j} out of range")
    xj, wj = dist.entries[j]
    if wj <= 0:
        raise PreconditionError("entry j must have positive weight")
    new_entries = tuple(
        (xj, w) if eats(alg, xj, pt) else (pt, w) for pt, w in dist.entries
    )
    return PointDist(new_entries)


def clamp_barycenter(alg: Algebra, dist: PointDist, j: int):
    """Mixture after lifting every point to at least the infimum value
    below entry j; agrees with the plain mixture."""
    if not 0 <= j < len(dist.entries):
        raise PreconditionError(f"index {j} out of range")
    xj, wj = dist.entries[j]
    if wj <= 0:
        raise PreconditionError("entry j must have positive weight")
    v = path_infimum(alg, alg.zero(), xj)
    lifted = PointDist(tuple((alg.maximum(pt, v), w) for pt, w in dist.entries))
    return barycenter(alg, lifted)
