"""Exact realization of an algebra from its eater data set.

The unit interval is partitioned into carriers indexed by the eaters: a
gap's left endpoint owns the half-open gap, the largest eater owns the
top segment, and every other eater sits alone.  Mixtures act affinely
inside one carrier in a local coordinate; across carriers the lower point
collapses to the base of the higher carrier.  All arithmetic on local
coordinates is exact; only half-line (Infinity) gaps need a transcendental
map to reach ambient coordinates, so those ambient values are floats by
design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .blocks import DomainError
from .eaterspec import EaterSpec, GapTag, eater_floor
from .rational import ONE, ZERO, Rat, rat, rat_str


class InexactCoordinate(ValueError):
    """Ambient point inside an Infinity gap has no exact local coordinate."""


class CarrierKind(Enum):
    SINGLETON = "singleton"
    GAP = "gap"
    TOP = "top"


@dataclass(frozen=True, slots=True)
class Carrier:
    """One block of the decomposition; ``a`` is its base and least element."""

    kind: CarrierKind
    a: Rat
    b: Rat | None = None       # right gap endpoint, GAP only
    tag: GapTag | None = None  # GAP only

    def __repr__(self) -> str:
        if self.kind is CarrierKind.GAP:
            return f"Gap({rat_str(self.a)}..{rat_str(self.b)};{self.tag.value})"
        if self.kind is CarrierKind.TOP:
            return f"Top({rat_str(self.a)})"
        return f"Single({rat_str(self.a)})"


@dataclass(frozen=True, slots=True)
class SPoint:
    """Structured point: carrier base plus exact local offset.

    Offset ranges: singleton 0; One-gap [0,1); Infinity-gap [0,inf);
    top segment [0,1].  ``approx`` marks offsets that were produced from a
    float approximation (locating an ambient point inside an Infinity gap).
    """

    base: Rat
    offset: Rat
    carrier: Carrier
    approx: bool = field(default=False, compare=False)

    def __repr__(self) -> str:
        return f"SPoint({self.carrier!r}@{rat_str(self.offset)})"


def spoint_key(p: SPoint) -> tuple:
    """Sort key realizing the ambient order without any embedding."""
    return (p.base, p.offset)


def spoint_lt(p: SPoint, q: SPoint) -> bool:
    return (p.base, p.offset) < (q.base, q.offset)


def spoint_le(p: SPoint, q: SPoint) -> bool:
    return (p.base, p.offset) <= (q.base, q.offset)


def carrier_of_eater(spec: EaterSpec, e: Rat) -> Carrier:
    """The carrier whose base is the eater e."""
    comps = spec.components
    for i, c in enumerate(comps):
        if e in c:
            if e == c.hi:
                if i + 1 < len(comps):
                    return Carrier(CarrierKind.GAP, e, comps[i + 1].lo, spec.gap_tags[i])
                if spec.top_open:
                    return Carrier(CarrierKind.TOP, e)
            return Carrier(CarrierKind.SINGLETON, e)
    raise DomainError(f"{rat_str(e)} is not an eater of {spec!r}")


def eater_point(spec: EaterSpec, e) -> SPoint:
    e = rat(e)
    return SPoint(e, ZERO, carrier_of_eater(spec, e))


def zero_point(spec: EaterSpec) -> SPoint:
    return eater_point(spec, ZERO)


def locate(spec: EaterSpec, x, *, allow_approx: bool = False) -> SPoint:
    """Structured point for an ambient coordinate x in [0,1].

    Exact for eaters, One-gap points, and the top segment.  Inside an
    Infinity gap the local coordinate is transcendental: raises
    InexactCoordinate unless ``allow_approx``, which returns a float-backed
    offset tagged approximate.
    """
    x = rat(x)
    e = eater_floor(spec, x)
    if x == e:
        return eater_point(spec, e)
    carrier = carrier_of_eater(spec, e)
    if carrier.kind is CarrierKind.TOP:
        return SPoint(e, (x - e) / (ONE - e), carrier)
    if carrier.kind is CarrierKind.GAP:
        frac = (x - e) / (carrier.b - e)
        if carrier.tag is GapTag.ONE:
            return SPoint(e, frac, carrier)
        if not allow_approx:
            raise InexactCoordinate(
                f"{rat_str(x)} lies in the Infinity gap "
                f"({rat_str(e)},{rat_str(carrier.b)}); pass allow_approx"
            )
        t = -math.log1p(-float(frac))
        return SPoint(e, rat(t), carrier, approx=True)
    raise DomainError(f"no carrier above eater {rat_str(e)} contains {rat_str(x)}")


def embed(spec: EaterSpec, p: SPoint) -> float:
    """Ambient coordinate of a structured point, as a float."""
    c = p.carrier
    if c.kind is CarrierKind.SINGLETON:
        return float(p.base)
    if c.kind is CarrierKind.TOP:
        return float(c.a + (ONE - c.a) * p.offset)
    if c.tag is GapTag.ONE:
        return float(c.a + (c.b - c.a) * p.offset)
    return float(c.a) + float(c.b - c.a) * (-math.expm1(-float(p.offset)))


def ambient_exact(spec: EaterSpec, p: SPoint) -> Rat | None:
    """Exact ambient rational, or None when it would be transcendental."""
    c = p.carrier
    if c.kind is CarrierKind.SINGLETON:
        return p.base
    if c.kind is CarrierKind.TOP:
        return c.a + (ONE - c.a) * p.offset
    if c.tag is GapTag.ONE:
        return c.a + (c.b - c.a) * p.offset
    return p.base if p.offset == ZERO else None


def check_member(spec: EaterSpec, p: SPoint) -> None:
    """Reject structured points that do not belong to this spec."""
    c = p.carrier
    if p.base != c.a:
        raise DomainError(f"base {rat_str(p.base)} differs from carrier base")
    expected = carrier_of_eater(spec, c.a)
    if expected != c:
        raise DomainError(f"carrier {c!r} is foreign to this spec (expected {expected!r})")
    off = p.offset
    if c.kind is CarrierKind.SINGLETON:
        ok = off == ZERO
    elif c.kind is CarrierKind.TOP:
        ok = ZERO <= off <= ONE
    elif c.tag is GapTag.ONE:
        ok = ZERO <= off < ONE
    else:
        ok = off >= ZERO
    if not ok:
        raise DomainError(f"offset {rat_str(off)} out of range for {c!r}")


def s_combine(spec: EaterSpec, x: SPoint, y: SPoint, p) -> SPoint:
    """Mixture of structured points, weight p on x.

    Same carrier: affine combination of offsets.  Different carriers: the
    lower point is sent to the higher carrier's base (offset 0) and the
    combination happens there.  Exact rational arithmetic throughout.
    """
    p = rat(p)
    if p == ONE:
        return x
    if p == ZERO:
        return y
    if not (ZERO < p < ONE):
        raise DomainError(f"parameter {rat_str(p)} outside [0,1]")
    if x.base == y.base:
        off = p * x.offset + (ONE - p) * y.offset
        return SPoint(x.base, off, x.carrier, approx=x.approx or y.approx)
    if x.base < y.base:
        return SPoint(y.base, (ONE - p) * y.offset, y.carrier, approx=y.approx)
    return SPoint(x.base, p * x.offset, x.carrier, approx=x.approx)


# ---------------------------------------------------------------------------
# Text form used on the CLI: "E:p/q", "G:a..b@t=p/q", "T@t=p/q"
# ---------------------------------------------------------------------------

def format_point(spec: EaterSpec, p: SPoint) -> str:
    c = p.carrier
    if p.offset == ZERO:
        return f"E:{rat_str(p.base)}"
    if c.kind is CarrierKind.TOP:
        return f"T@t={rat_str(p.offset)}"
    return f"G:{rat_str(c.a)}..{rat_str(c.b)}@t={rat_str(p.offset)}"


def parse_point(spec: EaterSpec, text: str, *, allow_approx: bool = False) -> SPoint:
    """Parse either a structured form or a plain ambient rational."""
    text = text.strip()
    if text.startswith("E:"):
        e = rat(text[2:])
        return eater_point(spec, e)
    if text.startswith("T@t="):
        off = rat(text[4:])
        e = spec.max_eater
        if not spec.top_open:
            raise DomainError("spec has no top segment; max eater is 1")
        p = SPoint(e, off, Carrier(CarrierKind.TOP, e))
        check_member(spec, p)
        return p
    if text.startswith("G:"):
        body = text[2:]
        span, _, offpart = body.partition("@t=")
        lo_s, _, hi_s = span.partition("..")
        a, b, off = rat(lo_s), rat(hi_s), rat(offpart)
        carrier = carrier_of_eater(spec, a)
        if carrier.kind is not CarrierKind.GAP or carrier.b != b:
            raise DomainError(f"({rat_str(a)},{rat_str(b)}) is not a gap of this spec")
        p = SPoint(a, off, carrier)
        check_member(spec, p)
        return p
    return locate(spec, rat(text), allow_approx=allow_approx)
