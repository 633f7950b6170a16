"""Classification data for convex algebras on the unit interval.

An algebra with monotone, semicontinuous operations is determined by its
set of "eaters" E (a closed subset of [0,1] containing 0; y is an eater
when y absorbs 0 under every proper mixture) together with one endpoint
tag per gap of E, each tag being One or Infinity.  This module holds the
finite descriptions of such data sets: unions of rational closed points
and intervals, plus the geometric "ladder" family, with validation and a
JSON wire format.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .rational import ONE, ZERO, Rat, exact_sqrt, in_unit_interval, rat, rat_str

# Largest allowed exponent 2^|n| when expanding ladder eaters r^(2^n); keeps
# numerator/denominator bit sizes at desk scale.
LADDER_EXPONENT_CAP = 2 ** 20


class SpecError(ValueError):
    """Base class for data-set validation failures."""


class OutOfRangeError(SpecError):
    pass


class MalformedIntervalError(SpecError):
    pass


class OverlapError(SpecError):
    pass


class MissingZeroError(SpecError):
    pass


class GapCountMismatchError(SpecError):
    pass


class LadderWindowError(SpecError):
    """Window cannot be expanded exactly (budget or irrational root)."""


class GapTag(Enum):
    """Endpoint constant attached to a gap of the eater set.

    ONE: the gap behaves like a capped unit segment.
    INFINITY: the gap behaves like an exponentially compressed half-line.
    """

    ONE = "1"
    INFINITY = "inf"

    @classmethod
    def parse(cls, text: str) -> "GapTag":
        text = text.strip().lower()
        if text in ("1", "one"):
            return cls.ONE
        if text in ("inf", "infinity", "oo"):
            return cls.INFINITY
        raise ValueError(f"not a gap tag: {text!r}")


@dataclass(frozen=True, slots=True)
class Component:
    """One closed piece of the eater set: a point (lo == hi) or interval (lo < hi)."""

    lo: Rat
    hi: Rat

    @staticmethod
    def point(a) -> "Component":
        a = rat(a)
        return Component(a, a)

    @staticmethod
    def interval(a, b) -> "Component":
        return Component(rat(a), rat(b))

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self) -> str:
        if self.is_point:
            return f"Pt({rat_str(self.lo)})"
        return f"Iv({rat_str(self.lo)},{rat_str(self.hi)})"


@dataclass(frozen=True, slots=True)
class EaterSpec:
    """Eater components in increasing order plus one tag per gap between them.

    The region above the last component (when max E < 1) is not a gap and
    carries no tag: its structure is forced.
    """

    components: tuple[Component, ...]
    gap_tags: tuple[GapTag, ...]

    @property
    def max_eater(self) -> Rat:
        return self.components[-1].hi

    @property
    def top_open(self) -> bool:
        return self.max_eater < ONE

    def __repr__(self) -> str:
        comps = ",".join(repr(c) for c in self.components)
        tags = ",".join(t.value for t in self.gap_tags)
        return f"EaterSpec([{comps}], tags=[{tags}])"


def make_spec(components: Iterable[Component], gap_tags: Iterable[GapTag]) -> EaterSpec:
    """Assemble and validate in one step."""
    return validate_spec(EaterSpec(tuple(components), tuple(gap_tags)))


def validate_spec(raw: EaterSpec) -> EaterSpec:
    """Check all invariants; return the spec unchanged or raise the first violation."""
    comps = raw.components
    if not comps:
        raise MissingZeroError("eater set is empty; it must contain 0")
    for c in comps:
        if not (in_unit_interval(c.lo) and in_unit_interval(c.hi)):
            raise OutOfRangeError(f"component {c!r} leaves [0,1]")
        if c.lo > c.hi:
            raise MalformedIntervalError(f"component {c!r} has lo > hi")
    for prev, nxt in zip(comps, comps[1:]):
        if nxt.lo <= prev.hi:
            raise OverlapError(f"components {prev!r} and {nxt!r} overlap or touch")
    if comps[0].lo != ZERO:
        raise MissingZeroError("first component must contain 0")
    if len(raw.gap_tags) != len(comps) - 1:
        raise GapCountMismatchError(
            f"{len(comps)} components need {len(comps) - 1} gap tags, got {len(raw.gap_tags)}"
        )
    return raw


def eater_floor(spec: EaterSpec, x) -> Rat:
    """max(E ∩ [0,x]): the largest eater not exceeding x.

    Nondecreasing in x, idempotent, and equal to x exactly when x is an
    eater.  Binary search over the ordered component list.
    """
    x = rat(x)
    if not in_unit_interval(x):
        raise OutOfRangeError(f"{rat_str(x)} outside [0,1]")
    comps = spec.components
    idx = bisect_right(_LoKeys(comps), x) - 1
    if idx < 0:
        raise MissingZeroError("no eater below x; spec not validated?")
    c = comps[idx]
    return x if x <= c.hi else c.hi


class _LoKeys(Sequence):
    """View of component lower endpoints for bisect."""

    __slots__ = ("_comps",)

    def __init__(self, comps):
        self._comps = comps

    def __len__(self):
        return len(self._comps)

    def __getitem__(self, i):
        return self._comps[i].lo


def gaps(spec: EaterSpec) -> list[tuple[Rat, Rat, GapTag]]:
    """The gaps of E in increasing order: (right end of one component,
    left end of the next, tag)."""
    out = []
    for i, tag in enumerate(spec.gap_tags):
        out.append((spec.components[i].hi, spec.components[i + 1].lo, tag))
    return out


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------

def spec_to_obj(spec: EaterSpec) -> dict:
    comps = []
    for c in spec.components:
        if c.is_point:
            comps.append({"point": rat_str(c.lo)})
        else:
            comps.append({"interval": [rat_str(c.lo), rat_str(c.hi)]})
    return {
        "components": comps,
        "gaps": [{"sigma": t.value} for t in spec.gap_tags],
    }


def spec_from_obj(obj: dict) -> EaterSpec:
    comps = []
    for entry in obj["components"]:
        if "point" in entry:
            comps.append(Component.point(rat(entry["point"])))
        elif "interval" in entry:
            lo, hi = entry["interval"]
            lo, hi = rat(lo), rat(hi)
            if lo >= hi:
                raise MalformedIntervalError(f"interval [{rat_str(lo)},{rat_str(hi)}] needs lo < hi")
            comps.append(Component.interval(lo, hi))
        else:
            raise SpecError(f"component entry {entry!r} has neither 'point' nor 'interval'")
    tags = [GapTag.parse(g["sigma"]) for g in obj["gaps"]]
    return validate_spec(EaterSpec(tuple(comps), tuple(tags)))


def dumps_spec(spec: EaterSpec, **kwargs) -> str:
    return json.dumps(spec_to_obj(spec), **kwargs)


def loads_spec(text: str) -> EaterSpec:
    obj = json.loads(text)
    if "ladder" in obj:
        raise SpecError("this is a ladder file; load it with loads_ladder")
    return spec_from_obj(obj)


# ---------------------------------------------------------------------------
# The ladder family: E = {r^(2^n) : n in Z} plus {0, 1}
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class LadderSpec:
    """Geometric ladder of eaters with one tag per integer-indexed gap.

    Gap n sits between r^(2^n) and r^(2^(n-1)).  The tag map sigma is total
    on the integers with a finite description: ``left`` below 0, ``right``
    from 0 up, overridden by the finite exception list.
    """

    r: Rat
    left: GapTag
    right: GapTag
    exceptions: tuple[tuple[int, GapTag], ...] = ()

    def __post_init__(self):
        if not (ZERO < self.r < ONE):
            raise OutOfRangeError(f"ladder ratio {rat_str(self.r)} outside (0,1)")
        seen = set()
        for n, _ in self.exceptions:
            if n in seen:
                raise SpecError(f"duplicate exception index {n}")
            seen.add(n)

    def sigma(self, n: int) -> GapTag:
        for idx, tag in self.exceptions:
            if idx == n:
                return tag
        return self.left if n < 0 else self.right

    def eater_value(self, n: int) -> Rat:
        """r^(2^n), computed exactly; raises for irrational roots or budget blowups."""
        if n >= 0:
            exponent = 2 ** n
            if exponent > LADDER_EXPONENT_CAP:
                raise LadderWindowError(
                    f"2^{n} exceeds the exponent budget {LADDER_EXPONENT_CAP}"
                )
            return self.r ** exponent
        value = self.r
        for _ in range(-n):
            root = exact_sqrt(value)
            if root is None:
                raise LadderWindowError(
                    f"r^(2^{n}) is irrational for r={rat_str(self.r)}"
                )
            value = root
        return value


def ladder_to_window(ladder: LadderSpec, n_lo: int, n_hi: int) -> EaterSpec:
    """Finite truncation of a ladder algebra to the gap window [n_lo, n_hi].

    Eaters: {0} ∪ {r^(2^n) : n_lo <= n <= n_hi} ∪ {1}.  Ascending gap tags:
    the truncation gap below the smallest ladder eater is One; the gap
    between r^(2^n) and r^(2^(n-1)) carries sigma(n); the top gap, whose
    right endpoint is clamped to the added eater 1, carries sigma(n_lo).
    """
    if n_lo > n_hi:
        raise LadderWindowError(f"window [{n_lo}, {n_hi}] is empty")
    values = [ladder.eater_value(n) for n in range(n_hi, n_lo - 1, -1)]  # ascending
    comps = [Component.point(ZERO)]
    comps.extend(Component.point(v) for v in values)
    tags = [GapTag.ONE]
    tags.extend(ladder.sigma(n) for n in range(n_hi, n_lo, -1))
    if values[-1] < ONE:
        comps.append(Component.point(ONE))
        tags.append(ladder.sigma(n_lo))
    return validate_spec(EaterSpec(tuple(comps), tuple(tags)))


def ladder_to_obj(ladder: LadderSpec) -> dict:
    return {
        "ladder": {
            "r": rat_str(ladder.r),
            "left": ladder.left.value,
            "right": ladder.right.value,
            "exceptions": [
                {"n": n, "sigma": tag.value} for n, tag in ladder.exceptions
            ],
        }
    }


def ladder_from_obj(obj: dict) -> LadderSpec:
    body = obj["ladder"]
    return LadderSpec(
        r=rat(body["r"]),
        left=GapTag.parse(body["left"]),
        right=GapTag.parse(body["right"]),
        exceptions=tuple(
            (int(e["n"]), GapTag.parse(e["sigma"])) for e in body.get("exceptions", [])
        ),
    )


def dumps_ladder(ladder: LadderSpec, **kwargs) -> str:
    return json.dumps(ladder_to_obj(ladder), **kwargs)


def loads_ladder(text: str) -> LadderSpec:
    return ladder_from_obj(json.loads(text))
