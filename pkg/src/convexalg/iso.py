"""Isomorphy decisions, witness maps, and automorphism signatures.

Two algebras are isomorphic exactly when an increasing bijection matches
their eater sets and preserves every gap tag, and their top segments agree
in being present or absent.  For finite component lists the only candidate
skeleton is the order-preserving component correspondence, so the decision
reduces to comparing canonical signatures.  The witness map transports
eaters by that correspondence and keeps local gap/top coordinates fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .eaterspec import EaterSpec, GapTag, LadderSpec
from .plonka import SPoint, carrier_of_eater, check_member
from .rational import Rat


class NotIsomorphicError(ValueError):
    pass


@dataclass(frozen=True)
class CanonSig:
    """Everything an increasing eater bijection must preserve."""

    component_kinds: tuple[str, ...]   # "pt" | "iv" per component, in order
    gap_tags: tuple[GapTag, ...]
    top_open: bool

    def as_tuple(self) -> tuple:
        return (*self.component_kinds, *(t.value for t in self.gap_tags), self.top_open)


def canonical_signature(spec: EaterSpec) -> CanonSig:
    kinds = tuple("pt" if c.is_point else "iv" for c in spec.components)
    return CanonSig(kinds, spec.gap_tags, spec.top_open)


def iso_decide(a: EaterSpec, b: EaterSpec) -> bool:
    return canonical_signature(a) == canonical_signature(b)


def signature_mismatch_position(a: EaterSpec, b: EaterSpec) -> int | None:
    """Index of the first differing signature entry, None when equal.

    Entries are compared in order: component kinds, then gap tags, then
    the top-open flag.
    """
    ta = canonical_signature(a).as_tuple()
    tb = canonical_signature(b).as_tuple()
    for i in range(max(len(ta), len(tb))):
        if i >= len(ta) or i >= len(tb) or ta[i] != tb[i]:
            return i
    return None


def map_eater(a: EaterSpec, b: EaterSpec, value: Rat) -> Rat:
    """Image of an eater of a under the order-preserving component bijection.

    Point components map onto each other; interval components map
    affinely.
    """
    for ca, cb in zip(a.components, b.components):
        if value in ca:
            if ca.is_point:
                return cb.lo
            return cb.lo + (value - ca.lo) * (cb.hi - cb.lo) / (ca.hi - ca.lo)
    raise NotIsomorphicError(f"{value} is not an eater of the source spec")


def iso_map(a: EaterSpec, b: EaterSpec, x: SPoint) -> SPoint:
    """The increasing isomorphism witness, applied to one structured point.

    Eaters move by the component bijection; gap and top points keep their
    local offset (for half-line gaps this picks the canonical member of
    the scaling family).  Exact, strictly increasing, and a homomorphism.
    """
    if not iso_decide(a, b):
        raise NotIsomorphicError("specs have different canonical signatures")
    check_member(a, x)
    new_base = map_eater(a, b, x.base)
    return SPoint(new_base, x.offset, carrier_of_eater(b, new_base), approx=x.approx)


# ---------------------------------------------------------------------------
# Ladder family: shift equivalence of tag sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShiftEquivalence:
    """Witness that a(n) = b(n + m) for all n; periodic means every shift works."""

    m: int
    periodic: bool = False
    note: str | None = None


def _canonical_tags(l: LadderSpec):
    """Minimal shift-invariant description: constants, word, and anchor."""
    effective = {
        n: t for n, t in l.exceptions if t != (l.left if n < 0 else l.right)
    }
    if l.left == l.right and not effective:
        return ("const", l.left)
    # smallest index disagreeing with the left constant
    candidates = [n for n, t in effective.items() if t != l.left]
    if l.left != l.right:
        n = 0
        while l.sigma(n) == l.left:
            n += 1
        candidates.append(n)
    lo = min(candidates)
    # largest index disagreeing with the right constant
    candidates = [n for n, t in effective.items() if t != l.right]
    if l.left != l.right:
        n = -1
        while l.sigma(n) == l.right:
            n -= 1
        candidates.append(n)
    hi = max(candidates)
    word = tuple(l.sigma(n) for n in range(lo, hi + 1))  # may be empty (clean step)
    return (l.left, l.right, word, lo)


def ladder_shift_equiv(a: LadderSpec, b: LadderSpec) -> ShiftEquivalence | None:
    """Smallest-|m| shift aligning the tag sequences, or None.

    The ratio r is not part of the invariant: the eater skeletons of any
    two ladders are order-isomorphic, so only the tag sequences decide.
    The description being eventually constant on both sides makes the
    comparison a finite check.
    """
    note = None
    if a.r != b.r:
        note = "ratios differ; decided via order-isomorphic skeletons"
    ca, cb = _canonical_tags(a), _canonical_tags(b)
    if ca[0] == "const" or cb[0] == "const":
        if ca == cb:
            return ShiftEquivalence(0, periodic=True, note=note)
        return None
    if ca[0] != cb[0] or ca[1] != cb[1] or ca[2] != cb[2]:
        return None
    return ShiftEquivalence(cb[3] - ca[3], note=note)


# ---------------------------------------------------------------------------
# Automorphism signatures
# ---------------------------------------------------------------------------

class AutFactor(Enum):
    RIGID = "rigid"
    SCALING_FAMILY = "one-parameter scaling family"
    INCREASING_BIJECTIONS = "all increasing self-bijections fixing endpoints"


@dataclass(frozen=True)
class AutSignature:
    """Structured description of the automorphism group.

    ``reflection_pair`` marks the one case (a bare zero eater) whose group
    is {identity, reversal}.  Otherwise the eater skeleton is rigid and
    the group is the product of the per-part factors.
    """

    reflection_pair: bool
    factors: tuple[tuple[str, AutFactor], ...]

    @property
    def trivial(self) -> bool:
        return not self.reflection_pair and all(
            f is AutFactor.RIGID for _, f in self.factors
        )

    def describe(self) -> str:
        if self.reflection_pair:
            return "{identity, reversal}"
        if self.trivial:
            return "{identity}"
        parts = [f"{name}: {factor.value}" for name, factor in self.factors
                 if factor is not AutFactor.RIGID]
        return "; ".join(parts)


def aut_signature(spec: EaterSpec) -> AutSignature:
    comps = spec.components
    if len(comps) == 1 and comps[0].is_point:
        # single eater 0: identity and the order reversal
        return AutSignature(reflection_pair=True, factors=())
    factors: list[tuple[str, AutFactor]] = [("skeleton", AutFactor.RIGID)]
    for c in comps:
        if not c.is_point:
            factors.append((f"interval {c!r}", AutFactor.INCREASING_BIJECTIONS))
    for i, tag in enumerate(spec.gap_tags):
        a, b = comps[i].hi, comps[i + 1].lo
        factor = AutFactor.SCALING_FAMILY if tag is GapTag.INFINITY else AutFactor.RIGID
        factors.append((f"gap {a}..{b}", factor))
    if spec.top_open:
        factors.append(("top segment", AutFactor.RIGID))
    return AutSignature(reflection_pair=False, factors=tuple(factors))
