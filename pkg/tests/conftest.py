"""Shared generators for randomized tests."""

from __future__ import annotations

import random

from convexalg import Component, EaterSpec, GapTag, validate_spec
from convexalg.rational import ONE, rat


def random_spec(rnd: random.Random, max_components: int = 6) -> EaterSpec:
    """Validated random eater spec with mixed gap tags.

    Endpoints walk upward on a 1/96 grid so components stay disjoint.
    """
    n = rnd.randint(1, max_components)
    comps = []
    cursor = rat(0)
    for i in range(n):
        if i == 0:
            lo = rat(0)
        else:
            lo = cursor + rat(rnd.randint(1, 10), 96)
            if lo >= ONE:
                break
        if rnd.random() < 0.35:
            hi = lo + rat(rnd.randint(1, 8), 96)
            if hi > ONE:
                hi = ONE
        else:
            hi = lo
        comps.append(Component(lo, hi))
        cursor = hi
        if hi == ONE:
            break
    tags = tuple(
        rnd.choice((GapTag.ONE, GapTag.INFINITY)) for _ in range(len(comps) - 1)
    )
    return validate_spec(EaterSpec(tuple(comps), tags))


def respace_spec(spec: EaterSpec, rnd: random.Random) -> EaterSpec:
    """A spec with the same canonical signature but re-drawn endpoints.

    Cursor steps are small enough that redrawn endpoints stay below 1,
    leaving room to pin the last component at 1 when the original ends
    there.
    """
    comps = []
    cursor = rat(0)
    for i, c in enumerate(spec.components):
        lo = rat(0) if i == 0 else cursor + rat(rnd.randint(1, 5), 97)
        hi = lo if c.is_point else lo + rat(rnd.randint(1, 5), 97)
        comps.append(Component(lo, hi))
        cursor = hi
    if not spec.top_open:
        last = comps[-1]
        comps[-1] = Component(rat(1), rat(1)) if last.is_point else Component(last.lo, rat(1))
    return validate_spec(EaterSpec(tuple(comps), spec.gap_tags))
