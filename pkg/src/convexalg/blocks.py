"""Closed-form reference algebras on [0,1] and interval rescaling maps.

Four building blocks, each a convex algebra with monotone, semicontinuous
operations; every other algebra handled by this package is assembled from
pieces isomorphic to these.

    LINEAR  x (+)_p y = p*x + (1-p)*y                exact
    MAX     x (+)_p y = max(x, y)                    exact
    CAP     as LINEAR below 1; result 1 when either argument is 1; exact
    EXP     x (+)_p y = 1 - (1-x)^p (1-y)^(1-p)      float

EXP is the transport of extended-half-line averaging through the
compression t -> 1 - exp(-t); in ambient coordinates its values are
irrational, so it is evaluated in double precision with a tolerance.
"""

from __future__ import annotations

import math
from enum import Enum

from .rational import ONE, ZERO, rat

EXP_TOL = 1e-9

INFINITE = math.inf  # endpoint marker for half-line scales


class DomainError(ValueError):
    """Point outside [0,1] or not representable in the handle."""


class MixedEndpointError(ValueError):
    """Capped and half-line scales admit no isomorphism."""


class BlockKind(Enum):
    LINEAR = "linear"
    MAX = "max"
    CAP = "cap"
    EXP = "exp"

    @classmethod
    def parse(cls, text: str) -> "BlockKind":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"not a block kind: {text!r}") from None


def _check_unit(v, name: str) -> None:
    if not (0 <= v <= 1):
        raise DomainError(f"{name} = {v} outside [0,1]")


def block_combine(kind: BlockKind, x, y, p):
    """Binary convex mixture in the chosen block, weight p on the first argument.

    LINEAR/MAX/CAP take exact rationals and return exact rationals; EXP
    works in floats.  p = 1 and p = 0 project to x and y respectively.
    """
    if kind is BlockKind.EXP:
        xf, yf, pf = float(x), float(y), float(p)
        _check_unit(xf, "x")
        _check_unit(yf, "y")
        if pf >= 1.0:
            return xf
        if pf <= 0.0:
            return yf
        return 1.0 - (1.0 - xf) ** pf * (1.0 - yf) ** (1.0 - pf)

    x, y, p = rat(x), rat(y), rat(p)
    _check_unit(x, "x")
    _check_unit(y, "y")
    if p == ONE:
        return x
    if p == ZERO:
        return y
    if kind is BlockKind.LINEAR:
        return p * x + (1 - p) * y
    if kind is BlockKind.MAX:
        return max(x, y)
    if kind is BlockKind.CAP:
        if x == ONE or y == ONE:
            return ONE
        return p * x + (1 - p) * y
    raise ValueError(f"unknown block kind {kind!r}")


def exp_via_transport(x: float, y: float, p: float) -> float:
    """EXP computed the long way round, through t -> 1 - exp(-t).

    Reference path for tests: map both points to [0, inf], average, map back.
    """
    def to_halfline(u: float) -> float:
        return math.inf if u >= 1.0 else -math.log1p(-u)

    def from_halfline(t: float) -> float:
        return 1.0 if math.isinf(t) else -math.expm1(-t)

    tx, ty = to_halfline(x), to_halfline(y)
    if math.isinf(tx) or math.isinf(ty):
        return 1.0
    return from_halfline(p * tx + (1.0 - p) * ty)


def interval_isomorphism(tau_from, tau_to, x, *, reverse: bool = False, scale=None):
    """Map a point of a linear scale [0, tau_from) onto [0, tau_to).

    Finite -> finite on half-open scales has a unique isomorphism,
    multiplication by tau_to/tau_from; on closed scales (``reverse``
    selects the second of exactly two) also the reversal
    x -> tau_to - x*tau_to/tau_from.  Half-line -> half-line isomorphisms
    form the one-parameter family of scalings; the caller picks ``scale``.
    Mixing a finite scale with a half-line raises: they are not isomorphic.
    """
    from_inf = tau_from == INFINITE
    to_inf = tau_to == INFINITE
    if from_inf != to_inf:
        raise MixedEndpointError("a capped scale is never isomorphic to a half-line")
    if from_inf:
        s = rat(scale) if scale is not None else ONE
        if s <= 0:
            raise ValueError("half-line scaling parameter must be positive")
        return rat(x) * s
    tau_from, tau_to, x = rat(tau_from), rat(tau_to), rat(x)
    if tau_from <= 0 or tau_to <= 0:
        raise ValueError("scale endpoints must be positive")
    image = x * tau_to / tau_from
    if reverse:
        return tau_to - image
    return image
