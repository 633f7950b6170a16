import math
import random

import pytest

from convexalg.blocks import DomainError
from convexalg.eaterspec import Component, GapTag, make_spec
from convexalg.plonka import (
    Carrier,
    CarrierKind,
    InexactCoordinate,
    SPoint,
    ambient_exact,
    carrier_of_eater,
    check_member,
    embed,
    eater_point,
    format_point,
    locate,
    parse_point,
    s_combine,
    spoint_le,
    spoint_lt,
)
from convexalg.rational import rat

from conftest import random_spec

SPEC_HALF = make_spec([Component.point(0), Component.point(rat(1, 2))], [GapTag.ONE])
SPEC_EXPISH = make_spec([Component.point(0), Component.point(1)], [GapTag.INFINITY])


def test_combine_across_carriers():
    # gap point at ambient 1/4 mixed with top point at ambient 3/4
    x = locate(SPEC_HALF, rat(1, 4))
    y = locate(SPEC_HALF, rat(3, 4))
    z = s_combine(SPEC_HALF, x, y, rat(1, 2))
    assert z.carrier.kind is CarrierKind.TOP
    assert z.offset == rat(1, 4)
    assert ambient_exact(SPEC_HALF, z) == rat(5, 8)


def test_combine_of_eaters_is_max():
    x = eater_point(SPEC_HALF, 0)
    y = eater_point(SPEC_HALF, rat(1, 2))
    for p in (rat(1, 3), rat(9, 10)):
        z = s_combine(SPEC_HALF, x, y, p)
        assert z == y


def test_combine_inside_halfline_gap():
    x = SPoint(rat(0), rat(1), carrier_of_eater(SPEC_EXPISH, rat(0)))
    y = SPoint(rat(0), rat(0), x.carrier)
    z = s_combine(SPEC_EXPISH, x, y, rat(1, 2))
    assert z.offset == rat(1, 2)
    assert embed(SPEC_EXPISH, z) == pytest.approx(1 - math.exp(-0.5), abs=1e-12)


def test_embed_cases():
    inf_gap = carrier_of_eater(SPEC_EXPISH, rat(0))
    assert embed(SPEC_EXPISH, SPoint(rat(0), rat(0), inf_gap)) == 0.0
    assert embed(SPEC_EXPISH, SPoint(rat(0), rat(1), inf_gap)) == pytest.approx(
        1 - math.exp(-1), abs=1e-12
    )
    spec = make_spec(
        [Component.point(0), Component.point(rat(1, 4)), Component.point(rat(1, 2))],
        [GapTag.ONE, GapTag.ONE],
    )
    g = carrier_of_eater(spec, rat(1, 4))
    assert ambient_exact(spec, SPoint(rat(1, 4), rat(1, 2), g)) == rat(3, 8)


def test_locate_examples():
    p = locate(SPEC_HALF, rat(1, 4))
    assert p.carrier.kind is CarrierKind.GAP and p.offset == rat(1, 2)
    e = locate(SPEC_HALF, rat(1, 2))
    assert e.offset == 0 and e.base == rat(1, 2)
    with pytest.raises(InexactCoordinate):
        locate(SPEC_EXPISH, rat(1, 2))
    approx = locate(SPEC_EXPISH, rat(1, 2), allow_approx=True)
    assert approx.approx
    assert float(approx.offset) == pytest.approx(math.log(2), abs=1e-12)


def test_locate_embed_round_trip():
    rnd = random.Random(3)
    for _ in range(60):
        spec = random_spec(rnd)
        for _ in range(20):
            x = rat(rnd.randint(0, 192), 192)
            try:
                p = locate(spec, x)
            except InexactCoordinate:
                continue
            assert ambient_exact(spec, p) == x
            check_member(spec, p)


def test_axioms_exact_on_structured_points():
    rnd = random.Random(9)
    for _ in range(20):
        spec = random_spec(rnd)
        pts = []
        for _ in range(6):
            x = rat(rnd.randint(0, 96), 96)
            try:
                pts.append(locate(spec, x))
            except InexactCoordinate:
                pts.append(eater_point(spec, spec.components[0].lo))
        for _ in range(40):
            x, y, z = (rnd.choice(pts) for _ in range(3))
            p = rat(rnd.randint(1, 15), 16)
            q = rat(rnd.randint(1, 15), 16)
            assert s_combine(spec, x, x, p) == x
            assert s_combine(spec, x, y, p) == s_combine(spec, y, x, 1 - p)
            lhs = s_combine(spec, s_combine(spec, x, y, p), z, q)
            rhs = s_combine(
                spec, x, s_combine(spec, y, z, (1 - p) * q / (1 - p * q)), p * q
            )
            assert lhs == rhs


def test_embed_respects_order():
    rnd = random.Random(17)
    for _ in range(20):
        spec = random_spec(rnd)
        pts = []
        for _ in range(12):
            x = rat(rnd.randint(0, 128), 128)
            pts.append(locate(spec, x, allow_approx=True))
        pts.sort(key=lambda p: (p.base, p.offset))
        embedded = [embed(spec, p) for p in pts]
        assert embedded == sorted(embedded)
        for a, b in zip(pts, pts[1:]):
            assert spoint_le(a, b)


def test_eats_structure_matches_spec():
    # an element absorbs 0 exactly when it is an eater of the spec
    rnd = random.Random(23)
    for _ in range(30):
        spec = random_spec(rnd)
        zero = eater_point(spec, rat(0))
        for _ in range(20):
            x = rat(rnd.randint(0, 96), 96)
            p = locate(spec, x, allow_approx=True)
            absorbed = s_combine(spec, p, zero, rat(1, 2)) == p
            from convexalg.eaterspec import eater_floor
            assert absorbed == (eater_floor(spec, x) == x)


def test_point_text_round_trip():
    for text in ("E:1/2", "G:0..1/2@t=1/3", "T@t=3/4", "1/4"):
        p = parse_point(SPEC_HALF, text)
        check_member(SPEC_HALF, p)
        again = parse_point(SPEC_HALF, format_point(SPEC_HALF, p))
        assert again == p


def test_foreign_point_rejected():
    foreign = SPoint(rat(1, 3), rat(0), Carrier(CarrierKind.SINGLETON, rat(1, 3)))
    with pytest.raises(DomainError):
        check_member(SPEC_HALF, foreign)
    bad_offset = SPoint(rat(0), rat(3, 2), carrier_of_eater(SPEC_HALF, rat(0)))
    with pytest.raises(DomainError):
        check_member(SPEC_HALF, bad_offset)


def test_projection_in_s_combine():
    x = locate(SPEC_HALF, rat(1, 4))
    y = locate(SPEC_HALF, rat(3, 4))
    assert s_combine(SPEC_HALF, x, y, rat(1)) == x
    assert s_combine(SPEC_HALF, x, y, rat(0)) == y


def test_strict_order_helper():
    x = locate(SPEC_HALF, rat(1, 4))
    y = locate(SPEC_HALF, rat(3, 4))
    assert spoint_lt(x, y) and not spoint_lt(y, x)
