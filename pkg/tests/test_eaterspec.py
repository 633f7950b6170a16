import random

import pytest
from hypothesis import given, strategies as st

from convexalg.eaterspec import (
    Component,
    EaterSpec,
    GapCountMismatchError,
    GapTag,
    LadderSpec,
    LadderWindowError,
    MalformedIntervalError,
    MissingZeroError,
    OutOfRangeError,
    OverlapError,
    dumps_ladder,
    dumps_spec,
    eater_floor,
    gaps,
    ladder_to_window,
    loads_ladder,
    loads_spec,
    make_spec,
    validate_spec,
)
from convexalg.rational import rat

from conftest import random_spec


def test_minimal_two_eater_spec_accepted():
    spec = make_spec([Component.point(0), Component.point(rat(1, 2))], [GapTag.ONE])
    assert spec.top_open


def test_missing_zero_rejected():
    with pytest.raises(MissingZeroError):
        make_spec([Component.point(rat(1, 4))], [])


def test_malformed_interval_rejected():
    with pytest.raises(MalformedIntervalError):
        make_spec(
            [Component.point(0), Component(rat(1, 4), rat(1, 5))], [GapTag.ONE]
        )


def test_out_of_range_rejected():
    with pytest.raises(OutOfRangeError):
        make_spec([Component.point(0), Component.point(rat(3, 2))], [GapTag.ONE])


def test_overlap_rejected():
    with pytest.raises(OverlapError):
        make_spec(
            [Component.interval(0, rat(1, 2)), Component.interval(rat(1, 4), rat(3, 4))],
            [GapTag.ONE],
        )


def test_gap_count_mismatch_rejected():
    with pytest.raises(GapCountMismatchError):
        validate_spec(EaterSpec((Component.point(rat(0)), Component.point(rat(1))), ()))


SPEC_MIXED = make_spec(
    [Component.point(0), Component.point(rat(1, 4)), Component.interval(rat(1, 2), rat(3, 4))],
    [GapTag.ONE, GapTag.INFINITY],
)


def test_eater_floor_examples():
    assert eater_floor(SPEC_MIXED, rat(3, 10)) == rat(1, 4)
    assert eater_floor(SPEC_MIXED, rat(3, 5)) == rat(3, 5)
    assert eater_floor(SPEC_MIXED, rat(9, 10)) == rat(3, 4)


@given(st.integers(min_value=0, max_value=960))
def test_eater_floor_properties(k):
    x = rat(k, 960)
    f = eater_floor(SPEC_MIXED, x)
    assert f <= x
    assert eater_floor(SPEC_MIXED, f) == f
    if k > 0:
        assert eater_floor(SPEC_MIXED, rat(k - 1, 960)) <= f


def test_gaps_enumeration():
    assert gaps(SPEC_MIXED) == [
        (rat(0), rat(1, 4), GapTag.ONE),
        (rat(1, 4), rat(1, 2), GapTag.INFINITY),
    ]
    assert gaps(make_spec([Component.point(0)], [])) == []
    two = make_spec([Component.point(0), Component.point(1)], [GapTag.INFINITY])
    assert gaps(two) == [(rat(0), rat(1), GapTag.INFINITY)]


def test_gap_partition_property():
    rnd = random.Random(5)
    for _ in range(50):
        spec = random_spec(rnd)
        pieces = []
        for c in spec.components:
            pieces.append((c.lo, c.hi))
        for a, b, _ in gaps(spec):
            pieces.append((a, b))
        if spec.top_open:
            pieces.append((spec.max_eater, rat(1)))
        pieces.sort()
        assert pieces[0][0] == rat(0)
        assert pieces[-1][1] == rat(1)
        for (_, hi), (lo, _) in zip(pieces, pieces[1:]):
            assert hi == lo  # contiguous cover of [0,1]


def test_serialize_parse_identity():
    rnd = random.Random(11)
    for _ in range(100):
        spec = random_spec(rnd)
        assert loads_spec(dumps_spec(spec)) == spec


def test_parse_serialize_identity_on_text():
    text = (
        '{"components": [{"point": "0/1"}, {"interval": ["1/4", "1/2"]}],'
        ' "gaps": [{"sigma": "inf"}]}'
    )
    spec = loads_spec(text)
    assert loads_spec(dumps_spec(spec)) == spec


# ---------------------------------------------------------------------------
# Ladder windows
# ---------------------------------------------------------------------------

LADDER = LadderSpec(r=rat(1, 2), left=GapTag.ONE, right=GapTag.ONE)


def test_ladder_window_0_1():
    # eaters 0 < r^2 = 1/4 < r = 1/2 < 1; the bottom gap is the truncation
    # artifact (tag One), interior gap reads sigma(1), the clamped top gap
    # reads sigma(0)
    ladder = LadderSpec(
        r=rat(1, 2), left=GapTag.ONE, right=GapTag.ONE,
        exceptions=((1, GapTag.INFINITY), (0, GapTag.INFINITY)),
    )
    spec = ladder_to_window(ladder, 0, 1)
    assert [c.lo for c in spec.components] == [rat(0), rat(1, 4), rat(1, 2), rat(1)]
    assert spec.gap_tags == (GapTag.ONE, GapTag.INFINITY, GapTag.INFINITY)
    assert spec.gap_tags[1] == ladder.sigma(1)
    assert spec.gap_tags[2] == ladder.sigma(0)


def test_ladder_window_width_one_has_one_interior_gap():
    spec = ladder_to_window(LADDER, 3, 3)
    # eaters {0, r^8, 1}: bottom gap is boundary, the other is interior
    assert len(spec.components) == 3
    assert len(spec.gap_tags) == 2


def test_ladder_repeated_squaring_value():
    # r^(2^n) by explicit repeated squaring as the oracle
    value = rat(1, 2)
    for _ in range(4):
        value = value * value
    assert value == rat(1, 65536)
    spec = ladder_to_window(LADDER, 0, 4)
    assert any(c.lo == rat(1, 65536) for c in spec.components)


def test_ladder_negative_window_exact_roots():
    ladder = LadderSpec(r=rat(1, 16), left=GapTag.ONE, right=GapTag.ONE)
    assert ladder.eater_value(-1) == rat(1, 4)
    assert ladder.eater_value(-2) == rat(1, 2)
    spec = ladder_to_window(ladder, -2, 0)
    assert [c.lo for c in spec.components] == [
        rat(0), rat(1, 16), rat(1, 4), rat(1, 2), rat(1)
    ]


def test_ladder_irrational_root_rejected():
    ladder = LadderSpec(r=rat(1, 3), left=GapTag.ONE, right=GapTag.ONE)
    with pytest.raises(LadderWindowError):
        ladder_to_window(ladder, -1, 0)


def test_ladder_exponent_budget():
    with pytest.raises(LadderWindowError):
        ladder_to_window(LADDER, 0, 25)


def test_ladder_sigma_anchoring():
    ladder = LadderSpec(
        r=rat(1, 2), left=GapTag.ONE, right=GapTag.INFINITY,
        exceptions=((2, GapTag.ONE),),
    )
    assert ladder.sigma(-5) == GapTag.ONE
    assert ladder.sigma(0) == GapTag.INFINITY
    assert ladder.sigma(2) == GapTag.ONE
    assert ladder.sigma(3) == GapTag.INFINITY


def test_ladder_serialization_round_trip():
    ladder = LadderSpec(
        r=rat(1, 2), left=GapTag.ONE, right=GapTag.INFINITY,
        exceptions=((0, GapTag.INFINITY), (3, GapTag.ONE)),
    )
    assert loads_ladder(dumps_ladder(ladder)) == ladder
