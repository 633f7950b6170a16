import random

import pytest

from convexalg.classify import (
    NotAGapError,
    UndecidedError,
    check_v_max_formula,
    classify,
    components_floor,
    extract_eaters,
    extract_gap_tag,
    growth_sequence,
)
from convexalg.core import NumericAlgebra, block, build
from convexalg.eaterspec import Component, GapTag, make_spec
from convexalg.rational import rat

from conftest import random_spec


def test_extract_eaters_blocks():
    assert extract_eaters(block("linear")) == [Component.point(0)]
    assert extract_eaters(block("max")) == [Component.interval(0, 1)]
    assert extract_eaters(block("cap")) == [Component.point(0), Component.point(1)]
    assert extract_eaters(block("exp")) == [Component.point(0), Component.point(1)]


def test_extract_eaters_structured_is_exact():
    spec = make_spec(
        [Component.point(0), Component.interval(rat(1, 3), rat(2, 3))], [GapTag.ONE]
    )
    assert extract_eaters(build(spec)) == list(spec.components)


def test_extract_eaters_probed_boundary_refinement():
    # black box absorbing below 3/8: eater set [0, 3/8]
    def op(x, y, p):
        if x <= 0.375 and y <= 0.375:
            return max(x, y)
        hi, lo = max(x, y), min(x, y)
        w = p if hi == x else 1 - p
        lo = max(lo, 0.375)
        return w * hi + (1 - w) * lo if hi > 0.375 else hi

    # simpler honest oracle: measure only eats(y, 0) behaviour
    def op2(x, y, p):
        if min(x, y) <= 0.375 and max(x, y) <= 0.375:
            return max(x, y)
        return p * x + (1 - p) * y

    alg = NumericAlgebra(op2, tol=1e-9)
    comps = extract_eaters(alg, grid=64)
    assert len(comps) == 1
    assert comps[0].lo == 0
    assert abs(float(comps[0].hi) - 0.375) <= 2 ** -40


def test_growth_sequence_capped_oracle():
    # telescoping product for the capped block: t_k = 2 * (1 - 2^-k)
    ts = growth_sequence(block("cap"), 0, 1, 20)
    for k in range(1, 21):
        assert ts[k - 1] == pytest.approx(2 * (1 - 2.0 ** -k), abs=1e-9)


def test_growth_sequence_halfline_oracle():
    # the exponential block's sequence grows linearly: t_k = k
    ts = growth_sequence(block("exp"), 0, 1, 25)
    for k in range(2, 26):
        assert ts[k - 1] == pytest.approx(k, rel=1e-6)


def test_extract_gap_tag_blocks():
    assert extract_gap_tag(block("cap"), 0, 1) is GapTag.ONE
    assert extract_gap_tag(block("exp"), 0, 1) is GapTag.INFINITY


def test_extract_gap_tag_structured_reads_spec():
    spec = make_spec(
        [Component.point(0), Component.point(rat(1, 2)), Component.point(1)],
        [GapTag.ONE, GapTag.INFINITY],
    )
    alg = build(spec)
    assert extract_gap_tag(alg, 0, rat(1, 2)) is GapTag.ONE
    assert extract_gap_tag(alg, rat(1, 2), 1) is GapTag.INFINITY
    with pytest.raises(NotAGapError):
        extract_gap_tag(alg, 0, 1)


def test_extract_gap_tag_rejects_non_gap():
    with pytest.raises(NotAGapError):
        extract_gap_tag(block("max"), 0, 1)
    with pytest.raises(NotAGapError):
        extract_gap_tag(block("linear"), rat(1, 4), rat(3, 4))


def test_undecided_on_extremely_flat_transport():
    # transport of linear averaging through t -> t^(1/30), absorbing at 1:
    # a capped gap whose scale sequence is still visibly moving at depth 30,
    # yet far below a raised divergence threshold
    def op(x, y, p):
        if x == 1.0 or y == 1.0:
            return 1.0
        return (p * x ** 30.0 + (1 - p) * y ** 30.0) ** (1.0 / 30.0)

    alg = NumericAlgebra(op, tol=1e-9)
    with pytest.raises(UndecidedError):
        extract_gap_tag(alg, 0, 1, depth=30, threshold=1e12)


def test_classify_blocks():
    assert classify(block("linear")) == make_spec([Component.point(0)], [])
    assert classify(block("max")) == make_spec([Component.interval(0, 1)], [])
    assert classify(block("cap")) == make_spec(
        [Component.point(0), Component.point(1)], [GapTag.ONE]
    )
    assert classify(block("exp")) == make_spec(
        [Component.point(0), Component.point(1)], [GapTag.INFINITY]
    )


def test_classify_build_round_trip_samples():
    rnd = random.Random(31)
    for _ in range(25):
        spec = random_spec(rnd)
        assert classify(build(spec)) == spec


def test_components_floor():
    comps = [Component.point(0), Component.interval(rat(1, 4), rat(1, 2))]
    assert components_floor(comps, rat(1, 8)) == 0
    assert components_floor(comps, rat(1, 3)) == rat(1, 3)
    assert components_floor(comps, rat(3, 4)) == rat(1, 2)


def test_check_v_max_formula():
    spec = make_spec(
        [Component.point(0), Component.point(rat(1, 4)), Component.point(rat(1, 2))],
        [GapTag.ONE, GapTag.ONE],
    )
    alg = build(spec)
    assert check_v_max_formula(alg, rat(3, 8))
    assert check_v_max_formula(block("linear"), rat(1))
    assert check_v_max_formula(block("max"), rat(2, 3))
    assert check_v_max_formula(block("exp"), rat(7, 8))
