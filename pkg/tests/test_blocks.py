import random

import pytest

from convexalg.blocks import (
    INFINITE,
    BlockKind,
    DomainError,
    MixedEndpointError,
    block_combine,
    exp_via_transport,
    interval_isomorphism,
)
from convexalg.rational import rat


def test_cap_absorbs_at_one():
    assert block_combine(BlockKind.CAP, 1, 0, rat(1, 2)) == 1
    assert block_combine(BlockKind.CAP, rat(1, 3), rat(2, 3), rat(1, 2)) == rat(1, 2)


def test_exp_example():
    # 1 - (1/4)^(1/2) = 1/2
    assert block_combine(BlockKind.EXP, 0.75, 0.0, 0.5) == pytest.approx(0.5, abs=1e-12)


def test_idempotence_all_kinds():
    for kind in BlockKind:
        x = 0.375 if kind is BlockKind.EXP else rat(3, 8)
        assert block_combine(kind, x, x, rat(2, 5)) == pytest.approx(0.375, abs=1e-12)


def test_projection_rule():
    for kind in BlockKind:
        x = 0.25 if kind is BlockKind.EXP else rat(1, 4)
        y = 0.75 if kind is BlockKind.EXP else rat(3, 4)
        assert block_combine(kind, x, y, 1) == x
        assert block_combine(kind, x, y, 0) == y


def test_max_ignores_parameter():
    assert block_combine(BlockKind.MAX, rat(3, 10), rat(7, 10), rat(9, 10)) == rat(7, 10)


def test_domain_error():
    with pytest.raises(DomainError):
        block_combine(BlockKind.LINEAR, rat(3, 2), rat(1, 2), rat(1, 2))
    with pytest.raises(DomainError):
        block_combine(BlockKind.EXP, -0.1, 0.5, 0.5)


def test_exp_equals_halfline_transport():
    rnd = random.Random(2)
    for _ in range(500):
        x, y, p = rnd.random(), rnd.random(), rnd.uniform(0.01, 0.99)
        direct = block_combine(BlockKind.EXP, x, y, p)
        assert direct == pytest.approx(exp_via_transport(x, y, p), abs=1e-9)
    assert block_combine(BlockKind.EXP, 1.0, 0.3, 0.5) == 1.0 == exp_via_transport(1.0, 0.3, 0.5)


def test_interval_isomorphism_scaling():
    assert interval_isomorphism(1, 3, rat(1, 2)) == rat(3, 2)


def test_interval_isomorphism_reversal():
    assert interval_isomorphism(1, 1, rat(1, 4), reverse=True) == rat(3, 4)


def test_interval_isomorphism_mixed_rejected():
    with pytest.raises(MixedEndpointError):
        interval_isomorphism(1, INFINITE, rat(1, 2))
    with pytest.raises(MixedEndpointError):
        interval_isomorphism(INFINITE, 2, rat(1, 2))


def test_interval_isomorphism_composes():
    # tau'' -> tau followed by tau -> tau' equals tau'' -> tau'
    x = rat(5, 7)
    via = interval_isomorphism(rat(3, 2), 2, interval_isomorphism(5, rat(3, 2), x))
    assert via == interval_isomorphism(5, 2, x)


def test_halfline_scaling_family():
    assert interval_isomorphism(INFINITE, INFINITE, rat(3, 4), scale=rat(2)) == rat(3, 2)
    with pytest.raises(ValueError):
        interval_isomorphism(INFINITE, INFINITE, rat(1), scale=rat(-1))
