import math

import pytest

from src.metrics.estimators import delivery_ratio, ratio_from_count, update_delay_estimate
from src.metrics.paths import better, computation_cost, etx_path, invetx_path, md_path, ml_path, path_cost
from src.metrics.types import HelloWindow, InvalidPathError, LinkEstimate, MetricKind, PathCost

PERFECT = LinkEstimate(1.0, 1.0)


def _window(receipts, w=20.0, hello=2.0):
    window = HelloWindow(window_seconds=w, hello_interval=hello)
    for t in receipts:
        window.record(t)
    return window


def test_delivery_ratio_examples():
    assert delivery_ratio(_window([2.0 * k for k in range(1, 11)]), now=20.0) == 1.0
    assert delivery_ratio(_window([]), now=20.0) == 0.0
    assert delivery_ratio(_window([2.0 * k for k in range(1, 6)]), now=10.0) == 0.5


def test_delivery_ratio_forgets_old_receipts():
    window = _window([float(t) for t in range(1, 11)], w=10.0, hello=1.0)
    assert delivery_ratio(window, now=15.0) == pytest.approx(0.6)
    assert list(window.receipt_timestamps) == [5.0, 6.0, 7.0, 8.0, 9.0, 10.0]


def test_window_rejects_out_of_order_receipts():
    window = _window([4.0])
    with pytest.raises(ValueError):
        window.record(4.0)


def test_ratio_from_count():
    assert ratio_from_count(5, 10) == 0.5
    assert ratio_from_count(12, 10) == 1.0
    with pytest.raises(ValueError):
        ratio_from_count(1, 0)


def test_update_delay_estimate_examples():
    assert update_delay_estimate(None, 0.004) == 0.004
    assert update_delay_estimate(0.004, 0.004) == pytest.approx(0.004)
    assert update_delay_estimate(0.010, 0.0) == pytest.approx(0.007)
    with pytest.raises(ValueError):
        update_delay_estimate(0.01, -0.001)


def test_etx_examples():
    assert etx_path([PERFECT] * 3).value == 3.0
    assert etx_path([LinkEstimate(0.5, 0.8)]).value == pytest.approx(2.5)
    two = etx_path([LinkEstimate(0.9, 0.9), LinkEstimate(0.8, 1.0)])
    assert two.value == pytest.approx(2.4846, abs=1e-4)
    assert two.hops == 2
    with pytest.raises(InvalidPathError):
        etx_path([PERFECT, LinkEstimate(0.0, 1.0)])


def test_invetx_examples():
    assert invetx_path([PERFECT] * 3).value == 3.0
    assert invetx_path([LinkEstimate(0.9, 0.9), LinkEstimate(0.8, 1.0)]).value == pytest.approx(1.61)
    empty = invetx_path([])
    assert (empty.value, empty.hops) == (0.0, 0)


def test_ml_examples():
    assert ml_path([PERFECT] * 5).value == 1.0
    assert ml_path([LinkEstimate(0.9, 0.9)] * 2).value == pytest.approx(0.6561)
    assert ml_path([LinkEstimate(0.9, 0.9), LinkEstimate(0.0, 1.0)]).value == 0.0


def test_md_examples():
    assert md_path([LinkEstimate(1, 1, 0.0)] * 2).value == 0.0
    assert md_path([LinkEstimate(1, 1, 0.005), LinkEstimate(1, 1, 0.007)]).value == pytest.approx(0.012)
    assert md_path([LinkEstimate(1, 1, 0.003)]).value == 0.003
    with pytest.raises(InvalidPathError):
        md_path([LinkEstimate(1, 1, None)])


def test_etx_at_least_hop_count():
    links = [LinkEstimate(0.9, 0.7), LinkEstimate(1.0, 1.0), LinkEstimate(0.5, 0.6)]
    assert etx_path(links).value > len(links)
    assert etx_path([PERFECT] * 3).value == len(links)


def test_better_examples():
    assert better(MetricKind.ETX, PathCost(MetricKind.ETX, 2.5, 1), PathCost(MetricKind.ETX, 3.0, 2))
    assert better(MetricKind.ML, PathCost(MetricKind.ML, 0.9, 1), PathCost(MetricKind.ML, 0.81, 1))
    assert better(MetricKind.INVETX, PathCost(MetricKind.INVETX, 1.61, 2), PathCost(MetricKind.INVETX, 2.4, 3))
    assert not better(MetricKind.MD, PathCost(MetricKind.MD, 0.02, 2), PathCost(MetricKind.MD, 0.01, 2))


def test_better_breaks_ties_on_next_hop():
    a = PathCost(MetricKind.ETX, 2.0, 2, next_hop=3)
    b = PathCost(MetricKind.ETX, 2.0, 2, next_hop=5)
    assert better(MetricKind.ETX, a, b)
    assert not better(MetricKind.ETX, b, a)
    assert not better(MetricKind.ETX, PathCost(MetricKind.ETX, 2.0, 2), PathCost(MetricKind.ETX, 2.0, 2))


def test_equal_ml_products_prefer_fewer_hops():
    short = PathCost(MetricKind.ML, 1.0, 2, next_hop=9)
    long = PathCost(MetricKind.ML, 1.0, 3, next_hop=1)
    assert better(MetricKind.ML, short, long)
    assert not better(MetricKind.ML, long, short)


def test_better_rejects_mixed_kinds():
    with pytest.raises(ValueError):
        better(MetricKind.ETX, PathCost(MetricKind.ETX, 1.0, 1), PathCost(MetricKind.ML, 1.0, 1))


def test_path_cost_dispatch_and_parse():
    links = [LinkEstimate(0.5, 1.0, 0.01)]
    assert path_cost(MetricKind.parse("ETX"), links).value == 2.0
    assert path_cost(MetricKind.ML, links).value == 0.5
    with pytest.raises(ValueError, match="unknown metric"):
        MetricKind.parse("hops")


@pytest.mark.parametrize(
    "kind, hops, expected",
    [
        (MetricKind.ETX, 3, (3, 3, 2)),
        (MetricKind.ML, 3, (5, 0, 0)),
        (MetricKind.INVETX, 3, (3, 0, 2)),
        (MetricKind.MD, 3, (0, 0, 2)),
        (MetricKind.ETX, 0, (0, 0, 0)),
    ],
)
def test_computation_cost(kind, hops, expected):
    ops = computation_cost(kind, hops)
    assert (ops.multiplications, ops.divisions, ops.additions) == expected
    assert ops.total == sum(expected)


def test_link_estimate_product():
    est = LinkEstimate(0.5, 0.4)
    assert math.isclose(est.product, 0.2)
    assert est.usable
    assert not LinkEstimate(0.0, 1.0).usable
