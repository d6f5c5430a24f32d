import time

import pytest

from selberg.utils import ordered_map


def _slow_square(x):
    # later items finish first
    time.sleep(0.001 * (10 - x))
    return x * x


@pytest.mark.parametrize("threads", [1, 2, 8])
def test_ordered_map_keeps_input_order(threads):
    assert ordered_map(_slow_square, range(10), threads) == [x * x for x in range(10)]


def test_ordered_map_empty():
    assert ordered_map(_slow_square, [], 4) == []
