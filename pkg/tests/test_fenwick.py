from collections import Counter

import pytest

from doublab.chains import FenwickSampler


def test_cumulative_and_find():
    s = FenwickSampler([3, 0, 2, 5])
    assert s.total == 10
    assert [s.cumulative(i) for i in range(4)] == [3, 3, 5, 10]
    assert [s.find(v) for v in (1, 3, 4, 5, 6, 10)] == [0, 0, 2, 2, 3, 3]


def test_increment_grows_capacity():
    s = FenwickSampler([1], capacity=2)
    s.increment(9, 4)
    assert len(s) >= 10
    assert s.weight(9) == 4
    assert s.total == 5
    assert s.find(2) == 9


def test_negative_weight_rejected():
    s = FenwickSampler([1, 1])
    with pytest.raises(ValueError):
        s.increment(0, -2)


def test_find_out_of_range():
    s = FenwickSampler([1, 1])
    with pytest.raises(ValueError):
        s.find(0)
    with pytest.raises(ValueError):
        s.find(3)


def test_rebuild_matches_increments():
    a = FenwickSampler(capacity=16)
    for i, w in enumerate([4, 0, 7, 1, 0, 2]):
        a.increment(i, w)
    b = FenwickSampler([4, 0, 7, 1, 0, 2], capacity=16)
    assert [a.cumulative(i) for i in range(16)] == [b.cumulative(i) for i in range(16)]


@pytest.mark.statistical
def test_sample_frequencies(rng):
    s = FenwickSampler([1, 0, 3])
    counts = Counter(s.sample(rng) for _ in range(8000))
    assert counts[1] == 0
    assert 0.22 < counts[0] / 8000 < 0.28
