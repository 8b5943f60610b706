import pytest

from gt_flow.harness.parallel import chunk_indices, chunked_map, ordered_sum


def test_chunk_indices():
    assert chunk_indices(5, 2) == [range(0, 2), range(2, 4), range(4, 5)]
    assert chunk_indices(0, 2) == []
    assert chunk_indices(4, 4) == [range(0, 4)]

    with pytest.raises(ValueError):
        chunk_indices(4, 0)


def test_chunked_map():
    fn = lambda chunk: [i * i for i in chunk]
    serial = chunked_map(fn, 10, jobs=1, chunk_size=3)
    parallel = chunked_map(fn, 10, jobs=4, chunk_size=3)
    assert serial == parallel
    assert serial == [[0, 1, 4], [9, 16, 25], [36, 49, 64], [81]]


def test_ordered_sum():
    assert ordered_sum([[1], [2], [3]]) == [1, 2, 3]
    assert ordered_sum([0.1, 0.2, 0.3]) == (0.1 + 0.2) + 0.3
