"""Deterministic chunked parallel map.

Work items are split into chunks whose boundaries depend only on the item
count and the chunk size, never on the number of workers. Workers pull
chunks dynamically and results are gathered by chunk index, so reductions
run in the same order whatever the scheduling.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_CHUNK_SIZE = 256


def chunk_indices(n_items: int, chunk_size: int = DEFAULT_CHUNK_SIZE) -> list[range]:
    if chunk_size < 1:
        raise ValueError(f"Chunk size must be positive, got {chunk_size}")
    starts = range(0, n_items, chunk_size)
    return [range(start, min(start + chunk_size, n_items)) for start in starts]


def chunked_map(
    fn: Callable[[range], R],
    n_items: int,
    jobs: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> list[R]:
    """[fn(chunk) for chunk in chunk_indices(n_items, chunk_size)], in chunk order."""
    chunks = chunk_indices(n_items, chunk_size)
    if jobs <= 1:
        return [fn(chunk) for chunk in chunks]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(fn, chunks))


def ordered_sum(parts: Sequence[T]) -> T:
    """Left fold of + over parts in index order."""
    total = parts[0]
    for part in parts[1:]:
        total = total + part
    return total
