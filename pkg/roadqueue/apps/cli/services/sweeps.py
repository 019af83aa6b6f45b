from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from django.conf import settings

__all__ = [
    'ordered_map',
]

T = TypeVar('T')
R = TypeVar('R')


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """Evaluate independent sweep points, optionally on a thread pool; results keep the input order."""
    workers = settings.ROADQUEUE_SWEEP_WORKERS if workers is None else workers
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
