"""Async utility functions."""

import asyncio
import inspect
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Any, Callable, List, Optional, TypeVar

T = TypeVar("T")


async def batch_process(
    items: List[T],
    processor: Callable[[T], Any],
    batch_size: int = 10,
    concurrency: int = 5,
    executor: Optional[Executor] = None,
) -> List[Any]:
    """
    Process items in batches with controlled concurrency.

    Coroutine functions are awaited directly; plain callables run on the executor
    so numerical work does not block the event loop.

    Args:
        items: Items to process
        processor: Async or plain processor function
        batch_size: Number of items per batch
        concurrency: Maximum concurrent operations
        executor: Executor for plain callables (the loop default when omitted)

    Returns:
        List of results, in item order
    """
    semaphore = asyncio.Semaphore(concurrency)
    loop = asyncio.get_running_loop()
    results: List[Any] = []

    async def process_with_semaphore(item: T) -> Any:
        async with semaphore:
            if inspect.iscoroutinefunction(processor):
                return await processor(item)
            return await loop.run_in_executor(executor, processor, item)

    for i in range(0, len(items), batch_size):
        batch = items[i : i + batch_size]
        batch_results = await asyncio.gather(*[process_with_semaphore(item) for item in batch])
        results.extend(batch_results)

    return results


def run_pool(items: List[T], processor: Callable[[T], Any], workers: int = 4, batch_size: int = 50) -> List[Any]:
    """
    Run a plain callable over items on a bounded process pool.

    The processor and the items must be picklable: a module-level function, or a
    functools.partial of one.

    Args:
        items: Items to process
        processor: Plain processor function
        workers: Pool size
        batch_size: Items gathered per batch

    Returns:
        List of results, in item order
    """
    workers = max(1, workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return asyncio.run(batch_process(items, processor, batch_size, workers, executor))
