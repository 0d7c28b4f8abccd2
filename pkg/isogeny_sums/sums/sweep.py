from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

from tqdm import tqdm

from isogeny_sums.utilities.logger import get_logger

logger = get_logger("isogeny_sums")

R = TypeVar("R")


def sweep(
    func: Callable[[int], R],
    primes: Iterable[int],
    workers: int = 1,
    chunksize: int = 16,
    progress: bool = True,
    desc: str = "primes",
) -> list[R]:
    """
    Evaluate func at every prime, in ascending prime order.

    With workers > 1 the primes are farmed out to a process pool; func must
    then be picklable (a module-level function or a functools.partial of one).

    :param func: Per-prime computation
    :param primes: Primes to visit
    :param workers: Number of processes, 1 runs in-process
    :param chunksize: Primes handed to a worker at a time
    :param progress: Show a tqdm bar on stderr
    :param desc: Label for the progress bar
    :return: Results in ascending prime order
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    ordered = sorted(primes)
    logger.debug(f"sweeping {len(ordered)} primes with {workers} worker(s)")

    bar = tqdm(total=len(ordered), desc=desc, disable=not progress, leave=False)
    results: list[R] = []
    with bar:
        if workers == 1:
            for p in ordered:
                results.append(func(p))
                bar.update()
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                for result in executor.map(func, ordered, chunksize=chunksize):
                    results.append(result)
                    bar.update()
    return results
