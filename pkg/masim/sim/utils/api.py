import functools
import logging
import time

logger = logging.getLogger(__name__)


def timed(func):
    """Log how long ``func`` took at INFO level on the ``masim`` logger tree."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = func(*args, **kwargs)
        end = time.perf_counter()
        logger.info(f"Finished {func.__name__} in {end - start:.3f} seconds")
        return result

    return wrapper


def ceil_div(numerator: int, denominator: int) -> int:
    return -(-numerator // denominator)
