"""Timing helpers for ire commands and verify batches."""

import time
from contextlib import contextmanager
from typing import Generator, Optional, TextIO

from ire.logging_config import log_message


class Timer:
    """A picklable wall-clock timer, started on creation."""

    def __init__(self):
        self.start_time = time.perf_counter()
        self.duration = None

    def stop(self) -> float:
        """Stop the timer and return the duration."""
        if self.duration is None:
            self.duration = time.perf_counter() - self.start_time
        return self.duration

    def __call__(self) -> float:
        """Elapsed seconds so far, or the final duration once stopped."""
        if self.duration is not None:
            return self.duration
        return time.perf_counter() - self.start_time


@contextmanager
def timing_context(
    operation_name: str,
    log_file: Optional[TextIO] = None,
    log_timing: bool = False,
    quiet: bool = False,
) -> Generator[Timer, None, None]:
    """Time a block of work.

    Args:
        operation_name: Name used in the timing message
        log_file: Log handle passed on to ``log_message``
        log_timing: Whether to log the duration when the block exits
        quiet: Whether console output is suppressed

    Yields:
        Timer: Running timer; ``timer()`` reads it, ``timer.stop()`` freezes it

    Example:
        with timing_context("Rauzy class", log_file, log_timing=True) as timer:
            rauzy_class(seed, max_size)
    """
    timer = Timer()
    try:
        yield timer
    finally:
        duration = timer.stop()
        if log_timing:
            log_message(
                log_file,
                "DEBUG",
                f"  {operation_name} took {duration:.2f} seconds",
                quiet=quiet,
            )
