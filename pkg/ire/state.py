"""Interruption state shared by long-running ire commands.

Class enumeration and verify batches poll ``is_shutdown_requested`` between
units of work and return partial results once it is set.
"""

import threading

shutdown_requested = threading.Event()


def is_shutdown_requested() -> bool:
    """Whether a graceful stop has been asked for."""
    return shutdown_requested.is_set()


def request_shutdown() -> None:
    """Ask running loops to stop after their current unit of work."""
    shutdown_requested.set()


def reset_shutdown() -> None:
    """Clear the flag so a new command can run in the same process."""
    shutdown_requested.clear()


def force_exit() -> None:
    # second signal: stop scheduling and let the caller exit
    request_shutdown()
