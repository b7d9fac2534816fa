"""Console and file logging for ire."""

import os
import sys
from datetime import datetime
from typing import Optional, TextIO

# Last message shown, used to space out sections on the console
_last_message = ""

BANNER_PREFIX = "IRE v"
SUMMARY_MARKER = " Summary:"


def setup_logging(
    log_path: Optional[str] = None, quiet: bool = False, is_worker: bool = False
) -> Optional[TextIO]:
    """Open the log file with line buffering.

    Args:
        log_path: Optional path to log file
        quiet: Whether to suppress console output
        is_worker: Whether this is a worker process

    Returns:
        TextIO: Log file handle if log_path is provided, None otherwise
    """
    log_file = None

    if log_path:
        dir_name = os.path.dirname(log_path)
        if dir_name:
            os.makedirs(dir_name, exist_ok=True)

        log_file = open(log_path, "a", encoding="utf-8", buffering=1)

        # Workers append to the parent's file without a header
        if not is_worker:
            log_file.write("=== Process Started ===\n\n")

    return log_file


def log_message(
    log_file, level: str, message: str, quiet: bool = False, summary: bool = False
) -> None:
    """Log a message to the console and, when given, to the log file.

    Args:
        log_file: File handle, ``logging.Logger`` or None
        level: INFO, WARNING, ERROR, DEBUG or HEADER
        message: Message to log
        quiet: Show errors only
        summary: Show only the banner, warnings, errors and summary blocks
    """
    global _last_message

    if log_file:
        if hasattr(log_file, "info"):
            if level == "ERROR":
                log_file.error(message)
            elif level == "WARNING":
                log_file.warning(message)
            elif level == "DEBUG":
                log_file.debug(message)
            else:
                log_file.info(message)
        else:
            timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
            log_file.write(f"{timestamp} - {level} - {message}\n")
            log_file.flush()

    is_error = level == "ERROR"
    is_warning = level == "WARNING"
    is_version = message.startswith(BANNER_PREFIX)
    is_summary = SUMMARY_MARKER in message

    if quiet:
        should_print = is_error
    elif summary:
        should_print = is_error or is_warning or is_version or is_summary
    else:
        should_print = True

    if should_print:
        console_message = f"WARNING: {message}" if is_warning else message

        stream = sys.stderr if is_error or is_warning else sys.stdout
        if _last_message and (is_warning or is_version or is_summary):
            print(file=stream)

        if is_error:
            print(f"\033[91m{console_message}\033[0m", file=sys.stderr)
        elif is_warning:
            print(f"\033[93m{console_message}\033[0m", file=sys.stderr)
        elif level == "DEBUG":
            print(f"\033[90m{console_message}\033[0m")
        elif level == "HEADER":
            print(f"\033[1m{console_message}\033[0m")
        else:
            print(console_message)

    _last_message = message


def close_logging(log_file: Optional[TextIO]) -> None:
    """Close the log file if open."""
    if log_file:
        log_file.write("\n=== Process Completed ===\n")
        log_file.close()


def replay_messages(
    log_file, messages, quiet: bool = False, summary: bool = False
) -> None:
    """Log ``(level, message)`` pairs collected in a worker process."""
    for level, message in messages:
        log_message(log_file, level, message, quiet=quiet, summary=summary)


def log_run_summary(
    log_file,
    title: str,
    total: int,
    failed: int,
    total_time: float,
    errors=(),
    quiet: bool = False,
    summary: bool = False,
) -> None:
    """Log the closing block of a batch run as one message.

    Args:
        title: Block title, e.g. "Verification" gives "Verification Summary:"
        total: Number of checks run
        failed: Number of checks that failed
        total_time: Seconds spent
        errors: ``(name, message)`` pairs listed under "Errors:"
    """
    heading = f"\n{title} Summary:"
    lines = [
        heading,
        "-" * (len(heading) - 1),
        f"Checks run: {total}",
        f"Total time: {total_time:.2f} seconds",
    ]
    if total > 0:
        lines.append(f"Average time per check: {total_time / total:.3f} seconds")
    lines.extend([f"Passed: {total - failed}", f"Failed: {failed}"])

    if errors:
        lines.extend(["\nErrors:", "-------"])
        for name, error in errors:
            lines.extend([f"• {name}:", f"  {error}"])

    while lines and not lines[0]:
        lines.pop(0)

    log_message(log_file, "INFO", "\n".join(lines), quiet=quiet, summary=summary)
