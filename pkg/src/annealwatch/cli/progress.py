"""Spinner feedback for long-running commands."""

from __future__ import annotations

import sys
from contextlib import contextmanager
from typing import TYPE_CHECKING

from halo import Halo

from annealwatch.env import WatchEnv

if TYPE_CHECKING:
    from collections.abc import Callable, Generator


@contextmanager
def call_progress(
    label: str,
    show: bool = True,
    every: int = 10,
) -> Generator[Callable[[int, int], None] | None, None, None]:
    """Show a spinner while annealing calls run, counting the calls done.

    The spinner is skipped when `show` is False, `ANNEALWATCH_SPINNER` is off, or stderr is not a
    terminal; the context then yields None, which the runners accept as "no progress callback".

    Args:
        label: What is running, e.g. "run" or "trend".
        show: Whether to show the spinner at all.
        every: Update the text every this many calls.

    Usage:
        with call_progress("run", show=not args.quiet) as progress:
            run_experiment(cfg, progress=progress)

    Yields:
        A `(done, total)` callback, or None when no spinner is shown.
    """
    if not (show and WatchEnv().spinner and sys.stderr.isatty()):
        yield None
        return

    spinner = Halo(text=f"Starting {label}", spinner="dots", color="cyan", stream=sys.stderr)
    spinner.start()

    def update(done: int, total: int) -> None:
        if done == total or done % every == 0:
            spinner.text = f"{label}: call {done}/{total}"

    try:
        yield update
    except KeyboardInterrupt:
        spinner.warn(f"{label} interrupted")
        raise
    except Exception as e:
        spinner.fail(f"{label} failed: {e}")
        raise
    spinner.succeed(f"{label} finished")
