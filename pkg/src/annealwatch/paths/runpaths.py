r"""Resolve where experiment runs write their artifacts.

Relative output directories from an experiment config are anchored, in order of preference, at
`ANNEALWATCH_OUTPUT_ROOT` or the platform data directory:

    Linux:   ~/.local/share/annealwatch/runs
    macOS:   ~/Library/Application Support/annealwatch/runs
    Windows: C:\\Users\\<user>\\AppData\\Local\\annealwatch\\annealwatch\\runs

Absolute directories are used as given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from platformdirs import PlatformDirs

from annealwatch.env import WatchEnv


@dataclass
class RunPaths:
    """Locate run directories and the files inside them.

    Args:
        app_name: Application name for the platform directories.
        create_dirs: Whether to create directories on access.

    Usage:
        paths = RunPaths()
        run_dir = paths.run_dir("runs/smoke")
    """

    app_name: str = "annealwatch"
    create_dirs: bool = True
    _dirs: PlatformDirs = field(init=False, repr=False)

    def __post_init__(self):
        self._dirs = PlatformDirs(appname=self.app_name, appauthor=False)

    @property
    def data_dir(self) -> Path:
        return Path(self._dirs.user_data_dir)

    @property
    def output_root(self) -> Path:
        """Base directory for relative run directories."""
        override = WatchEnv().output_root
        return Path(override).expanduser() if override else self.data_dir / "runs"

    def run_dir(self, directory: str | Path) -> Path:
        """Resolve a run directory from a config value, creating it if requested."""
        path = Path(directory).expanduser()
        if not path.is_absolute():
            path = self.output_root / path
        if self.create_dirs:
            path.mkdir(parents=True, exist_ok=True)
        return path

    def existing_run(self, directory: str | Path) -> Path:
        """Find an existing run directory, as given or under the output root.

        Raises:
            FileNotFoundError: If neither location holds a directory.
        """
        given = Path(directory).expanduser()
        for path in (given, self.output_root / given):
            if path.is_dir():
                return path
        msg = f"No run directory at {given} or {self.output_root / given}."
        raise FileNotFoundError(msg)
