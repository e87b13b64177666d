from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any, ClassVar

from dotenv import load_dotenv

from annealwatch.core import ConfigError, Singleton
from annealwatch.env.types import WatchVar

if TYPE_CHECKING:
    from collections.abc import Callable


@dataclass
class WatchEnv(metaclass=Singleton):
    """Process-level settings read from the environment and `.env` files.

    On first use the `.env` in the current directory is loaded (values already present in the
    environment win), followed by any explicitly supplied files, which override. The variables
    annealwatch itself understands are registered up front:

    - `ANNEALWATCH_LOG_LEVEL`: console log level (default "INFO").
    - `ANNEALWATCH_OUTPUT_ROOT`: base directory for relative run directories.
    - `ANNEALWATCH_SPINNER`: show the progress spinner during long runs (default true).

    Args:
        env_file: Extra `.env` files to load after the current directory's.
    """

    ENV_FILENAME: ClassVar[str] = ".env"

    env_file: list[Path] | Path | str | None = None

    vars: dict[str, WatchVar] = field(default_factory=dict)
    values: dict[str, Any] = field(default_factory=dict)
    attr_names: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self._load_env_files()
        self.add_var("ANNEALWATCH_LOG_LEVEL", attr_name="log_level", default="INFO")
        self.add_var("ANNEALWATCH_OUTPUT_ROOT", attr_name="output_root", default="")
        self.add_bool("ANNEALWATCH_SPINNER", attr_name="spinner", default=True)

    def _load_env_files(self) -> None:
        """Load the local `.env` without overriding, then explicit files with override."""
        local = Path(self.ENV_FILENAME)
        if local.is_file():
            load_dotenv(local, override=False)

        if self.env_file is None:
            return
        files = [self.env_file] if isinstance(self.env_file, str | Path) else self.env_file
        for file in files:
            path = Path(file).expanduser()
            if path.is_file():
                load_dotenv(path, override=True)

    def add_var(
        self,
        name: str,
        attr_name: str | None = None,
        default: Any = None,
        var_type: Callable[[str], Any] = str,
        description: str = "",
    ) -> None:
        """Register an environment variable.

        Args:
            name: Environment variable name (e.g. "ANNEALWATCH_LOG_LEVEL").
            attr_name: Attribute name for access on the instance (e.g. "log_level").
            default: Value used when the variable is unset.
            var_type: Converter applied to the raw string.
            description: Human-readable description.
        """
        self.attr_names[attr_name or name.lower()] = name
        self.vars[name] = WatchVar(
            name=name, default=default, var_type=var_type, description=description
        )
        self.values.pop(name, None)

    def add_bool(self, name: str, attr_name: str | None = None, default: bool = False) -> None:
        """Register a boolean variable that accepts the usual truthy and falsey spellings."""
        self.add_var(name, attr_name=attr_name, default=default, var_type=self.validate_bool)

    def get(self, name: str) -> Any:
        """Get the converted value of a registered variable.

        Raises:
            KeyError: If the variable was never registered.
            ConfigError: If the value cannot be converted.
        """
        if name not in self.vars:
            msg = f"Unknown environment variable: {name}"
            raise KeyError(msg)
        if name in self.values:
            return self.values[name]

        var = self.vars[name]
        raw = os.environ.get(name)
        if raw is None:
            self.values[name] = var.default
            return var.default

        try:
            converted = var.var_type(raw)
        except ValueError as e:
            msg = f"Invalid value for {name}: {e}"
            raise ConfigError(msg) from e
        self.values[name] = converted
        return converted

    def refresh(self) -> None:
        """Reload `.env` files and forget cached values."""
        self._load_env_files()
        self.values.clear()

    def validate_all(self) -> None:
        """Convert every registered variable, reporting all failures at once.

        Raises:
            ConfigError: With a summary of every invalid variable.
        """
        errors = []
        for name in self.vars:
            try:
                self.get(name)
            except ConfigError as e:
                errors.append(str(e))
        if errors:
            msg = "Environment validation failed:\n- " + "\n- ".join(errors)
            raise ConfigError(msg)

    def __getattr__(self, name: str) -> Any:
        """Allow accessing variables as attributes.

        Raises:
            AttributeError: If the given name is unknown.
        """
        if name in {"attr_names", "vars", "values"}:  # dataclass fields not yet set
            raise AttributeError(name)
        if name in self.attr_names:
            return self.get(self.attr_names[name])
        msg = f"'{self.__class__.__name__}' has no attribute '{name}'"
        raise AttributeError(msg)

    @staticmethod
    def validate_bool(value: str) -> bool:
        """Convert common string spellings to a boolean.

        Raises:
            ValueError: If the string is not a recognized boolean.
        """
        value = str(value).lower().strip()
        if value in {"true", "1", "yes", "on", "t", "y"}:
            return True
        if value in {"false", "0", "no", "off", "f", "n"}:
            return False
        msg = f"Cannot convert '{value}' to boolean."
        raise ValueError(msg)
