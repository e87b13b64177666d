from __future__ import annotations

import argparse
import re
import textwrap
from importlib.metadata import PackageNotFoundError, version
from typing import Any, ClassVar


class ArgParser(argparse.ArgumentParser):
    """ArgumentParser whose option column fits its longest option and whose help reads as prose.

    Descriptions keep their blank-line paragraph breaks, but wrapped source lines are joined, so a
    module docstring can be passed straight in. Option help starts lowercase unless the argument
    is added with `keep_caps=True`.

    Args:
        lines: Number of description paragraphs to keep (0 keeps all).
        add_version: If True, add `--version` reporting the installed annealwatch version.

    Example:
        parser = ArgParser(prog="annealwatch", description=__doc__, lines=1, add_version=True)
        sub = parser.add_subparsers(dest="command", parser_class=ArgParser)
    """

    WIDTH: ClassVar[int] = 100
    MIN_COLUMN: ClassVar[int] = 20
    MAX_COLUMN: ClassVar[int] = 36

    def __init__(self, *args: Any, lines: int = 0, add_version: bool = False, **kwargs: Any):
        if kwargs.get("description") is not None:
            kwargs["description"] = _paragraphs(kwargs["description"], lines)
        kwargs["formatter_class"] = self._formatter(self.MIN_COLUMN)
        super().__init__(*args, **kwargs)
        if add_version:
            self.add_argument("--version", action="version", version=package_version())

    def add_argument(self, *args: Any, **kwargs: Any) -> argparse.Action:
        keep_caps = kwargs.pop("keep_caps", False)
        text = kwargs.get("help")
        if text and text != argparse.SUPPRESS and not keep_caps:
            kwargs["help"] = text[0].lower() + text[1:]
        return super().add_argument(*args, **kwargs)

    def format_help(self) -> str:
        widest = max((_invocation_width(a) for a in self._actions), default=0)
        column = min(self.MAX_COLUMN, max(self.MIN_COLUMN, widest))
        self.formatter_class = self._formatter(column + 4)
        return super().format_help()

    @classmethod
    def _formatter(cls, column: int) -> Any:
        return lambda prog: ParagraphHelpFormatter(prog, max_help_position=column, width=cls.WIDTH)


class ParagraphHelpFormatter(argparse.HelpFormatter):
    """Wrap each description paragraph on its own instead of merging them."""

    def _format_text(self, text: str) -> str:
        return "\n\n".join(textwrap.fill(p, self._width) for p in text.split("\n\n")) + "\n"

    def _split_lines(self, text: str, width: int) -> list[str]:
        return textwrap.wrap(text, width)


def _paragraphs(text: str, keep: int) -> str:
    text = text.strip().replace("\r\n", "\n")
    text = re.sub(r"(?<!\n)\n(?!\n)", " ", text)
    paragraphs = re.split(r"\n{2,}", text)
    return "\n\n".join(paragraphs[:keep] if keep > 0 else paragraphs)


def _invocation_width(action: argparse.Action) -> int:
    """Width of `-o, --output FILE` as the help column shows it."""
    if not action.option_strings:
        return 0 if action.dest == argparse.SUPPRESS else len(action.dest)
    width = len(", ".join(action.option_strings))
    if action.nargs == 0:
        return width
    metavar = action.metavar or action.dest.upper()
    if isinstance(metavar, tuple):
        metavar = " ".join(metavar)
    return width + len(metavar) + 1


def package_version() -> str:
    """The installed annealwatch version, or "unknown" when running from a source tree."""
    try:
        return f"annealwatch {version('annealwatch')}"
    except PackageNotFoundError:
        return "annealwatch (version unknown)"
