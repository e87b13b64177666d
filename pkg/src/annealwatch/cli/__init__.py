"""Command-line interface: the `annealwatch` console script and its helpers."""

from __future__ import annotations

from .args import ArgParser, ParagraphHelpFormatter, package_version
from .progress import call_progress
