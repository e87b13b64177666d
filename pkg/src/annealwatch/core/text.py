"""Wording helpers for log and CLI messages."""

from __future__ import annotations


def plural(word: str, count: int, with_count: bool = False) -> str:
    """Pluralize `word` for `count` items, optionally prefixed with the count.

    ```python
    plural("call", 1, with_count=True)  # "1 call"
    plural("read", 3, with_count=True)  # "3 reads"
    plural("bias", 2)  # "biases"
    ```
    """
    if count == 1:
        return f"1 {word}" if with_count else word
    form = f"{word}es" if word.endswith("s") else f"{word}s"
    return f"{count} {form}" if with_count else form
