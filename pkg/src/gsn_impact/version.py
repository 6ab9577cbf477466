"""Dotted-decimal version numbers with a zero-padded total order.

``Version("2") == Version("2.0")`` and ``Version("1.10") > Version("1.9")``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import zip_longest

from .errors import MalformedVersion

_VERSION_RE = re.compile(r"[0-9]+(?:\.[0-9]+)*")


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True, eq=False)
class Version:
    components: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("a version needs at least one component")
        if any(not isinstance(c, int) or c < 0 for c in self.components):
            raise ValueError(f"version components must be non-negative ints: {self.components!r}")

    @classmethod
    def parse(cls, text: str) -> Version:
        return parse_version(text)

    def __str__(self) -> str:
        return ".".join(str(c) for c in self.components)

    def __repr__(self) -> str:
        return f"Version({str(self)!r})"

    def _key(self) -> tuple[int, ...]:
        # trailing zeros do not change the value
        comps = list(self.components)
        while len(comps) > 1 and comps[-1] == 0:
            comps.pop()
        return tuple(comps)

    def __hash__(self) -> int:
        return hash(self._key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Version):
            return NotImplemented
        return compare(self, other) is Ordering.EQUAL

    def __lt__(self, other: Version) -> bool:
        if not isinstance(other, Version):
            return NotImplemented
        return compare(self, other) is Ordering.LESS

    def __le__(self, other: Version) -> bool:
        if not isinstance(other, Version):
            return NotImplemented
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other: Version) -> bool:
        if not isinstance(other, Version):
            return NotImplemented
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other: Version) -> bool:
        if not isinstance(other, Version):
            return NotImplemented
        return compare(self, other) is not Ordering.LESS


def parse_version(text: str) -> Version:
    """Parse ``"1.10"`` into ``Version((1, 10))``.

    Raises MalformedVersion for empty components, signs, whitespace or any
    non-digit character.
    """
    if not isinstance(text, str) or not _VERSION_RE.fullmatch(text):
        raise MalformedVersion(str(text))
    return Version(tuple(int(part) for part in text.split(".")))


def compare(a: Version, b: Version) -> Ordering:
    for x, y in zip_longest(a.components, b.components, fillvalue=0):
        if x < y:
            return Ordering.LESS
        if x > y:
            return Ordering.GREATER
    return Ordering.EQUAL
