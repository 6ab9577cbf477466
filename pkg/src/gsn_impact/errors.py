"""Exception types shared by the model, registry, engine and parsers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceLocation:
    """A 1-based position inside an input document."""

    file: str
    line: int
    column: int

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError(f"invalid source location {self.line}:{self.column}")

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class GsnImpactError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message: str, location: SourceLocation | None = None):
        super().__init__(message)
        self.message = message
        self.location = location

    def __str__(self) -> str:
        if self.location is None:
            return self.message
        return f"{self.location}: {self.message}"


class MalformedVersion(GsnImpactError, ValueError):
    def __init__(self, text: str, location: SourceLocation | None = None):
        super().__init__(f"malformed version {text!r}", location)
        self.text = text


class UnknownElement(GsnImpactError, KeyError):
    def __init__(self, element_id: str):
        super().__init__(f"unknown element {element_id!r}")
        self.element_id = element_id

    # KeyError quotes its argument; keep the plain message
    __str__ = GsnImpactError.__str__


class ProvenanceCycle(GsnImpactError):
    def __init__(self, members: tuple[str, ...]):
        super().__init__("provenance cycle through " + " -> ".join(members))
        self.members = members


class ParseError(GsnImpactError):
    """Malformed input document. Always carries a location when raised by a parser."""


class DuplicateId(ParseError):
    pass


class UnknownKind(ParseError):
    pass


class MissingSolutionAnnotation(ParseError):
    pass


class UnexpectedSolutionAnnotation(ParseError):
    pass
