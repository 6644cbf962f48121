"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, field


class AspFoError(Exception):
    """Base class for all library errors."""


class VocabularyError(AspFoError):
    """A symbol is used inconsistently (arity or kind clash)."""


class WellFormednessError(AspFoError):
    """A syntactic object violates a structural invariant."""


class StructureError(AspFoError):
    """A structure is malformed or two structures are incompatible."""


class EvaluationError(AspFoError):
    """Evaluation hit an unbound variable or an uninterpreted symbol."""


class CapExceeded(AspFoError):
    """An enumeration would exceed the configured cap."""

    def __init__(self, what: str, needed: int | None, cap: int):
        self.what = what
        self.needed = needed
        self.cap = cap
        if needed is None:
            msg = f"enumeration cap exceeded while enumerating {what} (cap {cap})"
        else:
            msg = f"enumeration cap exceeded: {what} needs {needed} candidates, cap is {cap}"
        super().__init__(msg)


class InfiniteUniverse(AspFoError):
    """The Herbrand universe is infinite and no depth bound was given."""


class SplittingError(AspFoError):
    """The program has no proper splitting."""


class RenderError(AspFoError):
    """A symbol lacks a template or the input has no reading in the regime."""


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass
class ParseError(AspFoError):
    span: SourceSpan
    message: str
    expected: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        super().__init__(str(self))

    def __str__(self) -> str:
        text = f"{self.span}: {self.message}"
        if self.expected:
            text += " (expected " + ", ".join(self.expected) + ")"
        return text


DEFAULT_CAP = 2**20
