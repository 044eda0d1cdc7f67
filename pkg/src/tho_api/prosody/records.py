"""The records that flow through the line-delimited files.

These are plain immutable objects. Reading them from JSON is done by the
serializers in :mod:`tho_api.prosody.serializers`, which validate the input.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .genres import GenreLabel
from .scoring import ScoreBreakdown


class Mode(str, Enum):
    """The two generation pipelines."""

    TEXT2POEM = "text2poem"
    POEM2POEM = "poem2poem"

    @property
    def display_name(self) -> str:
        return "text-to-poem" if self is Mode.TEXT2POEM else "poem-to-poem"

    def __str__(self):
        return self.value


def _drop_empty(data: dict) -> dict:
    return {key: value for key, value in data.items() if value is not None and value != []}


@dataclass(frozen=True)
class PoemRecord:
    """A poem in a corpus file."""

    id: str
    text: str
    genre: GenreLabel = GenreLabel.UNKNOWN
    title: Optional[str] = None
    score: Optional[ScoreBreakdown] = None
    flags: tuple[str, ...] = ()
    error: Optional[str] = None

    def as_dict(self) -> dict:
        return _drop_empty(
            {
                "id": self.id,
                "text": self.text,
                "genre": self.genre.value,
                "title": self.title,
                "score": self.score.as_dict() if self.score is not None else None,
                "flags": list(self.flags),
                "error": self.error,
            }
        )


@dataclass(frozen=True)
class PromptRecord:
    """A prompt with the poem that answers it."""

    id: str
    prompt: str
    completion: str
    genre: GenreLabel
    mode: Mode
    keywords: tuple[str, ...] = ()
    topic: Optional[str] = None

    def as_dict(self) -> dict:
        # Also written as a corpus record, so the dataset can be scored and filtered again.
        return _drop_empty(
            {
                "id": self.id,
                "text": self.completion,
                "genre": self.genre.value,
                "prompt": self.prompt,
                "completion": self.completion,
                "mode": self.mode.value,
                "keywords": list(self.keywords),
                "topic": self.topic,
            }
        )


@dataclass(frozen=True)
class EvalRecord:
    """The outcome of one generation in an evaluation run."""

    id: str
    prompt: str
    declared_genre: GenreLabel
    mode: Mode = Mode.TEXT2POEM
    keywords: tuple[str, ...] = ()
    blind: bool = False
    generated: Optional[str] = None
    genre: GenreLabel = GenreLabel.UNKNOWN
    score: Optional[ScoreBreakdown] = None
    coverage: Optional[float] = None
    flags: tuple[str, ...] = field(default=())
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None or self.score is None

    def as_dict(self) -> dict:
        return _drop_empty(
            {
                "id": self.id,
                "prompt": self.prompt,
                "declared_genre": self.declared_genre.value,
                "mode": self.mode.value,
                "keywords": list(self.keywords),
                "blind": self.blind,
                "generated": self.generated,
                "genre": self.genre.value,
                "score": self.score.as_dict() if self.score is not None else None,
                "coverage": self.coverage,
                "flags": list(self.flags),
                "error": self.error,
            }
        )
