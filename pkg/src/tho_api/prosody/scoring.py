"""The prosody score of a poem.

The score combines three components, each in the range [0, 1]:

* ``L`` - the fraction of lines with the expected word count,
* ``T`` - the fraction of satisfied tone checks,
* ``R`` - how well the rhyme groups rhyme.

These are weighted as ``0.1 L + 0.3 T + 0.6 R``, rhyme being the most important.
When a poem has an odd number of lines, all components are divided by ``n + 1``,
so an unfinished line pair is penalized.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Union

from .exceptions import EmptyPoem, UnknownGenre
from .genres import GenreLabel, GenreSpec, LinePattern, Orientation, RuleBook, spec_for
from .syllable import NearRhymeTable, Syllable, rhymes, tokenize_line

logger = logging.getLogger(__name__)

LENGTH_WEIGHT = 0.1
TONE_WEIGHT = 0.3
RHYME_WEIGHT = 0.6


def combine(L: float, T: float, R: float) -> float:  # noqa: N803
    """Weighted combination of the three components."""
    return LENGTH_WEIGHT * L + TONE_WEIGHT * T + RHYME_WEIGHT * R


@dataclass(frozen=True)
class Poem:
    """An analyzed poem: the non-blank lines, each as a sequence of syllables."""

    lines: tuple[tuple[Syllable, ...], ...]
    genre: GenreLabel = GenreLabel.UNKNOWN
    raw_lines: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.lines:
            raise EmptyPoem()

    @classmethod
    def from_text(
        cls,
        text: str,
        genre: Union[GenreLabel, str] = GenreLabel.UNKNOWN,
        glide_onsets: Optional[bool] = None,
    ) -> Poem:
        """Analyze a poem text with newline separated lines.
        Lines without any word are removed.

        :raises EmptyPoem: When no line remains.
        """
        if glide_onsets is None:
            from .conf import get_glide_onsets

            glide_onsets = get_glide_onsets()

        lines = []
        raw_lines = []
        for raw_line in text.splitlines():
            syllables = tokenize_line(raw_line, glide_onsets)
            if syllables:
                lines.append(tuple(syllables))
                raw_lines.append(raw_line.strip())

        return cls(lines=tuple(lines), genre=GenreLabel.parse(genre), raw_lines=tuple(raw_lines))

    def with_genre(self, genre: Union[GenreLabel, str]) -> Poem:
        return Poem(lines=self.lines, genre=GenreLabel.parse(genre), raw_lines=self.raw_lines)

    @property
    def n(self) -> int:
        return len(self.lines)

    @property
    def n_effective(self) -> int:
        """The line count, increased by one when odd."""
        return self.n + (self.n % 2)

    @property
    def deltas(self) -> list[int]:
        """The word count of each line."""
        return [len(line) for line in self.lines]

    @property
    def words(self) -> list[Syllable]:
        return [syllable for line in self.lines for syllable in line]

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class ScoreBreakdown:
    """The score components of a single poem."""

    L: float  # noqa: N815
    T: float  # noqa: N815
    R: float  # noqa: N815
    score: float
    genre: GenreLabel
    n: int
    n_effective: int

    @classmethod
    def zero(cls, genre: GenreLabel, n: int = 0) -> ScoreBreakdown:
        return cls(L=0.0, T=0.0, R=0.0, score=0.0, genre=genre, n=n, n_effective=n + (n % 2))

    @classmethod
    def from_dict(cls, data: dict) -> ScoreBreakdown:
        n = int(data.get("n", 0))
        return cls(
            L=float(data["L"]),
            T=float(data["T"]),
            R=float(data["R"]),
            score=float(data["score"]),
            genre=GenreLabel.parse(data.get("genre", GenreLabel.UNKNOWN)),
            n=n,
            n_effective=n + (n % 2),
        )

    def as_dict(self) -> dict:
        return {
            "L": self.L,
            "T": self.T,
            "R": self.R,
            "score": self.score,
            "genre": self.genre.value,
            "n": self.n,
        }


def _resolve(poem: Poem, rules: Optional[RuleBook]) -> GenreSpec:
    if poem.genre is GenreLabel.UNKNOWN:
        raise UnknownGenre("Poem has no genre to score against")
    return spec_for(poem.genre, rules)


def length_score(poem: Poem, rules: Optional[RuleBook] = None) -> float:
    """Fraction of lines having the expected word count (``L``)."""
    spec = _resolve(poem, rules)
    matches = sum(
        1 for index, line in enumerate(poem.lines) if len(line) == spec.expected_length(index)
    )
    return matches / poem.n_effective


def _line_tone_value(pattern: LinePattern, line: Sequence[Syllable], inverted: bool) -> float:
    return pattern.matches(line, inverted=inverted) / pattern.denominator


def tone_score(poem: Poem, rules: Optional[RuleBook] = None) -> float:
    """Fraction of satisfied tone checks (``T``).

    The inverted pattern is allowed depending on the genre orientation:
    per line pair (decided by the first line of the pair), per line, or never.
    Ties keep the canonical pattern.
    """
    spec = _resolve(poem, rules)
    total = 0.0

    if spec.orientation is Orientation.PAIR:
        for start in range(0, poem.n, 2):
            first = spec.pattern_for(start)
            inverted = first.matches(poem.lines[start], inverted=True) > first.matches(
                poem.lines[start]
            )
            for index in range(start, min(start + 2, poem.n)):
                total += _line_tone_value(spec.pattern_for(index), poem.lines[index], inverted)
    else:
        for index, line in enumerate(poem.lines):
            pattern = spec.pattern_for(index)
            value = _line_tone_value(pattern, line, inverted=False)
            if spec.orientation is Orientation.LINE:
                value = max(value, _line_tone_value(pattern, line, inverted=True))
            total += value

    return total / poem.n_effective


def largest_rhyming_subset(
    words: Sequence[Syllable], near_rhymes: Optional[NearRhymeTable] = None
) -> int:
    """Size of the largest subset of words that all rhyme with each other.
    Groups are tiny (2 or 3 words), so all subsets are tried, largest first.
    """
    for size in range(len(words), 1, -1):
        for subset in combinations(words, size):
            if all(rhymes(a, b, near_rhymes) for a, b in combinations(subset, 2)):
                return size
    return min(len(words), 1)


def rhyme_score(
    poem: Poem,
    rules: Optional[RuleBook] = None,
    near_rhymes: Optional[NearRhymeTable] = None,
) -> float:
    """How well the rhyme groups rhyme (``R``).

    Each group scores the number of rhyming words divided by the ``t`` available words,
    with a floor of ``1/t``. Positions beyond a short line are not available.
    """
    spec = _resolve(poem, rules)
    total = 0.0
    for group in spec.rhyme_scheme.groups(poem.n):
        available = [
            poem.lines[line_index][word - 1]
            for line_index, word in group.positions
            if word <= len(poem.lines[line_index])
        ]
        if available:
            total += max(largest_rhyming_subset(available, near_rhymes), 1) / len(available)

    return 2 * total / poem.n_effective


def score(
    poem: Poem,
    rules: Optional[RuleBook] = None,
    near_rhymes: Optional[NearRhymeTable] = None,
) -> ScoreBreakdown:
    """Calculate all score components of a poem under its genre.

    :raises UnknownGenre: When the poem has no (known) genre.
    """
    if rules is None:
        from .conf import get_rulebook

        rules = get_rulebook()
    if near_rhymes is None:
        from .conf import get_near_rhymes

        near_rhymes = get_near_rhymes()

    L = length_score(poem, rules)  # noqa: N806
    T = tone_score(poem, rules)  # noqa: N806
    R = rhyme_score(poem, rules, near_rhymes)  # noqa: N806
    return ScoreBreakdown(
        L=L,
        T=T,
        R=R,
        score=combine(L, T, R),
        genre=poem.genre,
        n=poem.n,
        n_effective=poem.n_effective,
    )


def score_text(
    text: str,
    genre: Union[GenreLabel, str],
    rules: Optional[RuleBook] = None,
    near_rhymes: Optional[NearRhymeTable] = None,
) -> ScoreBreakdown:
    """Shortcut to analyze and score a poem text."""
    return score(Poem.from_text(text, genre), rules, near_rhymes)
