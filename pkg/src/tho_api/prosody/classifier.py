"""Genre detection from the word count of each line.

A poem is reduced to its length signature (e.g. ``"6 8 6 8"``), and the genre
whose expected line lengths fit best is chosen. Only the line lengths are used,
so the classifier also works on generated poems that don't follow the tone or rhyme rules.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .genres import KNOWN_GENRES, GenreLabel, RuleBook
from .scoring import Poem


@dataclass(frozen=True)
class LengthSignature:
    """The word count of each line."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(count < 0 for count in self.counts):
            raise ValueError("Word counts can't be negative")

    @classmethod
    def from_poem(cls, poem: Poem) -> LengthSignature:
        return cls(counts=tuple(poem.deltas))

    @classmethod
    def from_string(cls, value: str) -> LengthSignature:
        """Parse the rendered form, e.g. ``"6 8 6 8"``."""
        try:
            return cls(counts=tuple(int(count) for count in value.split()))
        except ValueError:
            raise ValueError(f"Invalid length signature: {value!r}") from None

    def __str__(self):
        return " ".join(str(count) for count in self.counts)

    def __len__(self):
        return len(self.counts)


def signature(poem: Poem) -> LengthSignature:
    return LengthSignature.from_poem(poem)


def _get_rules(rules: Optional[RuleBook]) -> RuleBook:
    if rules is None:
        from .conf import get_rulebook

        rules = get_rulebook()
    return rules


def fit_scores(sig: LengthSignature, rules: Optional[RuleBook] = None) -> dict[GenreLabel, float]:
    """The fraction of lines matching the expected length, for every genre."""
    if not sig.counts:
        raise ValueError("Can't classify an empty signature")

    rules = _get_rules(rules)
    fits = {}
    for genre in KNOWN_GENRES:
        spec = rules.spec_for(genre)
        matches = sum(
            1 for index, count in enumerate(sig.counts) if count == spec.expected_length(index)
        )
        fits[genre] = matches / len(sig.counts)
    return fits


def best_fit(sig: LengthSignature, rules: Optional[RuleBook] = None) -> tuple[GenreLabel, float]:
    """The best fitting genre, before applying the minimal fit.
    Ties are broken by the order of :data:`~tho_api.prosody.genres.KNOWN_GENRES`.
    """
    fits = fit_scores(sig, rules)
    # max() keeps the first of equal values.
    genre = max(KNOWN_GENRES, key=lambda label: fits[label])
    return genre, fits[genre]


def classify_with_fit(
    sig: LengthSignature, rules: Optional[RuleBook] = None, min_fit: Optional[float] = None
) -> tuple[GenreLabel, float]:
    """The genre with its fit. The genre is ``unknown`` when the fit is below ``min_fit``."""
    if min_fit is None:
        from .conf import get_min_fit

        min_fit = get_min_fit()

    genre, fit = best_fit(sig, rules)
    return (genre if fit >= min_fit else GenreLabel.UNKNOWN), fit


def classify(
    sig: LengthSignature, rules: Optional[RuleBook] = None, min_fit: Optional[float] = None
) -> GenreLabel:
    """Tell the genre of a signature, or ``unknown`` when no genre fits well enough."""
    return classify_with_fit(sig, rules, min_fit)[0]


def classify_poem(poem: Poem, rules: Optional[RuleBook] = None) -> Poem:
    """Return the poem with its detected genre assigned."""
    return poem.with_genre(classify(signature(poem), rules))
