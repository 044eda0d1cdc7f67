"""Declarative rule tables per genre.

Each genre is described by a :class:`GenreSpec`: the expected word count per line,
the tone checks per line, the rhyme scheme and the orientation rule.
All tables are data; :class:`RuleBook` holds them and can apply overrides
from a YAML file (``THO_GENRE_RULES_FILE``).

The "luc bat" rules are taken literally from the verse form. The tone and rhyme
rules of the other genres are conventions ("nhị tứ lục": words 2, 4 and 6 alternate),
which is why they can be replaced by an override file.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Optional, Union

import yaml
from django.core.exceptions import ImproperlyConfigured

from .exceptions import UnknownGenre
from .syllable import Register, Syllable, ToneClass

logger = logging.getLogger(__name__)

EVEN = ToneClass.EVEN
UNEVEN = ToneClass.UNEVEN

Coordinate = tuple[int, int]  # (0-based line index, 1-based word index)


class GenreLabel(str, Enum):
    LUC_BAT = "luc_bat"
    CHU_4 = "chu_4"
    CHU_5 = "chu_5"
    CHU_7 = "chu_7"
    CHU_8 = "chu_8"
    UNKNOWN = "unknown"

    @property
    def display_name(self) -> str:
        """Column title in reports, e.g. "Luc Bat" or "7 Chu"."""
        if self is GenreLabel.LUC_BAT:
            return "Luc Bat"
        elif self is GenreLabel.UNKNOWN:
            return "Unknown"
        return f"{self.value[4:]} Chu"

    @classmethod
    def parse(cls, value: Union[str, GenreLabel]) -> GenreLabel:
        """Read a label, also accepting the spelled variants ("luc bat", "7 chu")."""
        if isinstance(value, GenreLabel):
            return value
        key = value.strip().lower().replace("-", "_").replace(" ", "_")
        if key[:1].isdigit() and key.endswith("_chu"):
            key = f"chu_{key[:-4]}"
        try:
            return cls(key)
        except ValueError:
            raise UnknownGenre(f"Unknown genre {value!r}") from None

    def __str__(self):
        return self.value


# Ordered by corpus frequency, this order breaks ties in the classifier.
KNOWN_GENRES = (
    GenreLabel.LUC_BAT,
    GenreLabel.CHU_8,
    GenreLabel.CHU_7,
    GenreLabel.CHU_5,
    GenreLabel.CHU_4,
)


class Orientation(str, Enum):
    """Whether the inverted tone pattern ("or vice versa") may be used."""

    PAIR = "pair"  # chosen on the first line of a line pair, applied to both
    LINE = "line"  # chosen per line
    FIXED = "fixed"  # canonical pattern only


@dataclass(frozen=True)
class LinePattern:
    """The tone checks of a single line.

    :param positions: 1-based word index with the required tone class.
    :param accent_pair: Two word indexes that must differ in register.
    :param contrast_pairs: Word index pairs that must differ in tone class.
    """

    positions: tuple[tuple[int, ToneClass], ...] = ()
    accent_pair: Optional[tuple[int, int]] = None
    contrast_pairs: tuple[tuple[int, int], ...] = ()

    @property
    def denominator(self) -> int:
        return (
            len(self.positions)
            + (1 if self.accent_pair is not None else 0)
            + len(self.contrast_pairs)
        )

    @property
    def max_index(self) -> int:
        indexes = [pos for pos, _ in self.positions]
        if self.accent_pair:
            indexes.extend(self.accent_pair)
        for pair in self.contrast_pairs:
            indexes.extend(pair)
        return max(indexes, default=0)

    def matches(self, line: Sequence[Syllable], inverted: bool = False) -> int:
        """Count the satisfied checks. Words beyond the line length never match."""
        size = len(line)
        count = 0
        for pos, tone_class in self.positions:
            required = tone_class.inverted() if inverted else tone_class
            if pos <= size and line[pos - 1].tone_class is required:
                count += 1

        if self.accent_pair is not None:
            first, second = self.accent_pair
            if first <= size and second <= size:
                reg1 = line[first - 1].register
                reg2 = line[second - 1].register
                if (
                    reg1 is not Register.NOT_APPLICABLE
                    and reg2 is not Register.NOT_APPLICABLE
                    and reg1 is not reg2
                ):
                    count += 1

        for first, second in self.contrast_pairs:
            if first <= size and second <= size:
                class1 = line[first - 1].tone_class
                class2 = line[second - 1].tone_class
                if ToneClass.UNDEFINED not in (class1, class2) and class1 is not class2:
                    count += 1

        return count


@dataclass(frozen=True)
class RhymeGroup:
    """The word positions that must rhyme together."""

    positions: tuple[Coordinate, ...]

    @property
    def t(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class RhymeScheme:
    """Rhyme slots per line pair.

    Each slot is a (line offset, word index) relative to the first line of pair ``i``
    (line ``2i``). Slots that fall outside the poem are left out,
    which makes the first "luc bat" group a pair and the later ones triplets.
    """

    slots: tuple[Coordinate, ...]

    def groups(self, n: int) -> list[RhymeGroup]:
        result = []
        for i in range((n + 1) // 2):
            base = 2 * i
            positions = tuple(
                (base + offset, word) for offset, word in self.slots if 0 <= base + offset < n
            )
            if positions:
                result.append(RhymeGroup(positions))
        return result


@dataclass(frozen=True)
class GenreSpec:
    """The complete rule table of a genre."""

    label: GenreLabel
    lengths: tuple[int, ...]
    patterns: tuple[LinePattern, ...]
    rhyme_scheme: RhymeScheme
    orientation: Orientation = Orientation.LINE

    def expected_length(self, line_index: int) -> int:
        return self.lengths[line_index % len(self.lengths)]

    def pattern_for(self, line_index: int) -> LinePattern:
        return self.patterns[line_index % len(self.patterns)]

    def validate(self):
        """Check the table is internally consistent."""
        if not self.lengths or len(self.patterns) != len(self.lengths):
            raise ImproperlyConfigured(
                f"Genre {self.label}: need one tone pattern per entry of lengths"
            )
        for index, pattern in enumerate(self.patterns):
            if not pattern.denominator:
                raise ImproperlyConfigured(f"Genre {self.label}: tone pattern {index} is empty")
            if pattern.max_index > self.lengths[index]:
                raise ImproperlyConfigured(
                    f"Genre {self.label}: tone pattern {index} checks beyond word"
                    f" {self.lengths[index]}"
                )
        # Slots are relative to an even line, so check them for every line of a cycle.
        for base in range(0, 2 * len(self.lengths), 2):
            for offset, word in self.rhyme_scheme.slots:
                if word < 1 or word > self.expected_length(base + offset):
                    raise ImproperlyConfigured(
                        f"Genre {self.label}: rhyme slot ({offset}, {word}) does not exist"
                    )


LUC_BAT_6 = LinePattern(positions=((2, EVEN), (4, UNEVEN), (6, EVEN)))
LUC_BAT_8 = LinePattern(
    positions=((2, EVEN), (4, UNEVEN), (6, EVEN), (8, EVEN)), accent_pair=(6, 8)
)
LONG_LINE = LinePattern(positions=((2, EVEN), (4, UNEVEN), (6, EVEN)))
SHORT_LINE = LinePattern(contrast_pairs=((2, 4),))


def _chu_spec(label: GenreLabel, words: int) -> GenreSpec:
    return GenreSpec(
        label=label,
        lengths=(words,),
        patterns=(LONG_LINE if words >= 6 else SHORT_LINE,),
        rhyme_scheme=RhymeScheme(slots=((0, words), (1, words))),
        orientation=Orientation.LINE,
    )


DEFAULT_SPECS = {
    GenreLabel.LUC_BAT: GenreSpec(
        label=GenreLabel.LUC_BAT,
        lengths=(6, 8),
        patterns=(LUC_BAT_6, LUC_BAT_8),
        rhyme_scheme=RhymeScheme(slots=((-1, 8), (0, 6), (1, 6))),
        orientation=Orientation.PAIR,
    ),
    GenreLabel.CHU_4: _chu_spec(GenreLabel.CHU_4, 4),
    GenreLabel.CHU_5: _chu_spec(GenreLabel.CHU_5, 5),
    GenreLabel.CHU_7: _chu_spec(GenreLabel.CHU_7, 7),
    GenreLabel.CHU_8: _chu_spec(GenreLabel.CHU_8, 8),
}

_OVERRIDE_KEYS = {"lengths", "patterns", "rhyme_slots", "orientation"}
_PATTERN_KEYS = {"positions", "accent_pair", "contrast_pairs"}


@dataclass(frozen=True)
class RuleBook:
    """All genre tables that are in use."""

    specs: dict = field(default_factory=lambda: dict(DEFAULT_SPECS))

    def spec_for(self, genre: Union[GenreLabel, str]) -> GenreSpec:
        label = GenreLabel.parse(genre)
        try:
            return self.specs[label]
        except KeyError:
            raise UnknownGenre(f"No rules for genre {label}") from None

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> RuleBook:
        """Load the default tables, with the overrides of a YAML file applied."""
        with open(path, encoding="utf-8") as stream:
            try:
                data = yaml.safe_load(stream) or {}
            except yaml.YAMLError as e:
                raise ImproperlyConfigured(f"{path}: invalid YAML: {e}") from None
        if not isinstance(data, dict):
            raise ImproperlyConfigured(f"{path}: expected a mapping of genres")
        logger.info("Loading genre rule overrides for %s from %s", ", ".join(data), path)
        return cls.from_overrides(data)

    @classmethod
    def from_overrides(cls, data: dict) -> RuleBook:
        specs = dict(DEFAULT_SPECS)
        for name, override in data.items():
            label = GenreLabel.parse(name)
            if label is GenreLabel.UNKNOWN:
                raise ImproperlyConfigured("The 'unknown' genre can't have rules")
            spec = _apply_override(specs[label], override or {})
            spec.validate()
            specs[label] = spec
        return cls(specs=specs)


def _apply_override(spec: GenreSpec, override: dict) -> GenreSpec:
    if unknown := set(override) - _OVERRIDE_KEYS:
        raise ImproperlyConfigured(
            f"Genre {spec.label}: unknown keys {', '.join(sorted(unknown))}"
        )

    changes = {}
    if "lengths" in override:
        changes["lengths"] = tuple(int(value) for value in override["lengths"])
    if "patterns" in override:
        changes["patterns"] = tuple(_parse_pattern(spec, raw) for raw in override["patterns"])
    if "rhyme_slots" in override:
        changes["rhyme_scheme"] = RhymeScheme(
            slots=tuple((int(offset), int(word)) for offset, word in override["rhyme_slots"])
        )
    if "orientation" in override:
        try:
            changes["orientation"] = Orientation(override["orientation"])
        except ValueError:
            raise ImproperlyConfigured(
                f"Genre {spec.label}: invalid orientation {override['orientation']!r}"
            ) from None
    return replace(spec, **changes)


def _parse_pattern(spec: GenreSpec, raw: dict) -> LinePattern:
    if unknown := set(raw) - _PATTERN_KEYS:
        raise ImproperlyConfigured(
            f"Genre {spec.label}: unknown pattern keys {', '.join(sorted(unknown))}"
        )
    try:
        positions = tuple(
            (int(pos), ToneClass(value)) for pos, value in (raw.get("positions") or {}).items()
        )
    except ValueError as e:
        raise ImproperlyConfigured(f"Genre {spec.label}: {e}") from None

    accent_pair = raw.get("accent_pair")
    return LinePattern(
        positions=positions,
        accent_pair=tuple(int(value) for value in accent_pair) if accent_pair else None,
        contrast_pairs=tuple(
            (int(first), int(second)) for first, second in raw.get("contrast_pairs") or ()
        ),
    )


def _get_rulebook(rules: Optional[RuleBook]) -> RuleBook:
    if rules is not None:
        return rules

    from .conf import get_rulebook

    return get_rulebook()


def spec_for(genre: Union[GenreLabel, str], rules: Optional[RuleBook] = None) -> GenreSpec:
    """Return the rule table of a genre.

    :raises UnknownGenre: For the "unknown" label or an unparsable name.
    """
    return _get_rulebook(rules).spec_for(genre)


def expected_length(
    genre: Union[GenreLabel, str], line_index: int, rules: Optional[RuleBook] = None
) -> int:
    """Tell the expected word count of a line (0-based index)."""
    return spec_for(genre, rules).expected_length(line_index)


def rhyme_groups(
    genre: Union[GenreLabel, str], n: int, rules: Optional[RuleBook] = None
) -> list[RhymeGroup]:
    """Give the rhyme groups of a poem with ``n`` lines.
    Positions on lines that don't exist are left out, reducing the group's ``t``.
    """
    if n < 1:
        raise ValueError("A poem has at least one line")
    return spec_for(genre, rules).rhyme_scheme.groups(n)
