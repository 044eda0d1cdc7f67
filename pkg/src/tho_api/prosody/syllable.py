"""Decomposition of Vietnamese orthographic syllables.

Every word of a poem is split into an onset, a de-toned rhyme key and a tone mark.
The tone mark determines the tone class (even/uneven) and, for even tones,
the register (high/low). These are the primitives of all tone and rhyme checks.

Tone marks are detected on any vowel, so both the "old" (``hòa``) and the
"modern" (``hoà``) diacritic placement produce the same analysis.
The canonical form places the tone in the modern style.
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

from .exceptions import EmptyToken

__all__ = [
    "ToneMark",
    "ToneClass",
    "Register",
    "Syllable",
    "NearRhymeTable",
    "normalize",
    "analyze",
    "rhymes",
    "retone",
    "strip_punctuation",
    "tokenize_line",
]


class ToneClass(Enum):
    EVEN = "even"
    UNEVEN = "uneven"
    UNDEFINED = "undefined"

    def inverted(self) -> ToneClass:
        if self is ToneClass.EVEN:
            return ToneClass.UNEVEN
        elif self is ToneClass.UNEVEN:
            return ToneClass.EVEN
        return self


class Register(Enum):
    HIGH = "high"
    LOW = "low"
    NOT_APPLICABLE = "n/a"


class ToneMark(Enum):
    NGANG = "ngang"
    HUYEN = "huyen"
    SAC = "sac"
    HOI = "hoi"
    NGA = "nga"
    NANG = "nang"
    NONE = "none"

    @property
    def tone_class(self) -> ToneClass:
        if self in (ToneMark.NGANG, ToneMark.HUYEN):
            return ToneClass.EVEN
        elif self is ToneMark.NONE:
            return ToneClass.UNDEFINED
        return ToneClass.UNEVEN

    @property
    def register(self) -> Register:
        if self is ToneMark.NGANG:
            return Register.HIGH
        elif self is ToneMark.HUYEN:
            return Register.LOW
        return Register.NOT_APPLICABLE


# Combining characters after NFD decomposition.
_COMBINING_TONES = {
    "\u0300": ToneMark.HUYEN,  # grave
    "\u0301": ToneMark.SAC,  # acute
    "\u0309": ToneMark.HOI,  # hook above
    "\u0303": ToneMark.NGA,  # tilde
    "\u0323": ToneMark.NANG,  # dot below
}
_TONE_COMBINING = {tone: mark for mark, tone in _COMBINING_TONES.items()}

VOWELS = frozenset("aăâeêioôơuưy")
_QUALITY_VOWELS = frozenset("ăâêôơư")
_GLIDE_NUCLEI = ("oa", "oe", "uy")

# Longest match wins, so the table is ordered by length.
ONSETS = (
    "ngh",
    "ng",
    "gh",
    "gi",
    "kh",
    "th",
    "tr",
    "ch",
    "ph",
    "nh",
    "qu",
    "b",
    "c",
    "d",
    "đ",
    "g",
    "h",
    "k",
    "l",
    "m",
    "n",
    "p",
    "q",
    "r",
    "s",
    "t",
    "v",
    "x",
)
_GLIDE_ONSETS = ("gi", "qu")


@dataclass(frozen=True)
class Syllable:
    """One orthographic word, decomposed.

    The raw token is kept for display, but does not take part in comparisons:
    encoding variants of the same word compare equal.
    """

    raw: str = field(compare=False)
    normalized: str
    onset: str
    rhyme_key: str
    tone: ToneMark

    @property
    def tone_class(self) -> ToneClass:
        return self.tone.tone_class

    @property
    def register(self) -> Register:
        return self.tone.register

    @property
    def is_well_formed(self) -> bool:
        return bool(self.rhyme_key)

    @property
    def surface(self) -> str:
        """The token as written, without the surrounding punctuation."""
        return strip_punctuation(unicodedata.normalize("NFC", self.raw))

    def __str__(self):
        return self.normalized


class NearRhymeTable:
    """Classes of rhyme keys that count as rhyming with each other ("vần thông").

    The file format is plain text: one class per line, members separated by spaces.
    Empty lines and lines starting with ``#`` are ignored.
    """

    def __init__(self, classes: list[list[str]]):
        self._class_of: dict[str, int] = {}
        for index, members in enumerate(classes):
            for member in members:
                self._class_of[_detone(member)] = index

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> NearRhymeTable:
        classes = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                classes.append(line.split())
        return cls(classes)

    def same_class(self, key1: str, key2: str) -> bool:
        class1 = self._class_of.get(key1)
        return class1 is not None and class1 == self._class_of.get(key2)

    def __len__(self):
        return len(set(self._class_of.values()))


def strip_punctuation(token: str) -> str:
    """Remove leading and trailing characters that are not letters, marks or digits."""
    start = 0
    end = len(token)
    while start < end and not _is_word_char(token[start]):
        start += 1
    while end > start and not _is_word_char(token[end - 1]):
        end -= 1
    return token[start:end]


def _is_word_char(char: str) -> bool:
    return unicodedata.category(char)[0] in "LMN"


def _split_tone(text: str) -> tuple[str, Optional[ToneMark]]:
    """Separate the tone mark from the (lowercase) text.
    Returns the de-toned text in NFC form, and the first tone mark found.
    """
    tone = None
    chars = []
    for char in unicodedata.normalize("NFD", text):
        mark = _COMBINING_TONES.get(char)
        if mark is None:
            chars.append(char)
        elif tone is None:
            tone = mark
    return unicodedata.normalize("NFC", "".join(chars)), tone


def _detone(text: str) -> str:
    return _split_tone(text.lower())[0]


def _find_onset(base: str, glide_onsets: bool) -> str:
    for onset in ONSETS:
        if not base.startswith(onset):
            continue
        if onset in _GLIDE_ONSETS:
            # "gi"/"qu" are only an onset when a vowel follows ("gì" is g + i).
            if not glide_onsets or len(base) == 2 or base[2] not in VOWELS:
                continue
        return onset
    return ""


def _tone_position(rhyme: str) -> Optional[int]:
    """Find the vowel that carries the tone mark in the canonical (modern) placement."""
    vowel_indexes = [i for i, char in enumerate(rhyme) if char in VOWELS]
    if not vowel_indexes:
        return None

    # A vowel with a quality diacritic always carries the tone (ươ carries it on ơ).
    marked = [i for i in vowel_indexes if rhyme[i] in _QUALITY_VOWELS]
    if marked:
        return marked[-1]

    first = end = vowel_indexes[0]
    while end + 1 < len(rhyme) and rhyme[end + 1] in VOWELS:
        end += 1

    nucleus = rhyme[first : end + 1]
    if len(nucleus) == 1:
        return first
    elif end + 1 < len(rhyme):
        # Closed syllable: last vowel of the nucleus (hoàng, huỳnh).
        return end
    elif len(nucleus) >= 3:
        return first + 1
    elif nucleus in _GLIDE_NUCLEI:
        return end
    return first


def retone(rhyme_key: str, tone: ToneMark) -> str:
    """Place a tone mark on a de-toned rhyme key, in the canonical position."""
    mark = _TONE_COMBINING.get(tone)
    position = _tone_position(rhyme_key)
    if mark is None or position is None:
        return rhyme_key
    return unicodedata.normalize(
        "NFC", rhyme_key[: position + 1] + mark + rhyme_key[position + 1 :]
    )


def _decompose(token: str, glide_onsets: bool) -> tuple[str, str, str, ToneMark]:
    """Split a token into (canonical, onset, rhyme_key, tone)."""
    stripped = strip_punctuation(unicodedata.normalize("NFC", token.strip()))
    if not stripped:
        raise EmptyToken(f"Token {token!r} is empty after normalization")

    base, tone = _split_tone(stripped.lower())
    if not any(char in VOWELS for char in base):
        return base, base, "", ToneMark.NONE

    tone = tone or ToneMark.NGANG

    # The canonical spelling always treats qu/gi as onsets, so placement is stable
    # regardless of how the onset is reported.
    canonical_onset = _find_onset(base, glide_onsets=True)
    canonical = canonical_onset + retone(base[len(canonical_onset) :], tone)

    onset = canonical_onset if glide_onsets else _find_onset(base, glide_onsets=False)
    return canonical, onset, base[len(onset) :], tone


def normalize(token: str) -> str:
    """Give the canonical form of a token: NFC, lowercase, stripped, tone in modern position.

    :raises EmptyToken: When nothing remains after stripping punctuation.
    """
    return _decompose(token, glide_onsets=True)[0]


@lru_cache(maxsize=200_000)
def analyze(token: str, glide_onsets: bool = True) -> Syllable:
    """Decompose a single word into its onset, rhyme key and tone.

    :param glide_onsets: Treat "qu" and "gi" as onsets (rhyme key of "qua" is "a").
    :raises EmptyToken: When nothing remains after stripping punctuation.
    """
    canonical, onset, rhyme_key, tone = _decompose(token, glide_onsets)
    return Syllable(
        raw=token,
        normalized=canonical,
        onset=onset,
        rhyme_key=rhyme_key,
        tone=tone,
    )


def rhymes(a: Syllable, b: Syllable, near_rhymes: Optional[NearRhymeTable] = None) -> bool:
    """Tell whether two syllables rhyme.

    By default this is exact equality of the de-toned rhyme keys.
    When a near-rhyme table is given, keys of the same class also rhyme.
    Tokens without a vowel never rhyme.
    """
    if not a.rhyme_key or not b.rhyme_key:
        return False
    elif a.rhyme_key == b.rhyme_key:
        return True
    elif near_rhymes is not None:
        return near_rhymes.same_class(a.rhyme_key, b.rhyme_key)
    return False


def tokenize_line(line: str, glide_onsets: bool = True) -> list[Syllable]:
    """Analyze all words of a line. Punctuation-only tokens are dropped."""
    syllables = []
    for token in line.split():
        try:
            syllables.append(analyze(token, glide_onsets))
        except EmptyToken:
            continue
    return syllables
