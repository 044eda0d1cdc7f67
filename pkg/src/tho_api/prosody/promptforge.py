"""Construction of prompt/poem datasets.

Two kinds of training pairs are built from a (filtered) corpus:

* text-to-poem: a prompt rendered from a template, with the genre, a topic and some
  keywords of the poem filled in.
* poem-to-poem: the poem turned into running prose, optionally rewritten by a
  paraphrasing text generator.

Template syntax: ``{X}`` is the genre, ``{Y}`` the topic, ``{Z}`` the keywords.
Text between square brackets is dropped when a placeholder inside it renders empty.
Comment lines (``#``) in a template file may rename genres, e.g. ``# luc_bat = lục bát``.
"""
from __future__ import annotations

import logging
import re
import unicodedata
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Optional, Protocol, Union

from .exceptions import EmptyPoem, MissingPlaceholder, PoemTooShort, ProsodyError
from .genres import GenreLabel
from .parallel import ordered_map
from .records import Mode, PoemRecord, PromptRecord
from .scoring import Poem
from .syllable import Syllable, normalize

logger = logging.getLogger(__name__)

PLACEHOLDERS = ("X", "Y", "Z")
KEYWORD_SEPARATOR = ", "

VIETNAMESE_GENRE_NAMES = {
    GenreLabel.LUC_BAT: "lục bát",
    GenreLabel.CHU_4: "bốn chữ",
    GenreLabel.CHU_5: "năm chữ",
    GenreLabel.CHU_7: "bảy chữ",
    GenreLabel.CHU_8: "tám chữ",
}
ENGLISH_GENRE_NAMES = {
    GenreLabel.LUC_BAT: "luc bat",
    GenreLabel.CHU_4: "4 chu",
    GenreLabel.CHU_5: "5 chu",
    GenreLabel.CHU_7: "7 chu",
    GenreLabel.CHU_8: "8 chu",
}

DEFAULT_TEMPLATE_TEXT = "Viết một bài thơ[ {X}][ về {Y}], có chứa các từ khóa {Z}."
DEBUG_TEMPLATE_TEXT = "Write a[ genre {X}] poem[ about {Y}], containing keywords {Z}"

RE_OPTIONAL = re.compile(r"\[([^\[\]]*)\]")
RE_PLACEHOLDER = re.compile(r"\{([XYZ])\}")
RE_GENRE_NAME_COMMENT = re.compile(r"^#\s*(?P<label>[\w ]+?)\s*=\s*(?P<name>.+?)\s*$")


class Paraphraser(Protocol):
    """Any text generator client of the harness."""

    def generate(self, prompt: str, *, record=None) -> str:
        ...


@dataclass(frozen=True)
class PromptSpec:
    """The values to fill into a prompt template."""

    genre: GenreLabel
    topic: str = ""
    keywords: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.keywords:
            raise ValueError("A prompt needs at least one keyword")


@dataclass(frozen=True)
class PromptTemplate:
    """A prompt template with the display names of the genres."""

    text: str
    genre_names: dict = field(default_factory=lambda: dict(VIETNAMESE_GENRE_NAMES))

    def __post_init__(self):
        present = set(RE_PLACEHOLDER.findall(self.text))
        if missing := [name for name in PLACEHOLDERS if name not in present]:
            raise MissingPlaceholder(
                f"Template misses the placeholder(s): {', '.join(f'{{{m}}}' for m in missing)}"
            )

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> PromptTemplate:
        genre_names = dict(VIETNAMESE_GENRE_NAMES)
        lines = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if line.startswith("#"):
                if match := RE_GENRE_NAME_COMMENT.match(line):
                    try:
                        label = GenreLabel.parse(match["label"])
                    except ProsodyError:
                        logger.warning("Ignoring name of unknown genre in %s: %s", path, line)
                    else:
                        genre_names[label] = match["name"]
            elif line.strip():
                lines.append(line.strip())
        return cls(text=" ".join(lines), genre_names=genre_names)

    def render(self, spec: PromptSpec) -> str:
        return self._render(
            {
                "X": self.genre_names.get(spec.genre, ""),
                "Y": spec.topic or "",
                "Z": KEYWORD_SEPARATOR.join(spec.keywords),
            }
        )

    def _render(self, values: dict[str, str]) -> str:
        def _replace_optional(match: re.Match) -> str:
            segment = match.group(1)
            if any(not values[name] for name in RE_PLACEHOLDER.findall(segment)):
                return ""
            return segment

        text = RE_OPTIONAL.sub(_replace_optional, self.text)
        return RE_PLACEHOLDER.sub(lambda match: values[match.group(1)], text)

    @property
    def pattern(self) -> re.Pattern:
        """A regex that matches all prompts rendered by this template."""
        seen = set()

        # The genre can only be one of the known names, which keeps the topic intact.
        genre_names = "|".join(
            re.escape(name) for name in sorted(self.genre_names.values(), key=len, reverse=True)
        )

        def _placeholder(name: str) -> str:
            if name in seen:
                return f"(?P={name})"
            seen.add(name)
            if name == "X":
                return f"(?P<X>{genre_names})"
            return f"(?P<{name}>.*?)"

        def _literal(text: str) -> str:
            parts = []
            position = 0
            for match in RE_PLACEHOLDER.finditer(text):
                parts.append(re.escape(text[position : match.start()]))
                parts.append(_placeholder(match.group(1)))
                position = match.end()
            parts.append(re.escape(text[position:]))
            return "".join(parts)

        parts = []
        position = 0
        for match in RE_OPTIONAL.finditer(self.text):
            parts.append(_literal(self.text[position : match.start()]))
            parts.append(f"(?:{_literal(match.group(1))})?")
            position = match.end()
        parts.append(_literal(self.text[position:]))
        return re.compile("".join(parts), re.DOTALL)

    def mask_genre(self, prompt: str) -> str:
        """Remove the genre from a prompt rendered by this template."""
        match = self.pattern.fullmatch(prompt)
        if match is not None:
            masked = self._render(
                {"X": "", "Y": match.group("Y") or "", "Z": match.group("Z") or ""}
            )
        else:
            logger.warning("Prompt doesn't match the template, removing genre names by text")
            masked = prompt

        # Also catches genre names that are part of a topic or free text.
        return remove_genre_names(masked, self.genre_names.values())


DEFAULT_TEMPLATE = PromptTemplate(text=DEFAULT_TEMPLATE_TEXT)
DEBUG_TEMPLATE = PromptTemplate(text=DEBUG_TEMPLATE_TEXT, genre_names=ENGLISH_GENRE_NAMES)


def remove_genre_names(text: str, names: Iterable[str]) -> str:
    all_names = {*names, *VIETNAMESE_GENRE_NAMES.values(), *ENGLISH_GENRE_NAMES.values()}
    for name in sorted(all_names, key=len, reverse=True):
        text = re.sub(rf"\s*\b{re.escape(name)}\b", "", text, flags=re.IGNORECASE)
    return re.sub(r"\s{2,}", " ", text).strip()


def load_stopwords(path: Union[str, Path]) -> frozenset[str]:
    """Read a stop word file: whitespace separated words, ``#`` starts a comment line."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.startswith("#"):
            words.update(normalize(word) for word in line.split())
    return frozenset(words)


def _get_template(template: Union[PromptTemplate, str, None]) -> PromptTemplate:
    if template is None:
        from .conf import get_prompt_template

        return get_prompt_template()
    elif isinstance(template, str):
        return PromptTemplate(text=template)
    return template


def render_prompt(spec: PromptSpec, template: Union[PromptTemplate, str, None] = None) -> str:
    """Fill the genre, topic and keywords into the template.

    :raises MissingPlaceholder: When the template lacks {X}, {Y} or {Z}.
    """
    return _get_template(template).render(spec)


def mask_genre(prompt: str, template: Union[PromptTemplate, str, None] = None) -> str:
    """Remove the genre from a rendered prompt, for the blind test."""
    return _get_template(template).mask_genre(prompt)


def _is_content_word(syllable: Syllable, stopwords: frozenset[str]) -> bool:
    return syllable.is_well_formed and syllable.normalized not in stopwords


def extract_keywords(
    poem: Poem, k: int, stopwords: Optional[frozenset[str]] = None
) -> list[str]:
    """The ``k`` most frequent content words of the poem.

    Ties are decided by the first occurrence. The words are returned as written
    at their first occurrence, so they can be found verbatim in the poem.

    :raises PoemTooShort: When there are fewer than ``k`` distinct content words.
    """
    if k < 1:
        raise ValueError("k should be at least 1")
    if stopwords is None:
        from .conf import get_stopwords

        stopwords = get_stopwords()

    counts = Counter()
    surface = {}
    for syllable in poem.words:
        if _is_content_word(syllable, stopwords):
            counts[syllable.normalized] += 1
            surface.setdefault(syllable.normalized, syllable.surface)

    if len(counts) < k:
        raise PoemTooShort(f"Poem has {len(counts)} distinct content words, {k} requested")

    # Counter.most_common() keeps insertion order for equal counts.
    return [surface[word] for word, _ in counts.most_common(k)]


def deversify(poem: Poem) -> str:
    """Turn a poem into a single line of prose.
    Line breaks become commas, and a period ends the text. Word order is kept.
    """
    if not poem.lines:
        raise EmptyPoem()
    sentences = (" ".join(syllable.surface for syllable in line) for line in poem.lines)
    return KEYWORD_SEPARATOR.join(sentences) + "."


def keyword_coverage(keywords: Sequence[str], text: str) -> float:
    """The fraction of keywords found in the text. Comparison is on normalized words."""
    if not keywords:
        return 1.0
    words = set()
    for token in text.split():
        try:
            words.add(normalize(token))
        except ProsodyError:
            continue
    found = 0
    for keyword in keywords:
        try:
            parts = [normalize(part) for part in keyword.split()]
        except ProsodyError:
            continue
        if parts and all(part in words for part in parts):
            found += 1
    return found / len(keywords)


@dataclass
class SkippedRecord:
    id: str
    reason: str


def _build_record(
    record: PoemRecord,
    mode: Mode,
    k: int,
    template: PromptTemplate,
    stopwords: frozenset[str],
    paraphraser: Optional[Paraphraser],
) -> Union[PromptRecord, SkippedRecord]:
    if record.genre is GenreLabel.UNKNOWN:
        return SkippedRecord(record.id, "record has no genre")
    if mode is Mode.POEM2POEM and record.genre is not GenreLabel.LUC_BAT:
        return SkippedRecord(record.id, f"poem-to-poem only takes luc_bat, not {record.genre}")

    try:
        poem = Poem.from_text(record.text, record.genre)
        if mode is Mode.TEXT2POEM:
            keywords = extract_keywords(poem, k, stopwords)
            topic = record.title or keywords[0]
            prompt = template.render(PromptSpec(record.genre, topic, tuple(keywords)))
        else:
            keywords = []
            topic = record.title
            prompt = deversify(poem)
            if paraphraser is not None:
                prompt = paraphraser.generate(prompt, record=record).strip()
    except ProsodyError as e:
        return SkippedRecord(record.id, str(e))

    return PromptRecord(
        id=record.id,
        prompt=prompt,
        # Same composition as the keywords, so they are found verbatim.
        completion=unicodedata.normalize("NFC", record.text),
        genre=record.genre,
        mode=mode,
        keywords=tuple(keywords),
        topic=topic,
    )


class DatasetBuilder:
    """Turn corpus records into prompt records, in input order.

    Records that can't be used are skipped; they are logged and collected in :attr:`skipped`.
    """

    def __init__(
        self,
        records: Iterable[PoemRecord],
        mode: Union[Mode, str] = Mode.TEXT2POEM,
        k: Optional[int] = None,
        template: Union[PromptTemplate, str, None] = None,
        stopwords: Optional[frozenset[str]] = None,
        paraphraser: Optional[Paraphraser] = None,
        jobs: int = 1,
    ):
        from . import conf

        self.records = records
        self.mode = Mode(mode)
        self.k = k if k is not None else conf.get_keyword_count()
        self.template = _get_template(template)
        self.stopwords = stopwords if stopwords is not None else conf.get_stopwords()
        self.paraphraser = paraphraser
        self.jobs = jobs
        self.skipped: list[SkippedRecord] = []

    def __iter__(self) -> Iterator[PromptRecord]:
        func = partial(
            _build_record,
            mode=self.mode,
            k=self.k,
            template=self.template,
            stopwords=self.stopwords,
            paraphraser=self.paraphraser,
        )
        # Threads, as the paraphraser waits on network I/O.
        for result in ordered_map(func, self.records, jobs=self.jobs, executor="thread"):
            if isinstance(result, SkippedRecord):
                logger.warning("Skipping record %s: %s", result.id, result.reason)
                self.skipped.append(result)
            else:
                yield result


def build_dataset(
    records: Iterable[PoemRecord],
    mode: Union[Mode, str] = Mode.TEXT2POEM,
    k: Optional[int] = None,
    template: Union[PromptTemplate, str, None] = None,
    paraphraser: Optional[Paraphraser] = None,
) -> Iterator[PromptRecord]:
    """Build prompt records from a filtered corpus."""
    return iter(DatasetBuilder(records, mode, k=k, template=template, paraphraser=paraphraser))
