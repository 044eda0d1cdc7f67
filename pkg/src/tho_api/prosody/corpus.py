"""Reading, scoring and filtering of poem corpora.

Corpora are UTF-8 files with one JSON object per line (see :class:`PoemRecord`).
All operations are streaming: records are read, scored and written one by one.
"""
from __future__ import annotations

import logging
import statistics
from collections import Counter, defaultdict
from collections.abc import Iterable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from functools import partial
from pathlib import Path
from typing import IO, Optional, Union

import orjson

from .classifier import LengthSignature, classify
from .exceptions import MalformedRecord, ProsodyError
from .genres import KNOWN_GENRES, GenreLabel, RuleBook
from .parallel import ordered_map
from .records import PoemRecord
from .scoring import Poem, ScoreBreakdown, score
from .serializers import PoemRecordSerializer, load_record
from .syllable import NearRhymeTable

logger = logging.getLogger(__name__)

UNKNOWN_GENRE_FLAG = "unknown_genre"
BUCKET_COUNT = 20  # 0.05 wide
SCORE_CHUNK_SIZE = 100

Source = Union[str, Path, IO[str]]


@contextmanager
def _open(source: Source):
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as stream:
            yield stream
    else:
        yield source


class RecordReader:
    """Iterate over the validated records of a line-delimited file.

    In strict mode, the first malformed line raises :class:`MalformedRecord`.
    Otherwise malformed lines are logged, collected in :attr:`errors`, and skipped.
    Blank lines are ignored.
    """

    serializer_class = PoemRecordSerializer

    def __init__(self, source: Source, strict: bool = True, serializer_class=None):
        self.source = source
        self.strict = strict
        self.errors: list[MalformedRecord] = []
        if serializer_class is not None:
            self.serializer_class = serializer_class

    def __iter__(self):
        seen_ids = set()
        with _open(self.source) as stream:
            for line_number, line in enumerate(stream, start=1):
                if not line.strip():
                    continue

                try:
                    record = self._parse(line, line_number)
                    if record.id in seen_ids:
                        raise MalformedRecord(line_number, f"duplicate id '{record.id}'")
                except MalformedRecord as e:
                    if self.strict:
                        raise
                    logger.warning("Skipping malformed record, %s", e)
                    self.errors.append(e)
                    continue

                seen_ids.add(record.id)
                yield record

    def _parse(self, line: str, line_number: int):
        try:
            data = orjson.loads(line)
        except orjson.JSONDecodeError as e:
            raise MalformedRecord(line_number, f"invalid JSON: {e}") from None
        return load_record(self.serializer_class, data, line_number)


def read_corpus(source: Source, strict: bool = True) -> Iterator[PoemRecord]:
    """Read the poem records of a line-delimited file, in file order.

    :raises FileNotFoundError: When the file doesn't exist.
    :raises MalformedRecord: For invalid lines (in strict mode).
    """
    return iter(RecordReader(source, strict=strict))


def write_records(records: Iterable, stream: IO[str]) -> int:
    """Write records (anything with ``as_dict()``) as line-delimited JSON."""
    count = 0
    for record in records:
        stream.write(orjson.dumps(record.as_dict()).decode() + "\n")
        count += 1
    return count


def score_record(
    record: PoemRecord,
    genre: Union[GenreLabel, str] = "auto",
    *,
    rules: RuleBook,
    near_rhymes: Optional[NearRhymeTable],
    glide_onsets: bool,
    min_fit: float,
) -> PoemRecord:
    """Score a single record. Errors are stored in the record instead of raised."""
    # A rescore replaces the flag of an earlier run.
    flags = tuple(flag for flag in record.flags if flag != UNKNOWN_GENRE_FLAG)
    try:
        poem = Poem.from_text(record.text, glide_onsets=glide_onsets)
        if genre == "auto":
            label = classify(LengthSignature.from_poem(poem), rules, min_fit=min_fit)
        else:
            label = GenreLabel.parse(genre)

        if label is GenreLabel.UNKNOWN:
            return replace(
                record,
                genre=label,
                score=ScoreBreakdown.zero(label, poem.n),
                flags=(*flags, UNKNOWN_GENRE_FLAG),
                error=None,
            )

        return replace(
            record,
            genre=label,
            score=score(poem.with_genre(label), rules, near_rhymes),
            flags=flags,
            error=None,
        )
    except ProsodyError as e:
        logger.warning("Unable to score record %s: %s", record.id, e)
        return replace(record, score=None, error=e.code)


def score_corpus(
    records: Iterable[PoemRecord],
    genre: Union[GenreLabel, str] = "auto",
    jobs: int = 1,
    rules: Optional[RuleBook] = None,
    near_rhymes: Optional[NearRhymeTable] = None,
) -> Iterator[PoemRecord]:
    """Score all records, in input order.

    With ``genre="auto"`` the genre is detected first; records of unknown genre
    get a zero score and the ``unknown_genre`` flag.
    A failing record is passed on with its ``error`` set.
    """
    from . import conf

    if genre != "auto":
        genre = GenreLabel.parse(genre)

    # Resolve all settings here, as the worker processes may not have Django configured.
    func = partial(
        score_record,
        genre=genre,
        rules=rules or conf.get_rulebook(),
        near_rhymes=near_rhymes if near_rhymes is not None else conf.get_near_rhymes(),
        glide_onsets=conf.get_glide_onsets(),
        min_fit=conf.get_min_fit(),
    )
    return ordered_map(
        func, records, jobs=jobs, executor="process", chunksize=SCORE_CHUNK_SIZE
    )


def _bucket(value: float) -> int:
    return min(int(value * BUCKET_COUNT + 1e-9), BUCKET_COUNT - 1)


@dataclass
class FilterStats:
    """Counts of a filter run. Filled while the kept records are consumed."""

    threshold: float
    input: int = 0
    kept: int = 0
    histograms: dict[str, list[int]] = field(default_factory=dict)

    @property
    def rejected(self) -> int:
        return self.input - self.kept

    def add(self, record: PoemRecord, kept: bool):
        self.input += 1
        if kept:
            self.kept += 1
        if record.score is not None:
            histogram = self.histograms.setdefault(record.genre.value, [0] * BUCKET_COUNT)
            histogram[_bucket(record.score.score)] += 1

    def as_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "input": self.input,
            "kept": self.kept,
            "rejected": self.rejected,
            "histograms": self.histograms,
        }


def filter_corpus(
    records: Iterable[PoemRecord], threshold: Optional[float] = None
) -> tuple[Iterator[PoemRecord], FilterStats]:
    """Keep the scored records with a score of at least ``threshold``.

    Records without a score (or with an error) are rejected.
    The statistics are complete once the returned iterator is exhausted.
    """
    if threshold is None:
        from .conf import get_filter_threshold

        threshold = get_filter_threshold()
    if not 0 <= threshold <= 1:
        raise ValueError(f"Threshold {threshold} is not in range [0, 1]")

    stats = FilterStats(threshold=threshold)

    def _filter():
        for record in records:
            keep = record.error is None and record.score is not None and (
                record.score.score >= threshold
            )
            stats.add(record, keep)
            if keep:
                yield record

    return _filter(), stats


@dataclass
class GenreStats:
    count: int = 0
    scored: int = 0
    mean: Optional[float] = None
    median: Optional[float] = None


@dataclass
class CorpusStats:
    """Summary of a corpus: counts and scores per genre."""

    total: int = 0
    genres: dict[str, GenreStats] = field(default_factory=dict)

    @property
    def histogram(self) -> dict[str, int]:
        return {genre: stats.count for genre, stats in self.genres.items()}

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "genres": {
                genre: {
                    "count": stats.count,
                    "scored": stats.scored,
                    "mean": stats.mean,
                    "median": stats.median,
                }
                for genre, stats in self.genres.items()
            },
        }


def corpus_stats(records: Iterable[PoemRecord]) -> CorpusStats:
    """Count records per genre, and calculate the mean/median score per genre."""
    counts = Counter()
    scores = defaultdict(list)
    for record in records:
        counts[record.genre.value] += 1
        if record.score is not None and record.error is None:
            scores[record.genre.value].append(record.score.score)

    # Known genres first, in their usual order.
    order = [genre.value for genre in (*KNOWN_GENRES, GenreLabel.UNKNOWN)]
    result = CorpusStats(total=sum(counts.values()))
    for genre in sorted(counts, key=lambda name: order.index(name)):
        values = scores[genre]
        result.genres[genre] = GenreStats(
            count=counts[genre],
            scored=len(values),
            mean=statistics.fmean(values) if values else None,
            median=statistics.median(values) if values else None,
        )
    return result
