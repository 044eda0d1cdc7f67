"""Evaluation of a text generator on a test set.

Each prompt of the test set is sent to the generator, and the generated poem is scored.
In the normal run the poem is scored under the genre the prompt asked for.
In the blind run the genre is removed from the prompt first, and the genre
of the generated poem is detected by the classifier before scoring.
"""
from __future__ import annotations

import logging
import statistics
from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Optional, Union

from ..classifier import LengthSignature, classify
from ..corpus import UNKNOWN_GENRE_FLAG
from ..exceptions import MixedModes, ProsodyError
from ..genres import GenreLabel, RuleBook
from ..parallel import ordered_map
from ..promptforge import PromptTemplate, keyword_coverage, mask_genre
from ..records import EvalRecord, Mode, PromptRecord
from ..scoring import Poem, ScoreBreakdown, score
from ..syllable import NearRhymeTable
from .clients import Generator, GeneratorSpec, make_generator

logger = logging.getLogger(__name__)

EMPTY_OUTPUT = "empty_output"


@dataclass
class EvalResult:
    """All records of an evaluation run, with the aggregated scores."""

    records: list[EvalRecord] = field(default_factory=list)
    mode: Mode = Mode.TEXT2POEM
    blind: bool = False

    @classmethod
    def from_dump(cls, records: Iterable[EvalRecord]) -> EvalResult:
        """Rebuild the result from the per-record dump of an earlier run."""
        records = list(records)
        modes = {record.mode for record in records}
        blinds = {record.blind for record in records}
        if len(modes) > 1 or len(blinds) > 1:
            raise ValueError("Dump mixes records of different evaluation runs")
        return cls(
            records=records,
            mode=modes.pop() if modes else Mode.TEXT2POEM,
            blind=blinds.pop() if blinds else False,
        )

    @property
    def successes(self) -> list[EvalRecord]:
        return [record for record in self.records if not record.failed]

    @property
    def failures(self) -> int:
        return sum(1 for record in self.records if record.failed)

    @property
    def means(self) -> dict[GenreLabel, float]:
        """Mean score per (scored) genre, over the successful records."""
        scores = defaultdict(list)
        for record in self.successes:
            scores[record.genre].append(record.score.score)
        return {genre: statistics.fmean(values) for genre, values in scores.items()}

    @property
    def mean(self) -> Optional[float]:
        """Mean score over all successful records."""
        values = [record.score.score for record in self.successes]
        return statistics.fmean(values) if values else None

    @property
    def mean_coverage(self) -> Optional[float]:
        values = [record.coverage for record in self.successes if record.coverage is not None]
        return statistics.fmean(values) if values else None

    def as_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "blind": self.blind,
            "records": len(self.records),
            "failures": self.failures,
            "mean": self.mean,
            "means": {genre.value: value for genre, value in self.means.items()},
            "coverage": self.mean_coverage,
        }


def evaluate_record(
    record: PromptRecord,
    generator: Generator,
    *,
    blind: bool,
    template: Optional[PromptTemplate],
    rules: RuleBook,
    near_rhymes: Optional[NearRhymeTable],
    min_fit: float,
) -> EvalRecord:
    """Generate and score a single test record. Errors are stored in the result."""
    prompt = record.prompt
    if blind and record.mode is Mode.TEXT2POEM:
        prompt = mask_genre(prompt, template)

    result = EvalRecord(
        id=record.id,
        prompt=prompt,
        declared_genre=record.genre,
        mode=record.mode,
        keywords=record.keywords,
        blind=blind,
    )

    try:
        generated = generator.generate(prompt, record=record)
    except ProsodyError as e:
        logger.warning("Generation failed for record %s: %s", record.id, e)
        return replace(result, error=e.code)

    if not generated or not generated.strip():
        logger.warning("Generator returned an empty text for record %s", record.id)
        return replace(result, generated=generated, error=EMPTY_OUTPUT)

    try:
        poem = Poem.from_text(generated)
        if blind:
            genre = classify(LengthSignature.from_poem(poem), rules, min_fit=min_fit)
        else:
            genre = record.genre

        flags = ()
        if genre is GenreLabel.UNKNOWN:
            breakdown = ScoreBreakdown.zero(genre, poem.n)
            flags = (UNKNOWN_GENRE_FLAG,)
        else:
            breakdown = score(poem.with_genre(genre), rules, near_rhymes)
    except ProsodyError as e:
        logger.warning("Unable to score the generated text of record %s: %s", record.id, e)
        return replace(result, generated=generated, error=e.code)

    return replace(
        result,
        generated=generated,
        genre=genre,
        score=breakdown,
        coverage=keyword_coverage(record.keywords, generated),
        flags=flags,
    )


def evaluate(
    testset: Iterable[PromptRecord],
    spec: Union[GeneratorSpec, Generator],
    *,
    blind: bool = False,
    parallelism: Optional[int] = None,
    template: Optional[PromptTemplate] = None,
    rules: Optional[RuleBook] = None,
    near_rhymes: Optional[NearRhymeTable] = None,
) -> EvalResult:
    """Run all prompts of the test set through the generator, and score the outputs.

    Requests run concurrently (``parallelism``, default ``THO_GENERATOR_PARALLELISM``),
    but the records keep the order of the test set.
    Failed records are kept in the result; they are excluded from the means.

    :raises MixedModes: When the test set holds records of both generation modes.
    """
    from .. import conf

    testset = list(testset)
    modes = {record.mode for record in testset}
    if len(modes) > 1:
        raise MixedModes(
            "Test set mixes text2poem and poem2poem records, evaluate them separately"
        )

    generator = spec if isinstance(spec, Generator) else make_generator(spec)
    if parallelism is None:
        parallelism = int(conf.get_setting("THO_GENERATOR_PARALLELISM"))

    func = partial(
        evaluate_record,
        generator=generator,
        blind=blind,
        template=template or conf.get_prompt_template(),
        rules=rules or conf.get_rulebook(),
        near_rhymes=near_rhymes if near_rhymes is not None else conf.get_near_rhymes(),
        min_fit=conf.get_min_fit(),
    )

    records = list(ordered_map(func, testset, jobs=parallelism, executor="thread"))
    result = EvalResult(
        records=records,
        mode=modes.pop() if modes else Mode.TEXT2POEM,
        blind=blind,
    )
    logger.info(
        "Evaluated %d records (%d failed), mean score %s",
        len(records),
        result.failures,
        f"{result.mean:.3f}" if result.mean is not None else "-",
    )
    return result


def blind_evaluate(
    testset: Iterable[PromptRecord], spec: Union[GeneratorSpec, Generator], **kwargs
) -> EvalResult:
    """Evaluate with the genre masked from the prompts, detecting the genre of the output."""
    return evaluate(testset, spec, blind=True, **kwargs)
