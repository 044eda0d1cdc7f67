import io
import statistics
from dataclasses import replace

import pytest

from tho_api.prosody.corpus import RecordReader, write_records
from tho_api.prosody.exceptions import BackendError, MixedModes
from tho_api.prosody.genres import GenreLabel
from tho_api.prosody.harness.clients import Generator, GeneratorSpec
from tho_api.prosody.harness.evaluation import (
    EMPTY_OUTPUT,
    EvalResult,
    blind_evaluate,
    evaluate,
)
from tho_api.prosody.records import EvalRecord, Mode
from tho_api.prosody.scoring import score_text
from tho_api.prosody.serializers import EvalRecordSerializer


class FlakyGenerator(Generator):
    """Fails on every third record, and answers an empty text on every fifth."""

    def generate(self, prompt, *, record=None):
        number = int(record.id.split("-")[1])
        if number % 3 == 0:
            raise BackendError(502)
        if number % 5 == 0:
            return "  \n"
        return record.completion


class TestEvaluate:
    """Prove the evaluation harness with local generators."""

    def test_replay(self, gold_testset):
        """Replaying the gold completions gives the scores of the test set itself."""
        result = evaluate(gold_testset, GeneratorSpec(kind="replay"))
        expected = statistics.fmean(
            score_text(record.completion, record.genre).score for record in gold_testset
        )
        assert result.failures == 0
        assert len(result.records) == 100
        assert result.mean == pytest.approx(expected, abs=1e-12)
        assert set(result.means) == {
            GenreLabel.LUC_BAT,
            GenreLabel.CHU_4,
            GenreLabel.CHU_5,
            GenreLabel.CHU_7,
            GenreLabel.CHU_8,
        }
        assert [record.id for record in result.records] == [r.id for r in gold_testset]
        assert all(record.genre is record.declared_genre for record in result.records)
        assert result.mode is Mode.TEXT2POEM
        assert not result.blind

    def test_blind(self, gold_testset):
        """The genre is hidden from the prompt, and detected from the generated poem."""
        result = blind_evaluate(gold_testset, GeneratorSpec(kind="replay"), parallelism=1)
        assert result.blind
        for record in result.records:
            assert record.blind
            assert "lục bát" not in record.prompt
            assert "chữ" not in record.prompt
            assert "về mùa thu" in record.prompt
            assert record.genre is record.declared_genre
        # All gold poems have a perfect signature, so blind and normal runs agree.
        normal = evaluate(gold_testset, GeneratorSpec(kind="replay"))
        assert result.mean == pytest.approx(normal.mean, abs=1e-12)
        assert result.means == pytest.approx(normal.means, abs=1e-12)

    def test_stub(self, gold_testset):
        result = evaluate(gold_testset[:5], GeneratorSpec(kind="stub"))
        luc_bat = result.records[0]
        assert luc_bat.score.score == 1.0
        # The canned poem doesn't have the line lengths of the other genres.
        assert result.records[1].score.L == 0.0

    def test_failures(self, gold_testset):
        result = evaluate(gold_testset[:30], FlakyGenerator(GeneratorSpec()), parallelism=4)
        errors = {record.id: record.error for record in result.records if record.failed}
        assert errors["gold-000"] == "backend_error"
        assert errors["gold-005"] == EMPTY_OUTPUT
        assert "gold-001" not in errors
        assert result.failures == len(errors) == 14
        # Failed records don't count for the mean.
        assert len(result.successes) == 16

    def test_mixed_modes(self, gold_testset):
        """Both modes in one test set would mix up the means per mode."""
        testset = [*gold_testset[:2], replace(gold_testset[2], mode=Mode.POEM2POEM)]
        with pytest.raises(MixedModes):
            evaluate(testset, GeneratorSpec(kind="replay"))

    def test_single_mode(self, gold_testset):
        testset = [replace(record, mode=Mode.POEM2POEM) for record in gold_testset[:4]]
        result = evaluate(testset, GeneratorSpec(kind="replay"))
        assert result.mode is Mode.POEM2POEM

    def test_coverage(self, gold_testset):
        result = evaluate(gold_testset[:10], GeneratorSpec(kind="replay"))
        for record in result.records:
            assert record.coverage in (0.0, 1.0)
            assert record.coverage == (1.0 if "ta" in record.generated.split() else 0.0)


class TestEvalResult:
    def test_from_dump(self, gold_testset):
        result = evaluate(gold_testset, GeneratorSpec(kind="replay"))
        stream = io.StringIO()
        write_records(result.records, stream)
        stream.seek(0)

        loaded = EvalResult.from_dump(RecordReader(stream, serializer_class=EvalRecordSerializer))
        assert loaded.records == result.records
        assert loaded.means == result.means
        assert loaded.as_dict() == result.as_dict()

    def test_mixed_dump(self):
        records = [
            EvalRecord(id="1", prompt="p", declared_genre=GenreLabel.LUC_BAT, blind=False),
            EvalRecord(id="2", prompt="p", declared_genre=GenreLabel.LUC_BAT, blind=True),
        ]
        with pytest.raises(ValueError):
            EvalResult.from_dump(records)

    def test_empty(self):
        result = EvalResult.from_dump([])
        assert result.mean is None
        assert result.means == {}
        assert result.as_dict()["records"] == 0
