import io

import orjson
import pytest

from tho_api.prosody.corpus import (
    UNKNOWN_GENRE_FLAG,
    RecordReader,
    corpus_stats,
    filter_corpus,
    read_corpus,
    score_corpus,
    write_records,
)
from tho_api.prosody.exceptions import MalformedRecord
from tho_api.prosody.genres import GenreLabel
from tho_api.prosody.records import PoemRecord
from tho_api.prosody.scoring import ScoreBreakdown


def _jsonl(*lines) -> io.StringIO:
    return io.StringIO(
        "".join(
            (line if isinstance(line, str) else orjson.dumps(line).decode()) + "\n"
            for line in lines
        )
    )


class TestRecordReader:
    """Prove how corpus files are read."""

    def test_read(self, kieu_text):
        stream = _jsonl(
            {"id": "kieu", "text": kieu_text, "genre": "luc bat", "title": "Truyện Kiều"},
            "",
            {"id": "two", "text": "ta xa"},
        )
        records = list(read_corpus(stream))
        assert [record.id for record in records] == ["kieu", "two"]
        assert records[0].genre is GenreLabel.LUC_BAT
        assert records[0].title == "Truyện Kiều"
        assert records[1].genre is GenreLabel.UNKNOWN

    def test_strict(self):
        stream = _jsonl({"id": "one", "text": "ta"}, "{not json")
        with pytest.raises(MalformedRecord, match="line 2"):
            list(read_corpus(stream))

    def test_lenient(self):
        stream = _jsonl(
            {"id": "one", "text": "ta"},
            "{not json",
            '["a list"]',
            {"id": "no-text"},
            {"id": "one", "text": "again"},
            {"id": "bad-genre", "text": "ta", "genre": "haiku"},
            {"id": "two", "text": "xa"},
        )
        reader = RecordReader(stream, strict=False)
        assert [record.id for record in reader] == ["one", "two"]
        assert [error.line for error in reader.errors] == [2, 3, 4, 5, 6]
        assert "duplicate id 'one'" in str(reader.errors[3])
        assert "text" in str(reader.errors[2])

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            list(read_corpus(tmp_path / "missing.jsonl"))

    def test_write_read(self, tmp_path, mixed_records):
        path = tmp_path / "out.jsonl"
        with open(path, "w", encoding="utf-8") as stream:
            assert write_records(mixed_records[:10], stream) == 10
        assert list(read_corpus(path)) == mixed_records[:10]


class TestScoreCorpus:
    def test_auto_genre(self, kieu_text):
        records = [
            PoemRecord(id="kieu", text=kieu_text),
            PoemRecord(id="odd", text="một hai ba\nbốn năm sáu bảy tám chín mười"),
        ]
        kieu, odd = score_corpus(records)
        assert kieu.genre is GenreLabel.LUC_BAT
        assert kieu.score.score == 1.0
        assert odd.genre is GenreLabel.UNKNOWN
        assert odd.score == ScoreBreakdown.zero(GenreLabel.UNKNOWN, 2)
        assert odd.flags == (UNKNOWN_GENRE_FLAG,)

    def test_fixed_genre(self, kieu_text):
        (record,) = score_corpus([PoemRecord(id="kieu", text=kieu_text)], genre="7 chu")
        assert record.genre is GenreLabel.CHU_7
        assert record.score.L == 0.0
        assert not record.flags

    def test_rescore_drops_flag(self, kieu_text):
        record = PoemRecord(id="kieu", text=kieu_text, flags=("checked", UNKNOWN_GENRE_FLAG))
        (record,) = score_corpus([record])
        assert record.flags == ("checked",)

    def test_error(self):
        (record,) = score_corpus([PoemRecord(id="blank", text=" ... ")])
        assert record.score is None
        assert record.error == "empty_poem"

    def test_order_with_workers(self, mixed_records):
        records = mixed_records[:40]
        scored = list(score_corpus(records, jobs=2))
        assert [record.id for record in scored] == [record.id for record in records]
        assert scored == list(score_corpus(records, jobs=1))


class TestFilterCorpus:
    """Prove that only well-formed poems are kept."""

    def test_filter(self, mixed_records):
        kept, stats = filter_corpus(score_corpus(mixed_records), threshold=0.9)
        kept = list(kept)
        assert len(kept) == 700
        assert all(record.score.score >= 0.9 for record in kept)
        assert (stats.input, stats.kept, stats.rejected) == (1000, 700, 300)
        assert sum(stats.histograms["luc_bat"]) == 1000
        assert stats.histograms["luc_bat"][-1] == 700

    def test_filter_again(self, mixed_records):
        """Filtering the output again keeps everything."""
        kept, _ = filter_corpus(score_corpus(mixed_records), threshold=0.9)
        kept = list(kept)
        again, stats = filter_corpus(score_corpus(kept), threshold=0.9)
        assert list(again) == kept
        assert stats.rejected == 0

    def test_default_threshold(self, settings, mixed_records):
        settings.THO_FILTER_THRESHOLD = 0.0
        kept, stats = filter_corpus(score_corpus(mixed_records[:50]))
        assert len(list(kept)) == 50
        assert stats.threshold == 0.0

    def test_unscored_rejected(self):
        kept, stats = filter_corpus([PoemRecord(id="one", text="ta")], threshold=0.0)
        assert list(kept) == []
        assert stats.rejected == 1

    @pytest.mark.parametrize("threshold", [-0.1, 1.5])
    def test_invalid_threshold(self, threshold):
        with pytest.raises(ValueError):
            filter_corpus([], threshold=threshold)


def test_corpus_stats(mixed_records):
    records = list(score_corpus([*mixed_records, PoemRecord(id="x", text="một hai ba")]))
    stats = corpus_stats(records)
    assert stats.total == 1001
    assert list(stats.genres) == ["luc_bat", "unknown"]
    assert stats.histogram == {"luc_bat": 1000, "unknown": 1}

    luc_bat = stats.genres["luc_bat"]
    assert luc_bat.scored == 1000
    assert luc_bat.median == 1.0
    assert 0.7 < luc_bat.mean < 1.0
    assert stats.as_dict()["genres"]["unknown"]["mean"] == 0.0
