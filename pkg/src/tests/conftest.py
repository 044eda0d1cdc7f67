from __future__ import annotations

import random
from pathlib import Path

import pytest
from rest_framework.test import APIClient

from tho_api.prosody import conf
from tho_api.prosody.corpus import write_records
from tho_api.prosody.genres import GenreLabel
from tho_api.prosody.promptforge import DEFAULT_TEMPLATE, PromptSpec, render_prompt
from tho_api.prosody.records import Mode, PromptRecord
from tho_api.prosody.syllable import NearRhymeTable
from tests.utils import make_records, poem_lines

HERE = Path(__file__).parent
FILES = HERE / "files"


@pytest.fixture(autouse=True)
def _clear_prosody_caches():
    """Loaded tables are cached per process; start every test with the settings as they are."""
    conf.clear_caches()
    yield
    conf.clear_caches()


@pytest.fixture()
def api_client() -> APIClient:
    """Return a client that has unhindered access to the API views"""
    return APIClient()


@pytest.fixture()
def files_dir() -> Path:
    return FILES


@pytest.fixture()
def kieu_text() -> str:
    """The opening couplet of Truyện Kiều, a flawless "luc bat" couplet."""
    return FILES.joinpath("kieu.txt").read_text(encoding="utf-8")


@pytest.fixture()
def kieu_opening_text() -> str:
    """The first eight lines of Truyện Kiều."""
    return FILES.joinpath("kieu_opening.txt").read_text(encoding="utf-8")


@pytest.fixture()
def near_rhymes() -> NearRhymeTable:
    return NearRhymeTable.from_file(conf.DATA_DIR / "near_rhymes.txt")


@pytest.fixture()
def mixed_records():
    """1000 "luc bat" poems: 700 flawless, 300 without any rhyme."""
    return make_records(seed=42, perfect=700, broken=300)


@pytest.fixture()
def corpus_file(tmp_path, mixed_records) -> Path:
    path = tmp_path / "corpus.jsonl"
    with open(path, "w", encoding="utf-8") as stream:
        write_records(mixed_records, stream)
    return path


@pytest.fixture()
def gold_testset() -> list[PromptRecord]:
    """100 prompts with flawless gold completions, 20 per genre."""
    rng = random.Random(7)
    records = []
    genres = [
        GenreLabel.LUC_BAT,
        GenreLabel.CHU_4,
        GenreLabel.CHU_5,
        GenreLabel.CHU_7,
        GenreLabel.CHU_8,
    ]
    for index in range(100):
        genre = genres[index % len(genres)]
        completion = "\n".join(poem_lines(rng, genre, 4))
        records.append(
            PromptRecord(
                id=f"gold-{index:03d}",
                prompt=render_prompt(PromptSpec(genre, "mùa thu", ("ta",)), DEFAULT_TEMPLATE),
                completion=completion,
                genre=genre,
                mode=Mode.TEXT2POEM,
                keywords=("ta",),
                topic="mùa thu",
            )
        )
    return records

