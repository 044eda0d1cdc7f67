"""Builders for synthetic poems, used by various tests.

The words are chosen by their tone and rhyme, so the generated poems
either follow all rules of their genre, or break exactly the rules that are asked for.
"""
import random
from typing import Optional

from tho_api.prosody.genres import GenreLabel
from tho_api.prosody.records import PoemRecord

# Even (bằng) words per rhyme key, by register.
HIGH_BY_KEY = {
    "a": ["ta", "xa", "ca"],
    "ong": ["trong", "song"],
    "inh": ["xinh", "minh"],
    "anh": ["xanh", "canh"],
    "ơ": ["thơ", "mơ"],
}
LOW_BY_KEY = {
    "a": ["là", "nhà"],
    "ong": ["lòng", "dòng"],
    "inh": ["tình", "hình"],
    "anh": ["thành", "lành"],
    "ơ": ["chờ", "bờ"],
}
RHYME_KEYS = list(HIGH_BY_KEY)

EVEN = ["ta", "xa", "trong", "xinh", "xanh", "thơ", "lòng", "tình", "chờ", "mây", "sông"]
UNEVEN = ["má", "lá", "nhớ", "bóng", "sóng", "mắt", "núi", "nước"]
FILLER = EVEN + UNEVEN

# Even words with pairwise different rhyme keys, for breaking all rhymes.
DISTINCT_KEYS = ["ta", "lòng", "xinh", "thành", "thơ", "sông", "buồn", "mưa", "đêm"]

CHU_WORDS = {
    GenreLabel.CHU_4: 4,
    GenreLabel.CHU_5: 5,
    GenreLabel.CHU_7: 7,
    GenreLabel.CHU_8: 8,
}


def _rhyme_word(rng: random.Random, key: str, high: Optional[bool] = None) -> str:
    if high is None:
        high = rng.random() < 0.5
    return rng.choice(HIGH_BY_KEY[key] if high else LOW_BY_KEY[key])


def _toned_line(rng: random.Random, size: int) -> list[str]:
    """Line with even words at 2 and 6 and an uneven word at 4 (or 2/4 contrast when short)."""
    words = [rng.choice(FILLER) for _ in range(size)]
    if size < 6:
        words[1] = rng.choice(EVEN)
        words[3] = rng.choice(UNEVEN)
    else:
        words[1] = rng.choice(EVEN)
        words[3] = rng.choice(UNEVEN)
        words[5] = rng.choice(EVEN)
    return words


def luc_bat_lines(rng: random.Random, pairs: int, break_rhymes: bool = False) -> list[str]:
    """A "luc bat" poem of ``pairs`` couplets that satisfies all tone rules.
    Unless ``break_rhymes`` is set, all rhyme groups rhyme completely.
    """
    keys = [rng.choice(RHYME_KEYS) for _ in range(pairs + 1)]
    distinct = iter(DISTINCT_KEYS * (pairs + 1))
    lines = []
    for i in range(pairs):
        six = _toned_line(rng, 6)
        eight = _toned_line(rng, 8)
        high = rng.random() < 0.5
        if break_rhymes:
            six[5] = next(distinct)
            eight[5] = next(distinct)
            eight[7] = next(distinct)
        else:
            six[5] = _rhyme_word(rng, keys[i])
            eight[5] = _rhyme_word(rng, keys[i], high)
            eight[7] = _rhyme_word(rng, keys[i + 1], not high)
        lines.extend([" ".join(six), " ".join(eight)])
    return lines


def chu_lines(
    rng: random.Random, words: int, count: int, break_rhymes: bool = False
) -> list[str]:
    """A poem with ``count`` lines of ``words`` words that satisfies the tone checks."""
    distinct = iter(DISTINCT_KEYS * count)
    lines = []
    key = None
    for index in range(count):
        if index % 2 == 0:
            key = rng.choice(RHYME_KEYS)
        line = _toned_line(rng, words)
        if words == 4:
            # The last word is even, so word 2 must be uneven for the contrast check.
            line[1] = rng.choice(UNEVEN)
        line[-1] = next(distinct) if break_rhymes else _rhyme_word(rng, key)
        lines.append(" ".join(line))
    return lines


def poem_lines(
    rng: random.Random, genre: GenreLabel, count: int, break_rhymes: bool = False
) -> list[str]:
    """Lines of a well-formed poem of the genre, ``count`` should be even."""
    if genre is GenreLabel.LUC_BAT:
        return luc_bat_lines(rng, count // 2, break_rhymes)
    return chu_lines(rng, CHU_WORDS[genre], count, break_rhymes)


def make_records(
    seed: int, perfect: int, broken: int, genre: GenreLabel = GenreLabel.LUC_BAT
) -> list[PoemRecord]:
    """Corpus records: ``perfect`` flawless poems, then ``broken`` poems without rhyme."""
    rng = random.Random(seed)
    records = []
    for index in range(perfect + broken):
        lines = poem_lines(rng, genre, 2 * rng.randint(1, 6), break_rhymes=index >= perfect)
        records.append(PoemRecord(id=f"poem-{index:04d}", text="\n".join(lines)))
    rng.shuffle(records)
    return records
