import random

import pytest

from tho_api.prosody.classifier import (
    LengthSignature,
    best_fit,
    classify,
    classify_poem,
    classify_with_fit,
    fit_scores,
)
from tho_api.prosody.genres import KNOWN_GENRES, GenreLabel
from tho_api.prosody.scoring import Poem
from tests.utils import poem_lines


def _suite(genre: GenreLabel) -> list[list[str]]:
    """100 well-formed poems of 6 to 12 lines, the same for every test."""
    rng = random.Random(genre.value)
    return [poem_lines(rng, genre, 2 * rng.randint(3, 6)) for _ in range(100)]


def _perturb(rng, lines):
    """Add or remove a word on one random line."""
    lines = list(lines)
    index = rng.randrange(len(lines))
    words = lines[index].split()
    if rng.random() < 0.5:
        words.pop()
    else:
        words.append("ta")
    lines[index] = " ".join(words)
    return lines


class TestClassify:
    """Prove that the genre is detected from the line lengths only."""

    @pytest.mark.parametrize("genre", KNOWN_GENRES)
    def test_well_formed(self, genre):
        for lines in _suite(genre):
            poem = Poem.from_text("\n".join(lines))
            assert classify(LengthSignature.from_poem(poem)) is genre

    @pytest.mark.parametrize("genre", KNOWN_GENRES)
    def test_one_line_off(self, genre):
        """The poems of the well-formed suite, each with one line of the wrong length."""
        rng = random.Random(f"perturbed-{genre.value}")
        correct = 0
        for lines in _suite(genre):
            poem = classify_poem(Poem.from_text("\n".join(_perturb(rng, lines))))
            correct += poem.genre is genre
        assert correct >= 95

    @pytest.mark.parametrize("genre", KNOWN_GENRES)
    def test_short_poems(self, genre):
        rng = random.Random(f"short-{genre.value}")
        for _ in range(20):
            lines = poem_lines(rng, genre, 2 * rng.randint(1, 2))
            assert classify(LengthSignature.from_poem(Poem.from_text("\n".join(lines)))) is genre

    def test_unknown(self):
        assert classify(LengthSignature((3, 9, 2, 11))) is GenreLabel.UNKNOWN

    def test_min_fit(self):
        sig = LengthSignature((7, 7, 7, 5))
        assert classify(sig) is GenreLabel.UNKNOWN
        assert classify(sig, min_fit=0.75) is GenreLabel.CHU_7

    def test_classify_with_fit(self):
        sig = LengthSignature((7, 7, 7, 5))
        assert classify_with_fit(sig) == (GenreLabel.UNKNOWN, 0.75)
        assert classify_with_fit(sig, min_fit=0.75) == (GenreLabel.CHU_7, 0.75)

    def test_min_fit_setting(self, settings):
        settings.THO_CLASSIFIER_MIN_FIT = 0.5
        assert classify(LengthSignature((7, 7, 7, 5))) is GenreLabel.CHU_7

    def test_tie_order(self):
        """Equal fits are resolved in the order luc bat, 8, 7, 5, 4 words."""
        sig = LengthSignature((7, 8))
        assert fit_scores(sig)[GenreLabel.LUC_BAT] == 0.5
        assert fit_scores(sig)[GenreLabel.CHU_8] == 0.5
        assert fit_scores(sig)[GenreLabel.CHU_7] == 0.5
        assert best_fit(sig) == (GenreLabel.LUC_BAT, 0.5)

        assert best_fit(LengthSignature((5, 4))) == (GenreLabel.CHU_5, 0.5)

    def test_empty_signature(self):
        with pytest.raises(ValueError):
            fit_scores(LengthSignature(()))


class TestLengthSignature:
    def test_from_poem(self, kieu_opening_text):
        sig = LengthSignature.from_poem(Poem.from_text(kieu_opening_text))
        assert str(sig) == "6 8 6 8 6 8 6 8"
        assert len(sig) == 8

    def test_from_string(self):
        assert LengthSignature.from_string(" 6 8  6 ") == LengthSignature((6, 8, 6))

    @pytest.mark.parametrize("value", ["6 x 8", "6 -1"])
    def test_invalid(self, value):
        with pytest.raises(ValueError):
            LengthSignature.from_string(value)
