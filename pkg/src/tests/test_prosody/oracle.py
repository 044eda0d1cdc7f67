"""Independent reference scorer for the property tests.

This works from a hand-annotated word table instead of the syllable analyzer,
and spells out the rules of every genre without the rule tables of the package.
"""
from collections import Counter

E, U = "E", "U"
HIGH, LOW = "high", "low"

# word: (tone class, register of even words, rhyme key)
WORDS = {
    "ta": (E, HIGH, "a"),
    "xa": (E, HIGH, "a"),
    "là": (E, LOW, "a"),
    "nhà": (E, LOW, "a"),
    "má": (U, None, "a"),
    "lá": (U, None, "a"),
    "lạ": (U, None, "a"),
    "trong": (E, HIGH, "ong"),
    "lòng": (E, LOW, "ong"),
    "bóng": (U, None, "ong"),
    "sóng": (U, None, "ong"),
    "xinh": (E, HIGH, "inh"),
    "tình": (E, LOW, "inh"),
    "xanh": (E, HIGH, "anh"),
    "thành": (E, LOW, "anh"),
    "cánh": (U, None, "anh"),
    "thơ": (E, HIGH, "ơ"),
    "chờ": (E, LOW, "ơ"),
    "nhớ": (U, None, "ơ"),
    "mưa": (E, HIGH, "ưa"),
    "đêm": (E, HIGH, "êm"),
    "mắt": (U, None, "ăt"),
    "trăng": (E, HIGH, "ăng"),
    "núi": (U, None, "ui"),
    "sông": (E, HIGH, "ông"),
    "buồn": (E, LOW, "uôn"),
    "nước": (U, None, "ươc"),
}

LUC_BAT = "luc_bat"
CHU_SIZES = {"chu_4": 4, "chu_5": 5, "chu_7": 7, "chu_8": 8}
GENRES = [LUC_BAT, *CHU_SIZES]


def expected_size(genre, index):
    if genre == LUC_BAT:
        return 6 if index % 2 == 0 else 8
    return CHU_SIZES[genre]


def _tone(line, position):
    """Tone class of a 1-based word position, or None beyond the line."""
    return WORDS[line[position - 1]][0] if position <= len(line) else None


def _register(line, position):
    return WORDS[line[position - 1]][1] if position <= len(line) else None


def _flip(tone):
    return U if tone == E else E


def _checks(genre, index, line, inverted):
    """(satisfied, total) tone checks of a line."""
    want = _flip if inverted else (lambda tone: tone)

    if genre == LUC_BAT:
        positions = {2: E, 4: U, 6: E} if index % 2 == 0 else {2: E, 4: U, 6: E, 8: E}
        hits = sum(1 for pos, tone in positions.items() if _tone(line, pos) == want(tone))
        total = len(positions)
        if index % 2 == 1:
            total += 1
            first, second = _register(line, 6), _register(line, 8)
            if first and second and first != second:
                hits += 1
        return hits, total

    if CHU_SIZES[genre] >= 6:
        positions = {2: E, 4: U, 6: E}
        hits = sum(1 for pos, tone in positions.items() if _tone(line, pos) == want(tone))
        return hits, len(positions)

    second, fourth = _tone(line, 2), _tone(line, 4)
    return (1 if second and fourth and second != fourth else 0), 1


def _line_value(genre, index, line, inverted):
    hits, total = _checks(genre, index, line, inverted)
    return hits / total


def _rhyme_slots(genre, pair, count):
    base = 2 * pair
    if genre == LUC_BAT:
        slots = [(base - 1, 8), (base, 6), (base + 1, 6)]
    else:
        size = CHU_SIZES[genre]
        slots = [(base, size), (base + 1, size)]
    return [(line, word) for line, word in slots if 0 <= line < count]


def oracle_score(genre, lines):
    """Return (L, T, R, score) for the poem, ``lines`` being lists of words."""
    count = len(lines)
    n_eff = count if count % 2 == 0 else count + 1

    length = sum(1 for i, line in enumerate(lines) if len(line) == expected_size(genre, i))

    tone = 0.0
    if genre == LUC_BAT:
        for start in range(0, count, 2):
            first = lines[start]
            canonical = _checks(genre, start, first, False)[0]
            inverted = _checks(genre, start, first, True)[0] > canonical
            for index in range(start, min(start + 2, count)):
                tone += _line_value(genre, index, lines[index], inverted)
    else:
        for index, line in enumerate(lines):
            tone += max(
                _line_value(genre, index, line, False), _line_value(genre, index, line, True)
            )

    rhyme = 0.0
    for pair in range((count + 1) // 2):
        words = [
            lines[line][word - 1]
            for line, word in _rhyme_slots(genre, pair, count)
            if word <= len(lines[line])
        ]
        if words:
            largest = max(Counter(WORDS[word][2] for word in words).values())
            rhyme += largest / len(words)

    L = length / n_eff  # noqa: N806
    T = tone / n_eff  # noqa: N806
    R = 2 * rhyme / n_eff  # noqa: N806
    return L, T, R, 0.1 * L + 0.3 * T + 0.6 * R
