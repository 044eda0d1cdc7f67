"""REST endpoints of the toolkit.

Both endpoints take the poem text in a JSON body, and answer with plain JSON.
Errors of the toolkit (e.g. an empty poem) are reported as ``application/problem+json``
by the project exception handler.
"""
from rest_framework.response import Response
from rest_framework.views import APIView

from .classifier import LengthSignature, classify_with_fit
from .corpus import UNKNOWN_GENRE_FLAG
from .genres import GenreLabel
from .scoring import Poem, ScoreBreakdown, score
from .serializers import ClassifyRequestSerializer, ScoreRequestSerializer


def _classify(poem: Poem) -> tuple[GenreLabel, float, LengthSignature]:
    sig = LengthSignature.from_poem(poem)
    genre, fit = classify_with_fit(sig)
    return genre, fit, sig


class ScoreView(APIView):
    """Score the length, tone and rhyme of a poem.

    With the genre ``auto`` (the default), the genre is detected first.
    A poem of no known genre scores 0, and is flagged ``unknown_genre``.
    """

    def post(self, request):
        serializer = ScoreRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)

        poem = Poem.from_text(serializer.validated_data["text"])
        genre = serializer.validated_data["genre"]
        if genre == "auto":
            genre = _classify(poem)[0]

        if genre is GenreLabel.UNKNOWN:
            data = ScoreBreakdown.zero(genre, poem.n).as_dict()
            data["flags"] = [UNKNOWN_GENRE_FLAG]
        else:
            data = score(poem.with_genre(genre)).as_dict()
            data["flags"] = []
        return Response(data)


class ClassifyView(APIView):
    """Detect the genre of a poem from its line lengths."""

    def post(self, request):
        serializer = ClassifyRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)

        genre, fit, sig = _classify(Poem.from_text(serializer.validated_data["text"]))
        return Response({"genre": genre.value, "fit": fit, "signature": str(sig)})
