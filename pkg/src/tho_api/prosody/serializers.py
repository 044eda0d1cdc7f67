"""Validation of records and API input.

The line-delimited files and the REST endpoints share these serializers,
so both report the same messages for invalid input.
"""
from __future__ import annotations

from typing import Any

from rest_framework import serializers
from rest_framework.exceptions import ErrorDetail, ValidationError

from .exceptions import MalformedRecord, UnknownGenre
from .genres import GenreLabel
from .records import EvalRecord, Mode, PoemRecord, PromptRecord
from .scoring import ScoreBreakdown


class GenreField(serializers.Field):
    """A genre label, also accepting the spelled variants ("luc bat", "7 chu")."""

    default_error_messages = {
        "invalid": "Unknown genre '{value}'.",
        "auto": "The 'auto' genre is not allowed here.",
    }

    def __init__(self, allow_auto=False, **kwargs):
        self.allow_auto = allow_auto
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        if not isinstance(data, str):
            self.fail("invalid", value=data)
        if data.strip().lower() == "auto":
            if not self.allow_auto:
                self.fail("auto")
            return "auto"
        try:
            return GenreLabel.parse(data)
        except UnknownGenre:
            self.fail("invalid", value=data)

    def to_representation(self, value):
        return str(value)


class ScoreSerializer(serializers.Serializer):
    L = serializers.FloatField(min_value=0, max_value=1)
    T = serializers.FloatField(min_value=0, max_value=1)
    R = serializers.FloatField(min_value=0, max_value=1)
    score = serializers.FloatField(min_value=0, max_value=1)
    genre = GenreField(required=False, default=GenreLabel.UNKNOWN)
    n = serializers.IntegerField(min_value=0, required=False, default=0)

    def create(self, validated_data) -> ScoreBreakdown:
        return ScoreBreakdown.from_dict(validated_data)


class PoemRecordSerializer(serializers.Serializer):
    id = serializers.CharField()
    text = serializers.CharField()
    genre = GenreField(required=False, default=GenreLabel.UNKNOWN)
    title = serializers.CharField(required=False, allow_blank=True, allow_null=True)
    score = ScoreSerializer(required=False, allow_null=True)
    flags = serializers.ListField(child=serializers.CharField(), required=False, default=list)
    error = serializers.CharField(required=False, allow_null=True)

    def create(self, validated_data) -> PoemRecord:
        score = validated_data.get("score")
        return PoemRecord(
            id=validated_data["id"],
            text=validated_data["text"],
            genre=validated_data["genre"],
            title=validated_data.get("title") or None,
            score=ScoreBreakdown.from_dict(score) if score else None,
            flags=tuple(validated_data["flags"]),
            error=validated_data.get("error"),
        )


class PromptRecordSerializer(serializers.Serializer):
    """A prompt with its gold completion, as written by the ``synth`` command."""

    id = serializers.CharField()
    prompt = serializers.CharField()
    completion = serializers.CharField()
    genre = GenreField()
    mode = serializers.ChoiceField(choices=[mode.value for mode in Mode], default=Mode.TEXT2POEM)
    keywords = serializers.ListField(child=serializers.CharField(), required=False, default=list)
    topic = serializers.CharField(required=False, allow_blank=True, allow_null=True)

    def create(self, validated_data) -> PromptRecord:
        return PromptRecord(
            id=validated_data["id"],
            prompt=validated_data["prompt"],
            completion=validated_data["completion"],
            genre=validated_data["genre"],
            mode=Mode(validated_data["mode"]),
            keywords=tuple(validated_data["keywords"]),
            topic=validated_data.get("topic") or None,
        )


class EvalRecordSerializer(serializers.Serializer):
    """A per-record dump line of the ``evaluate`` command."""

    id = serializers.CharField()
    prompt = serializers.CharField(allow_blank=True)
    declared_genre = GenreField()
    mode = serializers.ChoiceField(choices=[mode.value for mode in Mode], default=Mode.TEXT2POEM)
    keywords = serializers.ListField(child=serializers.CharField(), required=False, default=list)
    blind = serializers.BooleanField(required=False, default=False)
    generated = serializers.CharField(required=False, allow_blank=True, allow_null=True)
    genre = GenreField(required=False, default=GenreLabel.UNKNOWN)
    score = ScoreSerializer(required=False, allow_null=True)
    coverage = serializers.FloatField(min_value=0, max_value=1, required=False, allow_null=True)
    flags = serializers.ListField(child=serializers.CharField(), required=False, default=list)
    error = serializers.CharField(required=False, allow_null=True)

    def create(self, validated_data) -> EvalRecord:
        score = validated_data.get("score")
        return EvalRecord(
            id=validated_data["id"],
            prompt=validated_data["prompt"],
            declared_genre=validated_data["declared_genre"],
            mode=Mode(validated_data["mode"]),
            keywords=tuple(validated_data["keywords"]),
            blind=validated_data["blind"],
            generated=validated_data.get("generated"),
            genre=validated_data["genre"],
            score=ScoreBreakdown.from_dict(score) if score else None,
            coverage=validated_data.get("coverage"),
            flags=tuple(validated_data["flags"]),
            error=validated_data.get("error"),
        )


class ScoreRequestSerializer(serializers.Serializer):
    text = serializers.CharField()
    genre = GenreField(allow_auto=True, required=False, default="auto")


class ClassifyRequestSerializer(serializers.Serializer):
    text = serializers.CharField()


def flatten_errors(detail: Any, field_name: str = "") -> list[str]:
    """Turn the nested DRF error structure into "field: message" strings."""
    if isinstance(detail, dict):
        result = []
        for name, errors in detail.items():
            full_name = f"{field_name}.{name}" if field_name else name
            result.extend(flatten_errors(errors, full_name))
        return result
    elif isinstance(detail, list):
        return [message for error in detail for message in flatten_errors(error, field_name)]
    elif isinstance(detail, ErrorDetail):
        return [f"{field_name}: {detail}" if field_name else str(detail)]
    return [str(detail)]


def load_record(serializer_class: type[serializers.Serializer], data: Any, line: int):
    """Validate a decoded JSON line, and construct the record object.

    :raises MalformedRecord: When the data doesn't validate.
    """
    if not isinstance(data, dict):
        raise MalformedRecord(line, "expected a JSON object")

    serializer = serializer_class(data=data)
    try:
        serializer.is_valid(raise_exception=True)
    except ValidationError as e:
        raise MalformedRecord(line, "; ".join(flatten_errors(e.detail))) from None
    return serializer.save()
