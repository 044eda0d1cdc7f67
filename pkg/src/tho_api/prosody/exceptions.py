"""Exception classes of the prosody toolkit.

Every error carries a ``default_detail`` and ``default_code``, so the
REST views and management commands can report them in a uniform way.
"""
from typing import Optional


class ProsodyError(Exception):
    """Base class for all errors raised by the toolkit."""

    default_detail = "Prosody processing failed"
    default_code = "prosody_error"

    def __init__(self, detail: Optional[str] = None):
        self.detail = detail if detail is not None else self.default_detail
        super().__init__(self.detail)

    @property
    def code(self) -> str:
        return self.default_code


class EmptyToken(ProsodyError):
    """Nothing remains of a token after stripping punctuation."""

    default_detail = "Token is empty after normalization"
    default_code = "empty_token"


class EmptyPoem(ProsodyError):
    """The poem has no non-blank lines."""

    default_detail = "Poem has no lines"
    default_code = "empty_poem"


class UnknownGenre(ProsodyError):
    """No rule table exists for the requested genre."""

    default_detail = "Unknown genre"
    default_code = "unknown_genre"


class MalformedRecord(ProsodyError):
    """A line of a corpus file could not be parsed into a record."""

    default_detail = "Malformed record"
    default_code = "malformed_record"

    def __init__(self, line: int, detail: Optional[str] = None):
        self.line = line
        super().__init__(f"line {line}: {detail or self.default_detail}")


class PoemTooShort(ProsodyError):
    """Fewer content words than requested keywords."""

    default_detail = "Poem has too few content words"
    default_code = "poem_too_short"


class MissingPlaceholder(ProsodyError):
    """A prompt template lacks one of the {X}, {Y} or {Z} placeholders."""

    default_detail = "Template misses a placeholder"
    default_code = "missing_placeholder"


class LengthMismatch(ProsodyError):
    """Parallel argument lists differ in length."""

    default_detail = "Argument lists differ in length"
    default_code = "length_mismatch"


class MixedModes(ProsodyError):
    """A test set holds both text-to-poem and poem-to-poem records."""

    default_detail = "Test set mixes generation modes"
    default_code = "mixed_modes"


class GeneratorError(ProsodyError):
    """Base class for text generator failures."""

    default_detail = "Text generation failed"
    default_code = "generator_error"


class GeneratorTimeout(GeneratorError):
    """The generator endpoint did not answer in time."""

    default_detail = "Connection failed (server timeout)"
    default_code = "timeout"


class BackendError(GeneratorError):
    """The generator endpoint answered with an error status."""

    default_detail = "Connection failed (bad gateway)"
    default_code = "backend_error"

    def __init__(self, status: int, detail: Optional[str] = None):
        self.status = status
        super().__init__(detail or f"Unexpected HTTP {status} from generator endpoint")

    @property
    def transient(self) -> bool:
        return self.status == 429 or self.status >= 500


class ExhaustedRetries(GeneratorError):
    """All attempts allowed by the retry policy failed."""

    default_detail = "Generator failed after all retries"
    default_code = "exhausted_retries"

    def __init__(self, attempts: int, last_error: Optional[Exception] = None):
        self.attempts = attempts
        self.last_error = last_error
        super().__init__(f"Giving up after {attempts} attempts: {last_error}")
