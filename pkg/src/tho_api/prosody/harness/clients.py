"""Text generator clients.

Three kinds of generators exist:

* ``stub`` - always answers the same canned poem.
* ``replay`` - answers the gold completion of the record, for testing the harness itself.
* ``http`` - calls a completion endpoint.

The endpoint is queried with raw urllib3, to avoid the overhead of the requests library.
"""
from __future__ import annotations

import logging
import os
import random
import time
from dataclasses import dataclass
from typing import Literal, Optional
from urllib.parse import urlparse

import certifi
import orjson
import urllib3
from django.core.exceptions import ImproperlyConfigured
from urllib3 import HTTPResponse

from ..exceptions import BackendError, ExhaustedRetries, GeneratorError, GeneratorTimeout

logger = logging.getLogger(__name__)

_http_pool_generic = urllib3.PoolManager(cert_reqs="CERT_REQUIRED", ca_certs=certifi.where())

GeneratorKind = Literal["stub", "replay", "http"]

# Opening couplet of Truyện Kiều, a perfect "luc bat" poem.
CANNED_POEM = "Trăm năm trong cõi người ta\nChữ tài chữ mệnh khéo là ghét nhau"


@dataclass(frozen=True)
class GeneratorSpec:
    """How to reach a text generator.

    The API key itself is never part of the spec, only the name of
    the environment variable (``auth_env``) that holds it.
    """

    kind: GeneratorKind = "stub"
    endpoint: Optional[str] = None
    model: Optional[str] = None
    auth_env: Optional[str] = None
    max_tokens: int = 256
    temperature: float = 0.7
    timeout: float = 60.0
    max_attempts: int = 3
    backoff: float = 1.0
    response_path: str = "choices.0.text"
    canned_poem: str = CANNED_POEM

    def __post_init__(self):
        if self.kind not in ("stub", "replay", "http"):
            raise ImproperlyConfigured(f"Unknown generator kind: {self.kind}")
        if self.kind == "http" and not self.endpoint:
            raise ImproperlyConfigured("The http generator requires an endpoint URL")
        if self.max_attempts < 1:
            raise ImproperlyConfigured("max_attempts should be at least 1")

    @classmethod
    def from_settings(cls, kind: GeneratorKind = "stub", **overrides) -> GeneratorSpec:
        """Construct the spec from the ``THO_GENERATOR_*`` settings."""
        from ..conf import get_setting

        values = {
            "kind": kind,
            "endpoint": get_setting("THO_GENERATOR_ENDPOINT"),
            "model": get_setting("THO_GENERATOR_MODEL"),
            "auth_env": get_setting("THO_GENERATOR_AUTH_ENV"),
            "max_tokens": int(get_setting("THO_GENERATOR_MAX_TOKENS")),
            "temperature": float(get_setting("THO_GENERATOR_TEMPERATURE")),
            "timeout": float(get_setting("THO_GENERATOR_TIMEOUT")),
            "max_attempts": int(get_setting("THO_GENERATOR_MAX_ATTEMPTS")),
            "backoff": float(get_setting("THO_GENERATOR_BACKOFF")),
            "response_path": get_setting("THO_GENERATOR_RESPONSE_PATH"),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def __repr__(self):
        # Only fields that are safe for logging.
        return f"<GeneratorSpec: {self.kind} endpoint={self.endpoint} model={self.model}>"


class Generator:
    """Base class of the generator clients."""

    def __init__(self, spec: GeneratorSpec):
        self.spec = spec

    def generate(self, prompt: str, *, record=None) -> str:
        """Produce a text for the prompt.

        :param record: The record the prompt belongs to, if any.
        """
        raise NotImplementedError()


class StubGenerator(Generator):
    def generate(self, prompt: str, *, record=None) -> str:
        return self.spec.canned_poem


class ReplayGenerator(Generator):
    """Answer the gold completion of a prompt record.

    Completions can also be registered up front, to replay by prompt text.
    """

    def __init__(self, spec: GeneratorSpec, completions: Optional[dict[str, str]] = None):
        super().__init__(spec)
        self.completions = dict(completions or {})

    def generate(self, prompt: str, *, record=None) -> str:
        completion = getattr(record, "completion", None)
        if completion is None:
            completion = self.completions.get(prompt)
        if completion is None:
            raise GeneratorError("No completion to replay for this prompt")
        return completion


def call(
    pool: urllib3.PoolManager, url: str, body: bytes, timeout: float, **kwargs
) -> HTTPResponse:
    """Make an HTTP POST call. kwargs are passed to pool.request."""
    host = urlparse(url).netloc
    t0 = time.perf_counter_ns()
    try:
        response: HTTPResponse = pool.request(
            "POST",
            url,
            body=body,
            timeout=timeout,
            retries=False,
            **kwargs,
        )
    except (TimeoutError, urllib3.exceptions.TimeoutError) as e:
        # Socket timeout
        logger.error("Generator call to %s failed, timeout from remote server: %s", host, e)
        raise GeneratorTimeout() from e
    except (OSError, urllib3.exceptions.HTTPError) as e:
        # Socket connect / SSL error (HTTPError is the base class for errors)
        logger.error("Generator call to %s failed, error when connecting to server: %s", host, e)
        raise GeneratorTimeout(f"Connection failed (network trouble): {e}") from e

    # Log response and timing results
    level = logging.ERROR if response.status >= 400 else logging.INFO
    logger.log(
        level,
        "Generator call to %s, status %s: %s, took: %.3fs",
        host,
        response.status,
        response.reason,
        (time.perf_counter_ns() - t0) * 1e-9,
    )

    if 200 <= response.status < 300:
        return response

    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("  Response body: %s", response.data)

    content_type = response.headers.get("content-type", "")
    # An HTML error page has no useful details.
    detail = None
    if not content_type.startswith("text/html"):
        detail = response.data.decode(errors="replace")
    raise BackendError(
        response.status, detail or f"Unexpected HTTP {response.status} from generator endpoint"
    )


def extract_path(data, path: str):
    """Read a dotted path (``choices.0.text``) from a decoded JSON response."""
    value = data
    for part in path.split("."):
        try:
            value = value[int(part)] if isinstance(value, list) else value[part]
        except (KeyError, IndexError, TypeError, ValueError):
            raise GeneratorError(f"Generator response has no '{path}' field") from None
    if not isinstance(value, str):
        raise GeneratorError(f"Generator response field '{path}' is not text")
    return value


class HttpGenerator(Generator):
    """Call a completion-style HTTP endpoint.

    Timeouts, connection errors, HTTP 429 and 5xx responses are retried with
    exponential backoff and jitter, up to ``max_attempts`` attempts in total.
    """

    def generate(self, prompt: str, *, record=None) -> str:
        last_error = None
        for attempt in range(1, self.spec.max_attempts + 1):
            try:
                return self._generate(prompt)
            except GeneratorTimeout as e:
                last_error = e
            except BackendError as e:
                if not e.transient:
                    raise
                last_error = e

            if attempt < self.spec.max_attempts:
                delay = self._get_delay(attempt)
                logger.warning(
                    "Generator attempt %d/%d failed (%s), retrying in %.1fs",
                    attempt,
                    self.spec.max_attempts,
                    last_error.code,
                    delay,
                )
                time.sleep(delay)

        raise ExhaustedRetries(self.spec.max_attempts, last_error)

    def _get_delay(self, attempt: int) -> float:
        return self.spec.backoff * (2 ** (attempt - 1)) * random.uniform(0.5, 1.5)  # noqa: S311

    def _generate(self, prompt: str) -> str:
        payload = {
            "model": self.spec.model,
            "prompt": prompt,
            "max_tokens": self.spec.max_tokens,
            "temperature": self.spec.temperature,
        }
        response = call(
            self._get_http_pool(),
            self.spec.endpoint,
            body=orjson.dumps(payload),
            timeout=self.spec.timeout,
            headers=self._get_headers(),
        )
        try:
            data = orjson.loads(response.data)
        except orjson.JSONDecodeError as e:
            raise BackendError(response.status, f"Invalid JSON from generator: {e}") from None
        return extract_path(data, self.spec.response_path)

    def _get_headers(self) -> dict:
        headers = {
            "Accept": "application/json",
            "Content-Type": "application/json",
        }
        if self.spec.auth_env:
            token = os.environ.get(self.spec.auth_env)
            if token:
                headers["Authorization"] = f"Bearer {token}"
            else:
                logger.warning(
                    "Environment variable %s is not set, calling generator without auth",
                    self.spec.auth_env,
                )
        return headers

    def _get_http_pool(self) -> urllib3.PoolManager:
        """Returns a PoolManager for making HTTP requests."""
        return _http_pool_generic


def make_generator(spec: GeneratorSpec, completions: Optional[dict[str, str]] = None) -> Generator:
    """Construct the client for a generator spec."""
    if spec.kind == "stub":
        return StubGenerator(spec)
    elif spec.kind == "replay":
        return ReplayGenerator(spec, completions)
    elif spec.kind == "http":
        return HttpGenerator(spec)
    raise ImproperlyConfigured(f"Unknown generator kind: {spec.kind}")


def generate(spec: GeneratorSpec, prompt: str, *, record=None) -> str:
    """Produce a text for the prompt with the generator of the spec."""
    return make_generator(spec).generate(prompt, record=record)
