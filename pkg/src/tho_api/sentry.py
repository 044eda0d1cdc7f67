import re
from os.path import normpath
from typing import Any, Optional
from urllib.parse import urlparse

from django.conf import settings

# The makers of sentry only have internal types (in `_types`)
# those are not considered stable atm, so we define
# our own aliases for now.
Event = dict[str, Any]
Hint = dict[str, Any]

RE_BEARER = re.compile(r"(Bearer\s+)[^\s'\"]+", re.IGNORECASE)
REDACTED = "[Filtered]"


def _redact(value):
    """Remove bearer tokens from (nested) event values."""
    if isinstance(value, str):
        return RE_BEARER.sub(rf"\g<1>{REDACTED}", value)
    elif isinstance(value, dict):
        return {key: _redact(item) for key, item in value.items()}
    elif isinstance(value, list):
        return [_redact(item) for item in value]
    return value


def before_send(event: Event, hint: Hint) -> Optional[Event]:
    """Filters events before they are sent to the Sentry server.

    Events of blocked paths are dropped, and bearer tokens
    (e.g. of the generator endpoint) are never sent.
    """
    url = event.get("request", {}).get("url")
    if url:
        path = urlparse(url).path
        if any(
            path_fragment in normpath(path)
            for path_fragment in settings.SENTRY_BLOCKED_PATHS
            if path_fragment
        ):
            return None

    return _redact(event)
