"""Access to the prosody settings.

The library functions only read ``django.conf.settings`` when no explicit argument is given.
Without a configured project, the built-in defaults are used.
Loaded tables are cached, and reset when a setting changes (e.g. by ``override_settings``).
"""
from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import TYPE_CHECKING, Any, Optional

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured
from django.core.signals import setting_changed
from django.dispatch import receiver

from .exceptions import ProsodyError
from .genres import RuleBook
from .syllable import NearRhymeTable

if TYPE_CHECKING:
    from .promptforge import PromptTemplate

DATA_DIR = Path(__file__).parent.joinpath("data")

DEFAULTS = {
    "THO_GENRE_RULES_FILE": None,
    "THO_NEAR_RHYME_FILE": None,
    "THO_GLIDE_ONSETS": True,
    "THO_STOPWORDS_FILE": DATA_DIR / "stopwords.txt",
    "THO_PROMPT_TEMPLATE_FILE": DATA_DIR / "prompt_template.txt",
    "THO_KEYWORD_COUNT": 3,
    "THO_FILTER_THRESHOLD": 0.9,
    "THO_CLASSIFIER_MIN_FIT": 0.8,
    "THO_JOBS": None,
    "THO_GENERATOR_PARALLELISM": 4,
    "THO_GENERATOR_ENDPOINT": None,
    "THO_GENERATOR_MODEL": None,
    "THO_GENERATOR_AUTH_ENV": "THO_GENERATOR_API_KEY",
    "THO_GENERATOR_TIMEOUT": 60.0,
    "THO_GENERATOR_MAX_ATTEMPTS": 3,
    "THO_GENERATOR_BACKOFF": 1.0,
    "THO_GENERATOR_MAX_TOKENS": 256,
    "THO_GENERATOR_TEMPERATURE": 0.7,
    "THO_GENERATOR_RESPONSE_PATH": "choices.0.text",
}


def get_setting(name: str) -> Any:
    default = DEFAULTS[name]
    if not settings.configured:
        return default
    value = getattr(settings, name, default)
    return default if value is None else value


@lru_cache
def get_rulebook() -> RuleBook:
    path = get_setting("THO_GENRE_RULES_FILE")
    return RuleBook.from_file(path) if path else RuleBook()


@lru_cache
def get_near_rhymes() -> Optional[NearRhymeTable]:
    path = get_setting("THO_NEAR_RHYME_FILE")
    return NearRhymeTable.from_file(path) if path else None


def get_glide_onsets() -> bool:
    return bool(get_setting("THO_GLIDE_ONSETS"))


@lru_cache
def get_stopwords() -> frozenset[str]:
    from .promptforge import load_stopwords

    return load_stopwords(get_setting("THO_STOPWORDS_FILE"))


@lru_cache
def get_prompt_template() -> PromptTemplate:
    from .promptforge import PromptTemplate

    return PromptTemplate.from_file(get_setting("THO_PROMPT_TEMPLATE_FILE"))


def get_keyword_count() -> int:
    return int(get_setting("THO_KEYWORD_COUNT"))


def get_filter_threshold() -> float:
    return float(get_setting("THO_FILTER_THRESHOLD"))


def get_min_fit() -> float:
    return float(get_setting("THO_CLASSIFIER_MIN_FIT"))


def get_jobs() -> int:
    return int(get_setting("THO_JOBS") or os.cpu_count() or 1)


def clear_caches():
    for func in (get_rulebook, get_near_rhymes, get_stopwords, get_prompt_template):
        func.cache_clear()


@receiver(setting_changed)
def _on_setting_changed(*, setting: str, **kwargs):
    if setting.startswith("THO_"):
        clear_caches()


def check_rulebook() -> bool:
    """Health check: the genre tables can be loaded."""
    try:
        get_rulebook()
    except (OSError, ProsodyError, ImproperlyConfigured):
        return False
    return True
