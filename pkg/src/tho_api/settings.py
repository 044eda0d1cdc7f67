import json
import logging
from pathlib import Path
from typing import Final

import environ
import sentry_sdk
from sentry_sdk.integrations.django import DjangoIntegration
from sentry_sdk.integrations.logging import LoggingIntegration

from tho_api.sentry import before_send

env = environ.Env()

# -- Environment

BASE_DIR = Path(__file__).parents[1]
DEBUG = env.bool("DJANGO_DEBUG", False)

DJANGO_LOG_LEVEL = env.str("DJANGO_LOG_LEVEL", "INFO")
THO_LOG_LEVEL = env.str("THO_LOG_LEVEL", "INFO")
SENTRY_BLOCKED_PATHS: Final[list[str]] = env.list("SENTRY_BLOCKED_PATHS", default=[])

# -- Security

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = env.str("SECRET_KEY", "insecure")

INTERNAL_IPS = ("127.0.0.1",)

TIME_ZONE = "Asia/Ho_Chi_Minh"

# -- Application definition

INSTALLED_APPS = [
    "rest_framework",
    "tho_api.prosody",
]

MIDDLEWARE = [
    "django.middleware.gzip.GZipMiddleware",
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "tho_api.urls"
WSGI_APPLICATION = "tho_api.wsgi.application"

# -- Services

ALLOWED_HOSTS = env.list("ALLOWED_HOSTS", default=["*"])

CACHES = {"default": env.cache_url(default="locmemcache://")}

# The toolkit works on files and request bodies only.
DATABASES = {}

SENTRY_DSN = env.str("SENTRY_DSN", default="")
if SENTRY_DSN:
    sentry_sdk.init(
        dsn=SENTRY_DSN,
        environment="tho-api",
        before_send=before_send,
        integrations=[
            LoggingIntegration(event_level=logging.WARNING),
            DjangoIntegration(),
        ],
    )

base_log_fmt = {"time": "%(asctime)s", "name": "%(name)s", "level": "%(levelname)s"}
log_fmt = base_log_fmt.copy()
log_fmt["message"] = "%(message)s"

LOGGING = {
    "version": 1,
    "disable_existing_loggers": True,
    "formatters": {
        "json": {"format": json.dumps(log_fmt)},
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "json",
        },
    },
    "root": {"level": "INFO", "handlers": ["console"]},
    "loggers": {
        "django": {"handlers": ["console"], "level": DJANGO_LOG_LEVEL, "propagate": False},
        "django.utils.autoreload": {"handlers": ["console"], "level": "INFO", "propagate": False},
        "tho_api": {"handlers": ["console"], "level": THO_LOG_LEVEL, "propagate": False},
    },
}

# -- Third party app settings

HEALTH_CHECKS = {
    "app": lambda request: True,
    "rules": "tho_api.prosody.conf.check_rulebook",
}
HEALTH_CHECKS_ERROR_CODE = 503

REST_FRAMEWORK = dict(
    UNAUTHENTICATED_USER=None,
    UNAUTHENTICATED_TOKEN=None,
    DEFAULT_AUTHENTICATION_CLASSES=[],
    DEFAULT_PERMISSION_CLASSES=[],
    DEFAULT_RENDERER_CLASSES=[
        "rest_framework.renderers.JSONRenderer",
    ],
    DEFAULT_PARSER_CLASSES=[
        "rest_framework.parsers.JSONParser",
    ],
    EXCEPTION_HANDLER="tho_api.views.exception_handler",
)

# -- Local app settings

# Genre table overrides (YAML), and the optional near-rhyme classes.
THO_GENRE_RULES_FILE = env.str("THO_GENRE_RULES_FILE", None)
THO_NEAR_RHYME_FILE = env.str("THO_NEAR_RHYME_FILE", None)
THO_GLIDE_ONSETS = env.bool("THO_GLIDE_ONSETS", True)

# Prompt dataset building.
THO_STOPWORDS_FILE = env.str("THO_STOPWORDS_FILE", None)
THO_PROMPT_TEMPLATE_FILE = env.str("THO_PROMPT_TEMPLATE_FILE", None)
THO_KEYWORD_COUNT = env.int("THO_KEYWORD_COUNT", 3)

THO_FILTER_THRESHOLD = env.float("THO_FILTER_THRESHOLD", 0.9)
THO_CLASSIFIER_MIN_FIT = env.float("THO_CLASSIFIER_MIN_FIT", 0.8)

# Worker processes for scoring; None means the number of CPUs.
THO_JOBS = env.int("THO_JOBS", None)

# The text generator of the evaluation harness.
# The API key is read from the environment variable named by THO_GENERATOR_AUTH_ENV,
# so it never becomes part of the settings.
THO_GENERATOR_ENDPOINT = env.str("THO_GENERATOR_ENDPOINT", None)
THO_GENERATOR_MODEL = env.str("THO_GENERATOR_MODEL", None)
THO_GENERATOR_AUTH_ENV = env.str("THO_GENERATOR_AUTH_ENV", "THO_GENERATOR_API_KEY")
THO_GENERATOR_PARALLELISM = env.int("THO_GENERATOR_PARALLELISM", 4)
THO_GENERATOR_TIMEOUT = env.float("THO_GENERATOR_TIMEOUT", 60.0)
THO_GENERATOR_MAX_ATTEMPTS = env.int("THO_GENERATOR_MAX_ATTEMPTS", 3)
THO_GENERATOR_BACKOFF = env.float("THO_GENERATOR_BACKOFF", 1.0)
THO_GENERATOR_MAX_TOKENS = env.int("THO_GENERATOR_MAX_TOKENS", 256)
THO_GENERATOR_TEMPERATURE = env.float("THO_GENERATOR_TEMPERATURE", 0.7)
THO_GENERATOR_RESPONSE_PATH = env.str("THO_GENERATOR_RESPONSE_PATH", "choices.0.text")
