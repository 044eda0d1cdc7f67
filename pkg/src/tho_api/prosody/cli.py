"""The ``tho`` command line tool.

Each subcommand is a management command of this app, so ``tho score poem.txt``
is the same as ``manage.py score poem.txt``. Exit statuses:

* 0 - success
* 1 - usage error
* 2 - data error (unreadable input, malformed records, unknown genre)
"""
from __future__ import annotations

import os
import sys
from typing import Optional

import django
from django.core.management import load_command_class

from .management.base import EXIT_USAGE

PROG = "tho"
COMMANDS = ("score", "classify", "filter", "stats", "synth", "evaluate", "report")


def get_usage() -> str:
    return (
        f"usage: {PROG} <command> [options]\n\n"
        f"Commands: {', '.join(COMMANDS)}\n"
        f"Use '{PROG} <command> --help' for the options of a command.\n"
    )


def run(argv: Optional[list[str]] = None) -> int:
    """Run a single subcommand, and return the exit status."""
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help", "help"):
        stream = sys.stdout if argv else sys.stderr
        stream.write(get_usage())
        return 0 if argv else EXIT_USAGE

    name, *args = argv
    if name not in COMMANDS:
        sys.stderr.write(f"{PROG}: unknown command '{name}'\n\n{get_usage()}")
        return EXIT_USAGE

    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "tho_api.settings")
    django.setup()

    command = load_command_class("tho_api.prosody", name)
    try:
        # Reports CommandError with its returncode through sys.exit().
        command.run_from_argv([PROG, name, *args])
    except SystemExit as e:
        if e.code is None or isinstance(e.code, int):
            return e.code or 0
        sys.stderr.write(f"{e.code}\n")
        return EXIT_USAGE
    return 0


def main():
    sys.exit(run())
