"""Shared logic of the prosody management commands."""
from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from typing import Optional

import orjson
from django.core.exceptions import ImproperlyConfigured
from django.core.management import BaseCommand, CommandError, CommandParser

from tho_api.prosody.exceptions import ProsodyError
from tho_api.prosody.genres import GenreLabel
from tho_api.prosody.harness.reports import render_table

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageErrorParser(CommandParser):
    """Report usage errors with exit status 1; status 2 is reserved for data errors."""

    def error(self, message):
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")
        raise CommandError(f"Error: {message}", returncode=EXIT_USAGE)


def fraction(value: str) -> float:
    """Argument type for a number in the range [0, 1]."""
    try:
        number = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number: {value!r}") from None
    if not 0 <= number <= 1:
        raise argparse.ArgumentTypeError(f"{value} is not in range [0, 1]")
    return number


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number: {value!r}") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"{value} should be at least 1")
    return number


class ProsodyCommand(BaseCommand):
    """Base class for the commands; files default to stdin/stdout."""

    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = UsageErrorParser
        return parser

    def add_format_argument(self, parser, choices=("table", "json")):
        parser.add_argument(
            "--format",
            choices=choices,
            default=choices[0],
            help="Output format (default: %(default)s).",
        )

    def add_jobs_argument(self, parser):
        parser.add_argument(
            "--jobs",
            type=positive_int,
            default=None,
            help="Number of worker processes (default: THO_JOBS or the number of CPUs).",
        )

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except (ProsodyError, FileNotFoundError, ImproperlyConfigured) as e:
            raise CommandError(str(e), returncode=EXIT_DATA) from e

    def usage_error(self, message):
        raise CommandError(f"Error: {message}", returncode=EXIT_USAGE)

    def get_jobs(self, options) -> int:
        from tho_api.prosody.conf import get_jobs

        return options.get("jobs") or get_jobs()

    @contextmanager
    def open_input(self, path: Optional[str]):
        if path in (None, "-"):
            yield sys.stdin
        else:
            with open(path, encoding="utf-8") as stream:
                yield stream

    @contextmanager
    def open_output(self, path: Optional[str]):
        if path in (None, "-"):
            yield self.stdout
        else:
            with open(path, "w", encoding="utf-8") as stream:
                yield stream

    def write_json(self, data, stream=None):
        (stream or self.stdout).write(
            orjson.dumps(data, option=orjson.OPT_INDENT_2).decode() + "\n"
        )

    def write_table(self, header, rows, stream=None):
        (stream or self.stdout).write(render_table(header, rows))

    def report_skipped(self, errors, what="record"):
        """List the records that were skipped, on stderr."""
        if errors:
            self.stderr.write(f"Skipped {len(errors)} {what}(s):")
            for error in errors:
                self.stderr.write(f"  {error}")


def genre_or_auto(value: str):
    """Argument type for a genre label, or "auto"."""
    if value.strip().lower() == "auto":
        return "auto"
    try:
        return GenreLabel.parse(value)
    except ProsodyError:
        raise argparse.ArgumentTypeError(f"unknown genre: {value!r}") from None
