from tho_api.prosody.corpus import (
    BUCKET_COUNT,
    RecordReader,
    filter_corpus,
    score_corpus,
    write_records,
)
from tho_api.prosody.management.base import ProsodyCommand, fraction, genre_or_auto


class Command(ProsodyCommand):
    """Score a corpus, and keep only the records that score high enough.

    The kept records are written to ``--out``. The statistics go to stdout,
    or to stderr when the records themselves are written to stdout.
    """

    help = "Keep the corpus records with a score of at least the threshold."  # noqa: A003

    def add_arguments(self, parser):
        parser.add_argument(
            "--threshold",
            type=fraction,
            default=None,
            help="Minimal score to keep a record (default: THO_FILTER_THRESHOLD, 0.9).",
        )
        parser.add_argument("--in", dest="input", help="Corpus file (default: stdin).")
        parser.add_argument("--out", help="File for the kept records (default: stdout).")
        parser.add_argument(
            "--genre",
            type=genre_or_auto,
            default="auto",
            help="Genre to score against, or 'auto' to detect it (default: %(default)s).",
        )
        parser.add_argument(
            "--skip-invalid",
            action="store_true",
            help="Skip malformed lines instead of stopping at the first one.",
        )
        self.add_format_argument(parser)
        self.add_jobs_argument(parser)

    def handle(self, *args, **options):
        with self.open_input(options["input"]) as stream:
            reader = RecordReader(stream, strict=not options["skip_invalid"])
            scored = score_corpus(reader, genre=options["genre"], jobs=self.get_jobs(options))
            kept, stats = filter_corpus(scored, options["threshold"])
            with self.open_output(options["out"]) as output:
                write_records(kept, output)

        self.report_skipped(reader.errors)
        stats_stream = self.stdout if options["out"] not in (None, "-") else self.stderr
        if options["format"] == "json":
            self.write_json(stats.as_dict(), stream=stats_stream)
        else:
            self.write_table(
                ["threshold", "input", "kept", "rejected"],
                [
                    [
                        f"{stats.threshold:.2f}",
                        str(stats.input),
                        str(stats.kept),
                        str(stats.rejected),
                    ]
                ],
                stream=stats_stream,
            )
            for genre, histogram in stats.histograms.items():
                stats_stream.write(f"\n{genre}:")
                self.write_table(
                    ["score", "count"],
                    [
                        [f"{i / BUCKET_COUNT:.2f}-{(i + 1) / BUCKET_COUNT:.2f}", str(count)]
                        for i, count in enumerate(histogram)
                        if count
                    ],
                    stream=stats_stream,
                )
