from tho_api.prosody.corpus import RecordReader, corpus_stats, score_corpus
from tho_api.prosody.management.base import ProsodyCommand, genre_or_auto


def _format(value):
    return "-" if value is None else f"{value:.3f}"


class Command(ProsodyCommand):
    help = "Show the number of records and the scores per genre of a corpus."  # noqa: A003

    def add_arguments(self, parser):
        parser.add_argument("--in", dest="input", help="Corpus file (default: stdin).")
        parser.add_argument(
            "--score",
            action="store_true",
            help="Score the records first, instead of using the scores in the file.",
        )
        parser.add_argument(
            "--genre",
            type=genre_or_auto,
            default="auto",
            help="Genre to score against with --score (default: %(default)s).",
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
            records = reader
            if options["score"]:
                records = score_corpus(reader, genre=options["genre"], jobs=self.get_jobs(options))
            stats = corpus_stats(records)

        self.report_skipped(reader.errors)
        if options["format"] == "json":
            self.write_json(stats.as_dict())
            return

        rows = [
            [genre, str(item.count), str(item.scored), _format(item.mean), _format(item.median)]
            for genre, item in stats.genres.items()
        ]
        rows.append(["total", str(stats.total), "", "", ""])
        self.write_table(["genre", "count", "scored", "mean", "median"], rows)
