from tho_api.prosody.classifier import LengthSignature, classify
from tho_api.prosody.corpus import UNKNOWN_GENRE_FLAG, RecordReader, score_corpus, write_records
from tho_api.prosody.genres import GenreLabel
from tho_api.prosody.management.base import ProsodyCommand, genre_or_auto
from tho_api.prosody.scoring import Poem, ScoreBreakdown, score


class Command(ProsodyCommand):
    """Score a poem, or all records of a corpus."""

    help = "Score the length, tone and rhyme of a poem."  # noqa: A003

    def add_arguments(self, parser):
        parser.add_argument(
            "file", nargs="?", help="Poem text file, or corpus file with --corpus (default: stdin)"
        )
        parser.add_argument(
            "--genre",
            type=genre_or_auto,
            default="auto",
            help="Genre to score against, or 'auto' to detect it (default: %(default)s).",
        )
        parser.add_argument(
            "--corpus",
            action="store_true",
            help="Read line-delimited poem records, and write them with their scores.",
        )
        parser.add_argument("--out", help="Output file for --corpus (default: stdout).")
        self.add_format_argument(parser)
        self.add_jobs_argument(parser)

    def handle(self, *args, **options):
        if options["corpus"]:
            self.score_corpus(options)
        else:
            self.score_poem(options)

    def score_poem(self, options):
        with self.open_input(options["file"]) as stream:
            poem = Poem.from_text(stream.read())

        genre = options["genre"]
        flags = []
        if genre == "auto":
            genre = classify(LengthSignature.from_poem(poem))

        if genre is GenreLabel.UNKNOWN:
            breakdown = ScoreBreakdown.zero(GenreLabel.UNKNOWN, poem.n)
            flags.append(UNKNOWN_GENRE_FLAG)
        else:
            breakdown = score(poem.with_genre(genre))

        if options["format"] == "json":
            self.write_json({**breakdown.as_dict(), "flags": flags})
        else:
            self.write_table(
                ["genre", "n", "L", "T", "R", "score"],
                [
                    [
                        breakdown.genre.value,
                        str(breakdown.n),
                        *(f"{value:.3f}" for value in (breakdown.L, breakdown.T, breakdown.R)),
                        f"{breakdown.score:.3f}",
                    ]
                ],
            )
            if flags:
                self.stderr.write(f"Flags: {', '.join(flags)}")

    def score_corpus(self, options):
        with self.open_input(options["file"]) as stream:
            reader = RecordReader(stream)
            records = score_corpus(reader, genre=options["genre"], jobs=self.get_jobs(options))
            with self.open_output(options["out"]) as output:
                count = write_records(records, output)

        self.stderr.write(f"Scored {count} records.")
