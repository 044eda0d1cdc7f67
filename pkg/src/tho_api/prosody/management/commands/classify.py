from tho_api.prosody.classifier import LengthSignature, classify_with_fit, fit_scores
from tho_api.prosody.management.base import ProsodyCommand
from tho_api.prosody.scoring import Poem


class Command(ProsodyCommand):
    help = "Detect the genre of a poem from its line lengths."  # noqa: A003

    def add_arguments(self, parser):
        parser.add_argument("file", nargs="?", help="Poem text file (default: stdin)")
        parser.add_argument(
            "--all", action="store_true", help="Also list the fit of every candidate genre."
        )
        self.add_format_argument(parser)

    def handle(self, *args, **options):
        with self.open_input(options["file"]) as stream:
            poem = Poem.from_text(stream.read())

        sig = LengthSignature.from_poem(poem)
        genre, fit = classify_with_fit(sig)

        if options["format"] == "json":
            data = {"genre": genre.value, "fit": fit, "signature": str(sig)}
            if options["all"]:
                data["fits"] = {label.value: value for label, value in fit_scores(sig).items()}
            self.write_json(data)
        else:
            self.write_table(
                ["genre", "fit", "signature"], [[genre.value, f"{fit:.3f}", str(sig)]]
            )
            if options["all"]:
                self.stdout.write("")
                self.write_table(
                    ["candidate", "fit"],
                    [[label.value, f"{value:.3f}"] for label, value in fit_scores(sig).items()],
                )
