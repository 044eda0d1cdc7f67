from django.core.management import CommandError

from tho_api.prosody.corpus import RecordReader
from tho_api.prosody.harness.evaluation import EvalResult
from tho_api.prosody.harness.reports import report
from tho_api.prosody.management.base import EXIT_DATA, ProsodyCommand
from tho_api.prosody.serializers import EvalRecordSerializer


class Command(ProsodyCommand):
    """Combine the result files of ``evaluate`` runs into one table.

    Each ``--in`` file gets the label at the same position of ``--labels``.
    Blind runs fill the "Blind" column of the row with the same label.
    """

    help = "Render the comparison table of evaluation results."  # noqa: A003

    def add_arguments(self, parser):
        parser.add_argument(
            "--in",
            dest="inputs",
            nargs="+",
            default=["-"],
            help="Evaluation result files, '-' is stdin (default: stdin).",
        )
        parser.add_argument(
            "--labels", nargs="+", required=True, help="Row label for each result file."
        )
        parser.add_argument("--out", help="Output file (default: stdout).")
        self.add_format_argument(parser, choices=("table", "csv"))

    def handle(self, *args, **options):
        if options["inputs"].count("-") > 1:
            self.usage_error("stdin can only be read once")

        results = []
        for path in options["inputs"]:
            try:
                with self.open_input(path) as stream:
                    reader = RecordReader(stream, serializer_class=EvalRecordSerializer)
                    results.append(EvalResult.from_dump(reader))
            except ValueError as e:
                raise CommandError(f"{path}: {e}", returncode=EXIT_DATA) from e
        table = report(results, options["labels"])

        output = table.to_csv() if options["format"] == "csv" else table.to_text()
        with self.open_output(options["out"]) as stream:
            stream.write(output)
