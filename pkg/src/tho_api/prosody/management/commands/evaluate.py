from tho_api.prosody.corpus import RecordReader, write_records
from tho_api.prosody.harness.clients import GeneratorSpec
from tho_api.prosody.harness.evaluation import evaluate
from tho_api.prosody.harness.reports import format_score
from tho_api.prosody.management.base import ProsodyCommand, positive_int
from tho_api.prosody.promptforge import DEBUG_TEMPLATE, PromptTemplate
from tho_api.prosody.serializers import PromptRecordSerializer


class Command(ProsodyCommand):
    """Run the prompts of a test set through a generator, and score the poems it writes.

    The per-record results are written to ``--out`` as line-delimited records,
    which the ``report`` command reads. A summary is printed afterwards.
    """

    help = "Evaluate a text generator on a prompt test set."  # noqa: A003

    def add_arguments(self, parser):
        parser.add_argument(
            "--generator",
            choices=["stub", "replay", "http"],
            default="stub",
            help="Generator backend (default: %(default)s).",
        )
        parser.add_argument("--testset", help="Prompt records file (default: stdin).")
        parser.add_argument(
            "--blind",
            action="store_true",
            help="Remove the genre from the prompts, and detect the genre of the output.",
        )
        parser.add_argument("--out", help="File for the per-record results (default: stdout).")
        parser.add_argument(
            "--parallelism",
            type=positive_int,
            default=None,
            help="Concurrent generator requests (default: THO_GENERATOR_PARALLELISM, 4).",
        )
        parser.add_argument("--endpoint", help="Completion endpoint URL of the http generator.")
        parser.add_argument("--model", help="Model name sent to the http generator.")
        parser.add_argument(
            "--template",
            help="Template the prompts were rendered from, for masking the genre.",
        )
        parser.add_argument(
            "--debug-template",
            action="store_true",
            help="The prompts were rendered from the English debugging template.",
        )
        self.add_format_argument(parser)

    def handle(self, *args, **options):
        template = None
        if options["debug_template"]:
            template = DEBUG_TEMPLATE
        elif options["template"]:
            template = PromptTemplate.from_file(options["template"])

        spec = GeneratorSpec.from_settings(
            options["generator"], endpoint=options["endpoint"], model=options["model"]
        )

        with self.open_input(options["testset"]) as stream:
            testset = list(RecordReader(stream, serializer_class=PromptRecordSerializer))

        result = evaluate(
            testset,
            spec,
            blind=options["blind"],
            parallelism=options["parallelism"],
            template=template,
        )
        with self.open_output(options["out"]) as output:
            write_records(result.records, output)

        failed = [f"{record.id}: {record.error}" for record in result.records if record.failed]
        self.report_skipped(failed, "failed record")

        summary_stream = self.stdout if options["out"] not in (None, "-") else self.stderr
        if options["format"] == "json":
            self.write_json(result.as_dict(), stream=summary_stream)
        else:
            rows = [[genre.value, format_score(mean)] for genre, mean in result.means.items()]
            rows.append(["all", format_score(result.mean)])
            rows.append(["keyword coverage", format_score(result.mean_coverage)])
            self.write_table(["genre", "mean score"], rows, stream=summary_stream)
