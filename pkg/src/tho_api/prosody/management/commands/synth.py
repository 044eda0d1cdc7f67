from tho_api.prosody.corpus import RecordReader, write_records
from tho_api.prosody.harness.clients import GeneratorSpec, make_generator
from tho_api.prosody.management.base import ProsodyCommand, positive_int
from tho_api.prosody.promptforge import DEBUG_TEMPLATE, DatasetBuilder, PromptTemplate
from tho_api.prosody.records import Mode


class Command(ProsodyCommand):
    """Build a prompt dataset from a (filtered) corpus.

    In ``text2poem`` mode each poem becomes a prompt rendered from the template,
    holding its genre, topic and keywords. In ``poem2poem`` mode the prompt is
    the poem written out as prose, optionally reworded by a paraphraser.
    """

    help = "Build prompt/completion records from a corpus."  # noqa: A003

    def add_arguments(self, parser):
        parser.add_argument(
            "--mode",
            choices=[mode.value for mode in Mode],
            default=Mode.TEXT2POEM.value,
            help="Generation pipeline to build prompts for (default: %(default)s).",
        )
        parser.add_argument(
            "--keywords",
            type=positive_int,
            default=None,
            help="Number of keywords per prompt (default: THO_KEYWORD_COUNT, 3).",
        )
        parser.add_argument(
            "--template",
            help="Prompt template file (default: THO_PROMPT_TEMPLATE_FILE).",
        )
        parser.add_argument(
            "--debug-template",
            action="store_true",
            help="Use the English debugging template.",
        )
        parser.add_argument(
            "--paraphraser",
            choices=["stub", "replay", "http"],
            help="Generator that rewords the poem-to-poem prompts.",
        )
        parser.add_argument("--in", dest="input", help="Corpus file (default: stdin).")
        parser.add_argument("--out", help="File for the prompt records (default: stdout).")
        parser.add_argument(
            "--skip-invalid",
            action="store_true",
            help="Skip malformed lines instead of stopping at the first one.",
        )
        self.add_jobs_argument(parser)

    def handle(self, *args, **options):
        if options["template"] and options["debug_template"]:
            self.usage_error("--template and --debug-template can't be combined")

        template = None
        if options["debug_template"]:
            template = DEBUG_TEMPLATE
        elif options["template"]:
            template = PromptTemplate.from_file(options["template"])

        paraphraser = None
        if options["paraphraser"]:
            paraphraser = make_generator(GeneratorSpec.from_settings(options["paraphraser"]))

        with self.open_input(options["input"]) as stream:
            reader = RecordReader(stream, strict=not options["skip_invalid"])
            builder = DatasetBuilder(
                reader,
                mode=options["mode"],
                k=options["keywords"],
                template=template,
                paraphraser=paraphraser,
                jobs=self.get_jobs(options),
            )
            with self.open_output(options["out"]) as output:
                count = write_records(builder, output)

        self.report_skipped(reader.errors)
        self.report_skipped([f"{item.id}: {item.reason}" for item in builder.skipped], "poem")
        self.stderr.write(f"Wrote {count} prompt records.")
