import argparse
from pathlib import Path

from app.cloud_io import load_indices
from app.command.base import BaseCommand, CommandResult, add_format_argument, read_cloud
from app.exceptions import CloudWriteError
from app.report import report_metrics


_EVAL_DESCRIPTION = """Compare a processed cloud with its clean reference: Chamfer distance, size delta and optional outlier capture."""


class EvalCommand(BaseCommand):
    name: str = "eval"
    description: str = _EVAL_DESCRIPTION

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--clean", required=True, help="Clean reference cloud")
        parser.add_argument("--processed", required=True, help="Processed cloud")
        parser.add_argument(
            "--outliers", help="Index file of the outliers inside the processed cloud"
        )
        parser.add_argument("--indices", help="Index file of the selected key points")
        parser.add_argument("--output", help="Write the key=value report here")
        parser.add_argument("--csv", help="Also write the report as CSV")
        add_format_argument(parser)

    def execute(self, args: argparse.Namespace) -> CommandResult:
        report = report_metrics(
            read_cloud(args.clean, args),
            read_cloud(args.processed, args),
            outlier_indices=load_indices(args.outliers) if args.outliers else None,
            selected_indices=load_indices(args.indices) if args.indices else None,
        )
        text = report.to_text()
        try:
            if args.output:
                Path(args.output).write_text(text, encoding="utf-8")
            if args.csv:
                Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
        except OSError as e:
            raise CloudWriteError(f"Failed to write the report: {e}") from None
        return CommandResult(output=text.rstrip("\n"))
