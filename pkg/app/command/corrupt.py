import argparse
from pathlib import Path

from app.command.base import (
    BaseCommand,
    CommandResult,
    add_format_argument,
    read_cloud,
    sibling_path,
    write_cloud,
)
from app.corruption import corrupt, parse_manifest
from app.exceptions import CommandError
from app.schema import CorruptionFamily, CorruptionSpec


_CORRUPT_DESCRIPTION = """Generate corrupted fixtures, either one spec from flags or a batch from a manifest file (family severity seed per line)."""


class CorruptCommand(BaseCommand):
    name: str = "corrupt"
    description: str = _CORRUPT_DESCRIPTION

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--input", required=True, help="Clean cloud file")
        parser.add_argument("--output", help="Corrupted cloud file (single spec)")
        parser.add_argument(
            "--family", choices=[f.value for f in CorruptionFamily], help="Corruption family"
        )
        parser.add_argument("--severity", type=int, help="Severity level 1..5")
        parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
        parser.add_argument("--manifest", help="Manifest of specs for batch generation")
        parser.add_argument("--output-dir", help="Directory for batch outputs")
        add_format_argument(parser)

    def execute(self, args: argparse.Namespace) -> CommandResult:
        cloud = read_cloud(args.input, args)

        if args.manifest:
            if not args.output_dir:
                raise CommandError("--manifest requires --output-dir")
            Path(args.output_dir).mkdir(parents=True, exist_ok=True)
            specs = parse_manifest(args.manifest)
            suffix = Path(args.input).suffix
            for spec in specs:
                tag = f"_{spec.family.value}_{spec.severity}_{spec.seed}{suffix}"
                write_cloud(
                    corrupt(cloud, spec), sibling_path(args.output_dir, args.input, tag), args
                )
            return CommandResult(
                output=f"Wrote {len(specs)} corrupted clouds to {args.output_dir}"
            )

        if not (args.output and args.family and args.severity is not None):
            raise CommandError(
                "Single-spec mode requires --output, --family and --severity"
            )
        spec = CorruptionSpec(family=args.family, severity=args.severity, seed=args.seed)
        corrupted = corrupt(cloud, spec)
        write_cloud(corrupted, args.output, args)
        return CommandResult(
            output=f"Corrupted ({spec}): {cloud.n_points} -> {corrupted.n_points} points"
        )
