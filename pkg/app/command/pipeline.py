import argparse
import asyncio
from pathlib import Path
from typing import List, Optional

from app.cloud_io import save_column
from app.command.base import (
    BaseCommand,
    CommandResult,
    add_format_argument,
    add_protocol_arguments,
    protocol_from_args,
    read_cloud,
    sibling_path,
    write_cloud,
)
from app.config import ProtocolConfig
from app.exceptions import CommandError
from app.pipeline import PipelineFactory, PipelineMode, PipelineResult
from app.rng import STREAM_FILE, derive_seed


_PIPELINE_DESCRIPTION = """Run the training-mode or inference-mode protocol end to end. Several inputs are processed concurrently with per-file seeds."""


class PipelineCommand(BaseCommand):
    name: str = "pipeline"
    description: str = _PIPELINE_DESCRIPTION

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--mode",
            choices=[m.value for m in PipelineMode],
            required=True,
            help="Protocol to run",
        )
        parser.add_argument("--input", nargs="+", required=True, help="Input cloud file(s)")
        parser.add_argument("--output", help="Prepared cloud file (single input)")
        parser.add_argument("--indices", help="Key point index file (single input)")
        parser.add_argument("--weights", help="Isolation rate file (single input)")
        parser.add_argument(
            "--output-dir",
            help="Directory for batch outputs: <stem><ext>, <stem>.indices.txt, <stem>.weights.txt",
        )
        add_format_argument(parser)
        add_protocol_arguments(
            parser,
            "k",
            "omega",
            "rho",
            "target_n",
            "m",
            "seed",
            "start_rule",
            "train_sampler",
            "downsample_mode",
        )

    def _write(
        self,
        result: PipelineResult,
        args: argparse.Namespace,
        output: Optional[str],
        indices: Optional[str],
        weights: Optional[str],
    ) -> None:
        if output:
            write_cloud(result.cloud, output, args)
        if indices:
            save_column(indices, result.keypoints.indices, integer=True)
        if weights and result.weights is not None:
            save_column(weights, result.weights.isolation)

    def _run_one(
        self, path: str, protocol: ProtocolConfig, args: argparse.Namespace
    ) -> PipelineResult:
        pipeline = PipelineFactory.create_pipeline(PipelineMode(args.mode), protocol)
        return pipeline.execute(read_cloud(path, args))

    async def _run_batch(
        self, protocol: ProtocolConfig, args: argparse.Namespace
    ) -> List[PipelineResult]:
        tasks = [
            asyncio.to_thread(
                self._run_one,
                path,
                protocol.model_copy(
                    update={"seed": derive_seed(protocol.seed, STREAM_FILE, index)}
                ),
                args,
            )
            for index, path in enumerate(args.input)
        ]
        return await asyncio.gather(*tasks)

    def execute(self, args: argparse.Namespace) -> CommandResult:
        protocol = protocol_from_args(args)

        if len(args.input) == 1 and not args.output_dir:
            if not (args.output or args.indices):
                raise CommandError("Give --output and/or --indices for a single input")
            result = self._run_one(args.input[0], protocol, args)
            self._write(result, args, args.output, args.indices, args.weights)
            return CommandResult(
                output=f"{args.mode} pipeline: {result.cloud.n_points} points, "
                f"{len(result.keypoints.indices)} key points"
            )

        if not args.output_dir:
            raise CommandError("Several inputs require --output-dir")
        Path(args.output_dir).mkdir(parents=True, exist_ok=True)
        results = asyncio.run(self._run_batch(protocol, args))
        for path, result in zip(args.input, results):
            self._write(
                result,
                args,
                sibling_path(args.output_dir, path, Path(path).suffix),
                sibling_path(args.output_dir, path, ".indices.txt"),
                sibling_path(args.output_dir, path, ".weights.txt"),
            )
        return CommandResult(
            output=f"{args.mode} pipeline: processed {len(results)} clouds into {args.output_dir}"
        )
