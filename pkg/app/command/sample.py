import argparse

from app.cloud_io import save_column
from app.command.base import (
    BaseCommand,
    CommandResult,
    add_format_argument,
    add_protocol_arguments,
    protocol_from_args,
    read_cloud,
    write_cloud,
)
from app.geometry.knn import build_neighbor_graph
from app.sampling.keypoints import ffps, fps, resolve_start, sws
from app.sampling.reweighting import filter_mask, isolation_rates, sampling_weights
from app.schema import SampleMethod


_SAMPLE_DESCRIPTION = """Select key points with FPS, filtered FPS or stochastic weighted sampling."""


class SampleCommand(BaseCommand):
    name: str = "sample"
    description: str = _SAMPLE_DESCRIPTION

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--input", required=True, help="Input cloud file")
        parser.add_argument("--output", required=True, help="Key point index file")
        parser.add_argument(
            "--method",
            choices=[m.value for m in SampleMethod],
            default=SampleMethod.FFPS.value,
            help="Sampling method (default: ffps)",
        )
        parser.add_argument(
            "--start", type=int, default=None, help="Explicit FPS start index"
        )
        parser.add_argument("--subcloud", help="Optional file for the key point cloud")
        add_format_argument(parser)
        add_protocol_arguments(parser, "k", "omega", "m", "seed", "start_rule")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        p = protocol_from_args(args)
        cloud = read_cloud(args.input, args)
        method = SampleMethod(args.method)

        if method == SampleMethod.FPS:
            start = args.start
            if start is None:
                start = resolve_start(cloud, None, p.start_rule, p.seed)
            result = fps(cloud, p.m, start)
        else:
            wv = isolation_rates(build_neighbor_graph(cloud, p.k))
            if method == SampleMethod.FFPS:
                result = ffps(
                    cloud,
                    filter_mask(wv, p.omega),
                    p.m,
                    p.start_rule,
                    start=args.start,
                    seed=p.seed,
                )
            else:
                weighted = sampling_weights(wv, p.weight_transform, p.softmax_temperature)
                result = sws(cloud, weighted, p.m, p.seed)

        save_column(args.output, result.indices, integer=True)
        if args.subcloud:
            write_cloud(cloud.select(result.indices), args.subcloud, args)
        return CommandResult(
            output=f"Selected {len(result.indices)} key points with {method.value}"
        )
