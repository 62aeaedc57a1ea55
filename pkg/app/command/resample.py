import argparse

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
from app.resampling.downsample import lgb_downsample
from app.resampling.resample import inference_resample, train_resample, upsample


_RESAMPLE_DESCRIPTION = """Restore a cloud to the canonical size, or apply an explicit up/down resample with --delta-n."""

_AUGMENT_DESCRIPTION = """Training-time resampling: resize the cloud by a random delta in [-rho*N, rho*N]."""


class ResampleCommand(BaseCommand):
    name: str = "resample"
    description: str = _RESAMPLE_DESCRIPTION

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--input", required=True, help="Input cloud file")
        parser.add_argument("--output", required=True, help="Output cloud file")
        parser.add_argument(
            "--delta-n",
            type=int,
            default=None,
            help="Points to add (positive) or remove (negative)",
        )
        add_format_argument(parser)
        add_protocol_arguments(parser, "k", "target_n", "seed", "downsample_mode")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        p = protocol_from_args(args)
        cloud = read_cloud(args.input, args)
        delta_n = args.delta_n

        if delta_n is None:
            resampled = inference_resample(cloud, p.target_n, p.seed, p.k)
        elif delta_n > 0:
            graph = build_neighbor_graph(cloud, min(p.k, cloud.n_points - 1))
            resampled = upsample(cloud, delta_n, graph, p.seed)
        elif delta_n < 0:
            resampled, _ = lgb_downsample(cloud, delta_n, p.seed, mode=p.downsample_mode)
        else:
            resampled = cloud

        write_cloud(resampled, args.output, args)
        return CommandResult(
            output=f"Resampled {cloud.n_points} -> {resampled.n_points} points"
        )


class AugmentCommand(BaseCommand):
    name: str = "augment"
    description: str = _AUGMENT_DESCRIPTION

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--input", required=True, help="Input cloud file")
        parser.add_argument("--output", required=True, help="Output cloud file")
        add_format_argument(parser)
        add_protocol_arguments(parser, "k", "rho", "seed", "downsample_mode")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        p = protocol_from_args(args)
        cloud = read_cloud(args.input, args)
        resampled = train_resample(cloud, p.rho, p.seed, p.k, p.downsample_mode)
        write_cloud(resampled, args.output, args)
        return CommandResult(
            output=f"Augmented {cloud.n_points} -> {resampled.n_points} points"
        )
