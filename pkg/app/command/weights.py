import argparse

from app.cloud_io import save_column
from app.command.base import (
    BaseCommand,
    CommandResult,
    add_format_argument,
    add_protocol_arguments,
    protocol_from_args,
    read_cloud,
)
from app.geometry.knn import build_neighbor_graph
from app.sampling.reweighting import filter_mask, isolation_rates, sampling_weights


_WEIGHTS_DESCRIPTION = """Compute per-point isolation rates and write them one per line, in input order."""


class WeightsCommand(BaseCommand):
    name: str = "weights"
    description: str = _WEIGHTS_DESCRIPTION

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--input", required=True, help="Input cloud file")
        parser.add_argument("--output", required=True, help="Isolation rate column file")
        parser.add_argument(
            "--sampling-output", help="Optional column file of sampling weights"
        )
        parser.add_argument(
            "--mask-output", help="Optional column file of the 0/1 FFPS mask"
        )
        add_format_argument(parser)
        add_protocol_arguments(parser, "k", "omega")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        protocol = protocol_from_args(args)
        cloud = read_cloud(args.input, args)
        wv = isolation_rates(build_neighbor_graph(cloud, protocol.k))
        save_column(args.output, wv.isolation)

        if args.sampling_output:
            weighted = sampling_weights(
                wv, protocol.weight_transform, protocol.softmax_temperature
            )
            save_column(args.sampling_output, weighted.sampling_weight)
        if args.mask_output:
            save_column(args.mask_output, filter_mask(wv, protocol.omega).mask, integer=True)

        return CommandResult(
            output=f"Wrote {wv.n_points} isolation rates to {args.output}"
        )
