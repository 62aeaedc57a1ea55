from app.command.base import BaseCommand, CommandFailure, CommandResult
from app.command.command_collection import CommandCollection
from app.command.corrupt import CorruptCommand
from app.command.evaluate import EvalCommand
from app.command.pipeline import PipelineCommand
from app.command.resample import AugmentCommand, ResampleCommand
from app.command.sample import SampleCommand
from app.command.weights import WeightsCommand


def default_commands() -> CommandCollection:
    return CommandCollection(
        WeightsCommand(),
        SampleCommand(),
        ResampleCommand(),
        AugmentCommand(),
        CorruptCommand(),
        PipelineCommand(),
        EvalCommand(),
    )


__all__ = [
    "BaseCommand",
    "CommandCollection",
    "CommandFailure",
    "CommandResult",
    "default_commands",
]
