"""Collection class for the CLI subcommands."""
import argparse
from typing import Dict

from pydantic import ValidationError

from app.command.base import (
    EXIT_DEGENERATE_GEOMETRY,
    EXIT_FAILURE,
    EXIT_PARAMETER_ERROR,
    EXIT_PARSE_ERROR,
    BaseCommand,
    CommandFailure,
    CommandResult,
)
from app.exceptions import (
    CloudFormatError,
    CommandError,
    DegenerateGeometryError,
    ParameterError,
    PointSPError,
)
from app.logger import logger


class CommandCollection:
    """A collection of defined commands."""

    def __init__(self, *commands: BaseCommand):
        self.commands = commands
        self.command_map: Dict[str, BaseCommand] = {c.name: c for c in commands}

    def build_parser(self, parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
        subparsers = parser.add_subparsers(dest="command", required=True)
        for command in self.commands:
            sub = subparsers.add_parser(command.name, help=command.description)
            command.add_arguments(sub)
        return parser

    def execute(self, *, name: str, args: argparse.Namespace) -> CommandResult:
        command = self.command_map.get(name)
        if not command:
            return CommandFailure(error=f"Command {name} is invalid")
        logger.info(f"Running command: {name}")
        try:
            return command(args)
        except CloudFormatError as e:
            return CommandFailure(error=str(e), exit_code=EXIT_PARSE_ERROR)
        except (ParameterError, ValidationError) as e:
            return CommandFailure(error=str(e), exit_code=EXIT_PARAMETER_ERROR)
        except DegenerateGeometryError as e:
            return CommandFailure(error=str(e), exit_code=EXIT_DEGENERATE_GEOMETRY)
        except CommandError as e:
            return CommandFailure(error=e.message, exit_code=EXIT_FAILURE)
        except OSError as e:
            return CommandFailure(error=str(e), exit_code=EXIT_FAILURE)
        except PointSPError as e:
            logger.exception(f"{name} failed")
            return CommandFailure(error=str(e), exit_code=EXIT_FAILURE)
