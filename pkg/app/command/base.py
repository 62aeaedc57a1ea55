import argparse
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field

from app.cloud_io import load_cloud, save_cloud
from app.config import DownsampleMode, ProtocolConfig, StartRule, TrainSampler, config
from app.schema import CloudFormat, PointCloud


# exit statuses, argparse itself uses 2 for usage errors
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE_ERROR = 3
EXIT_PARAMETER_ERROR = 4
EXIT_DEGENERATE_GEOMETRY = 5


class CommandResult(BaseModel):
    """Represents the result of a command execution."""

    output: Any = Field(default=None)
    error: Optional[str] = Field(default=None)
    exit_code: int = Field(default=EXIT_OK)


class CommandFailure(CommandResult):
    """A CommandResult that represents a failure."""

    exit_code: int = Field(default=EXIT_FAILURE)


class BaseCommand(ABC, BaseModel):
    name: str
    description: str

    class Config:
        arbitrary_types_allowed = True

    def __call__(self, args: argparse.Namespace) -> CommandResult:
        """Execute the command with parsed arguments."""
        return self.execute(args)

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare the command's flags."""

    @abstractmethod
    def execute(self, args: argparse.Namespace) -> CommandResult:
        """Execute the command with parsed arguments."""


def add_format_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=[f.value for f in CloudFormat],
        default=None,
        help="Cloud file format (default: from the file suffix)",
    )


def add_protocol_arguments(parser: argparse.ArgumentParser, *names: str) -> None:
    """Protocol flags; defaults stay None so the config file supplies them."""
    defaults = config.protocol
    flags = {
        "k": dict(type=int, help=f"Neighbor count (default: {defaults.k})"),
        "omega": dict(
            type=float, help=f"FFPS quantile threshold (default: {defaults.omega})"
        ),
        "rho": dict(
            type=float, help=f"Training size-jitter fraction (default: {defaults.rho})"
        ),
        "target_n": dict(
            type=int, help=f"Canonical cloud size (default: {defaults.target_n})"
        ),
        "m": dict(type=int, help=f"Number of key points (default: {defaults.m})"),
        "seed": dict(type=int, help=f"Random seed (default: {defaults.seed})"),
        "start_rule": dict(
            choices=[r.value for r in StartRule],
            help=f"FPS start policy (default: {defaults.start_rule.value})",
        ),
        "train_sampler": dict(
            choices=[s.value for s in TrainSampler],
            help=f"Training key point sampler (default: {defaults.train_sampler.value})",
        ),
        "downsample_mode": dict(
            choices=[m.value for m in DownsampleMode],
            help=f"Training point removal policy (default: {defaults.downsample_mode.value})",
        ),
    }
    for name in names:
        parser.add_argument(f"--{name.replace('_', '-')}", default=None, **flags[name])


def protocol_from_args(args: argparse.Namespace) -> ProtocolConfig:
    overrides = {
        name: getattr(args, name)
        for name in ProtocolConfig.model_fields
        if getattr(args, name, None) is not None
    }
    return ProtocolConfig(**{**config.protocol.model_dump(), **overrides})


def read_cloud(path: str, args: argparse.Namespace) -> PointCloud:
    return load_cloud(path, getattr(args, "format", None))


def write_cloud(cloud: PointCloud, path: str, args: argparse.Namespace) -> None:
    save_cloud(cloud, path, getattr(args, "format", None))


def sibling_path(directory: str, source: str, suffix: str) -> Path:
    """``directory/<stem of source><suffix>``"""
    return Path(directory) / f"{Path(source).stem}{suffix}"
