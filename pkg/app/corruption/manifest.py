from pathlib import Path
from typing import List, Union

from pydantic import ValidationError

from app.cloud_io import read_text_file
from app.exceptions import CloudFormatError
from app.schema import CorruptionSpec


PathLike = Union[str, Path]


def parse_manifest_text(text: str) -> List[CorruptionSpec]:
    """One ``family severity seed`` triple per line; ``#`` starts a comment."""
    specs = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        fields = line.split("#", 1)[0].split()
        if not fields:
            continue
        if len(fields) != 3:
            raise CloudFormatError(
                f"expected 'family severity seed', got {len(fields)} field(s)",
                line=line_number,
            )
        family, severity, seed = fields
        try:
            specs.append(
                CorruptionSpec(family=family, severity=int(severity), seed=int(seed))
            )
        except (ValueError, ValidationError) as e:
            raise CloudFormatError(str(e), line=line_number) from None
    return specs


def parse_manifest(path: PathLike) -> List[CorruptionSpec]:
    return parse_manifest_text(read_text_file(path))


def format_manifest(specs: List[CorruptionSpec]) -> str:
    return "".join(f"{spec}\n" for spec in specs)
