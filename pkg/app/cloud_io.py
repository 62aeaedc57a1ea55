"""Text point-cloud formats and column files.

Two cloud formats are supported: whitespace separated ``xyz`` rows of 3
(points) or 6 (points and normals) floats, and ASCII PLY with ``x y z`` and
optional ``nx ny nz`` vertex properties. Row order is index order.
"""

import io
from pathlib import Path
from typing import Iterable, List, Optional, Union

import numpy as np
from plyfile import (
    PlyData,
    PlyElement,
    PlyElementParseError,
    PlyHeaderParseError,
    PlyParseError,
)

from app.exceptions import CloudFormatError, CloudWriteError, ParameterError
from app.logger import logger
from app.schema import CloudFormat, PointCloud


PathLike = Union[str, Path]

NORMAL_RENORMALIZE_WARNING = 1e-3
_FLOAT_FORMAT = "{:.9g}"
_NORMAL_PROPERTIES = ("nx", "ny", "nz")


def infer_format(path: PathLike, fmt: Optional[CloudFormat] = None) -> CloudFormat:
    if fmt is not None:
        return CloudFormat(fmt)
    return CloudFormat.PLY_ASCII if Path(path).suffix.lower() == ".ply" else CloudFormat.XYZ


def read_text_file(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise CloudFormatError(f"cannot read {path}: {e}") from None


def _parse_floats(tokens: List[str], line_number: int) -> List[float]:
    try:
        values = [float(token) for token in tokens]
    except ValueError:
        raise CloudFormatError(
            f"non-numeric value in {' '.join(tokens)!r}", line=line_number
        ) from None
    if not all(np.isfinite(values)):
        raise CloudFormatError("non-finite coordinate", line=line_number)
    return values


def _build_cloud(rows, has_normals: bool) -> PointCloud:
    data = np.asarray(rows, dtype=np.float64).reshape(-1, 6 if has_normals else 3)
    if not has_normals:
        return PointCloud(points=data)

    normals = data[:, 3:]
    norms = np.linalg.norm(normals, axis=1)
    if np.any(norms == 0.0):
        raise CloudFormatError(f"zero-length normal at row {int(np.argmin(norms)) + 1}")
    if np.any(np.abs(norms - 1.0) > NORMAL_RENORMALIZE_WARNING):
        logger.warning("Some normals are not unit length; normalizing them on load")
    return PointCloud(points=data[:, :3], normals=normals / norms[:, None])


def parse_xyz(text: str) -> PointCloud:
    rows = []
    width = None
    for line_number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) not in (3, 6):
            raise CloudFormatError(
                f"expected 3 or 6 columns, got {len(tokens)}", line=line_number
            )
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise CloudFormatError(
                f"mixed column counts: {len(tokens)} after {width}", line=line_number
            )
        rows.append(_parse_floats(tokens, line_number))
    return _build_cloud(rows, has_normals=width == 6)


def _body_line(text: str, element: Optional[str], row: Optional[int]) -> Optional[int]:
    """File line holding ``row`` of ``element``; assumes one row per line."""
    if element is None or row is None:
        return None
    offset, found = 0, False
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if tokens == ["end_header"]:
            return number + offset + row + 1 if found else None
        if len(tokens) == 3 and tokens[0] == "element" and not found:
            if tokens[1] == element:
                found = True
            elif tokens[2].isdigit():
                offset += int(tokens[2])
    return None


def parse_ply_ascii(text: str) -> PointCloud:
    try:
        ply = PlyData.read(io.BytesIO(text.encode("utf-8")))
    except PlyHeaderParseError as e:
        message = getattr(e, "message", str(e))
        raise CloudFormatError(f"bad PLY header: {message}", line=getattr(e, "line", None)) from None
    except PlyElementParseError as e:
        element = getattr(e.element, "name", None)
        message = getattr(e, "message", str(e))
        raise CloudFormatError(
            f"bad PLY body: {message}", line=_body_line(text, element, e.row)
        ) from None
    except (PlyParseError, ValueError) as e:
        raise CloudFormatError(f"bad PLY file: {e}") from None

    if not ply.text:
        raise CloudFormatError("only ASCII PLY is supported")
    if "vertex" not in ply:
        raise CloudFormatError("no vertex element in header")
    vertex = ply["vertex"].data
    names = vertex.dtype.names
    for axis in ("x", "y", "z"):
        if axis not in names:
            raise CloudFormatError(f"vertex element lacks property {axis!r}")

    has_normals = all(p in names for p in _NORMAL_PROPERTIES)
    columns = ["x", "y", "z"] + (list(_NORMAL_PROPERTIES) if has_normals else [])
    data = np.stack([vertex[c].astype(np.float64) for c in columns], axis=1)
    finite = np.isfinite(data).all(axis=1)
    if not finite.all():
        raise CloudFormatError(
            "non-finite coordinate", line=_body_line(text, "vertex", int(np.argmin(finite)))
        )
    return _build_cloud(data, has_normals)


def load_cloud(path: PathLike, fmt: Optional[CloudFormat] = None) -> PointCloud:
    fmt = infer_format(path, fmt)
    text = read_text_file(path)
    cloud = parse_xyz(text) if fmt == CloudFormat.XYZ else parse_ply_ascii(text)
    logger.debug(f"Loaded {cloud.n_points} points from {path}")
    return cloud


def _ply_text(cloud: PointCloud) -> str:
    columns = ["x", "y", "z"] + (list(_NORMAL_PROPERTIES) if cloud.has_normals else [])
    vertex = np.empty(cloud.n_points, dtype=[(c, "f8") for c in columns])
    for axis, name in enumerate(columns[:3]):
        vertex[name] = cloud.points[:, axis]
    if cloud.has_normals:
        for axis, name in enumerate(_NORMAL_PROPERTIES):
            vertex[name] = cloud.normals[:, axis]

    buffer = io.BytesIO()
    PlyData([PlyElement.describe(vertex, "vertex")], text=True).write(buffer)
    return buffer.getvalue().decode("ascii")


def format_cloud(cloud: PointCloud, fmt: CloudFormat) -> str:
    if CloudFormat(fmt) == CloudFormat.PLY_ASCII:
        return _ply_text(cloud)

    data = cloud.points
    if cloud.has_normals:
        data = np.hstack([cloud.points, cloud.normals])
    return "".join(" ".join(_FLOAT_FORMAT.format(v) for v in row) + "\n" for row in data)


def _write_text(path: PathLike, content: str) -> None:
    try:
        Path(path).write_text(content, encoding="utf-8")
    except OSError as e:
        raise CloudWriteError(f"Failed to write to {path}: {e}") from None


def save_cloud(
    cloud: PointCloud, path: PathLike, fmt: Optional[CloudFormat] = None
) -> None:
    if cloud.n_points == 0:
        raise ParameterError("Refusing to save an empty cloud")
    _write_text(path, format_cloud(cloud, infer_format(path, fmt)))


def save_column(path: PathLike, values: Iterable, integer: bool = False) -> None:
    """One value per line: indices as integers, weights with 9 significant digits."""
    if integer:
        lines = (f"{int(v)}\n" for v in values)
    else:
        lines = (_FLOAT_FORMAT.format(float(v)) + "\n" for v in values)
    _write_text(path, "".join(lines))


def load_indices(path: PathLike) -> List[int]:
    indices = []
    for line_number, line in enumerate(read_text_file(path).splitlines(), start=1):
        token = line.strip()
        if not token:
            continue
        try:
            indices.append(int(token))
        except ValueError:
            raise CloudFormatError(f"not an integer index: {token!r}", line=line_number) from None
    return indices
