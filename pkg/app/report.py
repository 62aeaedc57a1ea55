import csv
import io
from typing import List, Optional, Sequence

from pydantic import BaseModel, Field

from app.geometry.metrics import chamfer_distance
from app.schema import PointCloud


class MetricsReport(BaseModel):
    """Fidelity of a processed cloud against its clean reference."""

    chamfer: float = Field(..., description="Symmetric Chamfer distance")
    clean_points: int
    processed_points: int
    size_delta: int = Field(..., description="processed size minus clean size")
    key_points: Optional[int] = Field(None, description="Number of selected key points")
    outliers: Optional[int] = Field(None, description="Outlier indices in the manifest")
    outlier_captured: Optional[int] = Field(
        None, description="Selected key points that are listed outliers"
    )

    def items(self) -> List[tuple]:
        return [(k, v) for k, v in self.model_dump().items() if v is not None]

    def to_text(self) -> str:
        """``key=value`` lines in field order."""
        lines = []
        for key, value in self.items():
            text = f"{value:.9g}" if isinstance(value, float) else str(value)
            lines.append(f"{key}={text}\n")
        return "".join(lines)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        rows = self.items()
        writer.writerow([key for key, _ in rows])
        writer.writerow(
            [f"{v:.9g}" if isinstance(v, float) else v for _, v in rows]
        )
        return buffer.getvalue()


def report_metrics(
    clean: PointCloud,
    processed: PointCloud,
    outlier_indices: Optional[Sequence[int]] = None,
    selected_indices: Optional[Sequence[int]] = None,
) -> MetricsReport:
    """Chamfer distance, size delta and, with both index lists, outlier capture.

    ``outlier_indices`` and ``selected_indices`` refer to points of ``processed``.
    """
    captured = None
    if outlier_indices is not None and selected_indices is not None:
        captured = len(set(outlier_indices) & set(selected_indices))
    return MetricsReport(
        chamfer=chamfer_distance(clean, processed),
        clean_points=clean.n_points,
        processed_points=processed.n_points,
        size_delta=processed.n_points - clean.n_points,
        key_points=len(selected_indices) if selected_indices is not None else None,
        outliers=len(outlier_indices) if outlier_indices is not None else None,
        outlier_captured=captured,
    )
