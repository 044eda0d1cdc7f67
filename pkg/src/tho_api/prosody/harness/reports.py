"""Comparison tables of evaluation results.

Each row is a model (or configuration), each column a genre, plus the "Blind" column
with the overall mean of the blind run. Rows are grouped per generation mode.
Cells without a result show ``-``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional, Union

from rest_framework_csv.renderers import CSVRenderer

from ..exceptions import LengthMismatch
from ..genres import GenreLabel
from ..records import Mode
from .evaluation import EvalResult

BLIND = "Blind"
MISSING = "-"
LABEL_HEADER = "Models"

# Column title -> genre, in the order of the table.
COLUMNS: dict[str, Optional[GenreLabel]] = {
    GenreLabel.LUC_BAT.display_name: GenreLabel.LUC_BAT,
    BLIND: None,
    GenreLabel.CHU_7.display_name: GenreLabel.CHU_7,
    GenreLabel.CHU_8.display_name: GenreLabel.CHU_8,
    GenreLabel.CHU_5.display_name: GenreLabel.CHU_5,
    GenreLabel.CHU_4.display_name: GenreLabel.CHU_4,
}


def format_score(value: Optional[float]) -> str:
    return MISSING if value is None else f"{value:.3f}"


def render_table(header: Sequence[str], rows: Sequence[Union[Sequence[str], str]]) -> str:
    """Render a plain text table. A row given as a single string is a section title."""
    widths = [len(title) for title in header]
    for row in rows:
        if not isinstance(row, str):
            widths = [max(width, len(cell)) for width, cell in zip(widths, row)]

    def _line(cells: Sequence[str]) -> str:
        return " | ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()

    lines = [_line(header), "-+-".join("-" * width for width in widths)]
    for row in rows:
        lines.append(row if isinstance(row, str) else _line(row))
    return "\n".join(lines) + "\n"


@dataclass
class ReportRow:
    label: str
    mode: Mode
    cells: dict[str, Optional[float]] = field(default_factory=dict)

    def values(self) -> list[str]:
        return [format_score(self.cells.get(column)) for column in COLUMNS]


@dataclass
class Report:
    rows: list[ReportRow] = field(default_factory=list)

    def _get_row(self, label: str, mode: Mode) -> ReportRow:
        for row in self.rows:
            if row.label == label and row.mode is mode:
                return row
        row = ReportRow(label=label, mode=mode)
        self.rows.append(row)
        return row

    def add(self, result: EvalResult, label: str):
        row = self._get_row(label, result.mode)
        if result.blind:
            row.cells[BLIND] = result.mean
        else:
            for column, genre in COLUMNS.items():
                if genre is not None and genre in result.means:
                    row.cells[column] = result.means[genre]

    def _sorted_rows(self) -> list[ReportRow]:
        # Group by mode, keeping the order of the labels within a mode.
        return sorted(self.rows, key=lambda row: list(Mode).index(row.mode))

    def to_text(self) -> str:
        """The human readable table."""
        rows = []
        mode = None
        for row in self._sorted_rows():
            if row.mode is not mode:
                mode = row.mode
                rows.append(mode.display_name)
            rows.append([row.label, *row.values()])
        return render_table([LABEL_HEADER, *COLUMNS], rows)

    def to_csv(self) -> str:
        """The machine readable table."""
        header = ["mode", "label", *COLUMNS]
        data = [
            {"mode": row.mode.value, "label": row.label, **dict(zip(COLUMNS, row.values()))}
            for row in self._sorted_rows()
        ]
        output = CSVRenderer().render(data, renderer_context={"header": header})
        return output.decode() if isinstance(output, bytes) else output


def report(results: Sequence[EvalResult], labels: Sequence[str]) -> Report:
    """Combine evaluation results into one comparison table.

    A blind result fills the "Blind" column of the row with the same label.

    :raises LengthMismatch: When the number of labels differs from the number of results.
    """
    if len(results) != len(labels):
        raise LengthMismatch(f"Got {len(results)} results, but {len(labels)} labels")

    table = Report()
    for result, label in zip(results, labels):
        table.add(result, label)
    return table
