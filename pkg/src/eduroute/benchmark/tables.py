"""Per-level accuracy tables: aligned text for eyes, CSV twin for machines."""

from __future__ import annotations

from typing import Mapping, Sequence

from ..errors import ValidationError
from .harness import SubjectReport
from .suite import Level

PRIMARY_SUBJECTS = ("Chinese", "Mathematics", "English", "Science", "Ethics")
MIDDLE_SUBJECTS = (
    "Chinese", "Mathematics", "English", "Physics", "Chemistry",
    "Biology", "Politics", "History", "Geography",
)
HIGH_SUBJECTS = MIDDLE_SUBJECTS

LEVEL_SUBJECTS: dict[Level, tuple[str, ...]] = {
    Level.PRIMARY: PRIMARY_SUBJECTS,
    Level.MIDDLE: MIDDLE_SUBJECTS,
    Level.HIGH: HIGH_SUBJECTS,
}

Row = tuple[str, Mapping[str, float]]  # (model name, subject -> accuracy %)


def reports_to_row(name: str, reports: Sequence[SubjectReport], level: Level) -> Row:
    cells = {r.subject: r.accuracy for r in reports if r.level is level}
    if not cells:
        raise ValidationError(f"no reports for level {level.value}")
    return name, cells


def _subjects_for(rows: Sequence[Row], level: Level, subjects: Sequence[str] | None) -> list[str]:
    if subjects is None:
        canonical = LEVEL_SUBJECTS[level]
        present = {s for _, cells in rows for s in cells}
        subjects = [s for s in canonical if s in present]
        subjects += sorted(s for s in present if s not in canonical)
    if not subjects:
        raise ValidationError("no subjects to tabulate")
    return list(subjects)


def _cell(cells: Mapping[str, float], subject: str) -> str:
    return f"{cells[subject]:.1f}" if subject in cells else "-"


def format_table(rows: Sequence[Row], level: Level, subjects: Sequence[str] | None = None) -> str:
    """Aligned text table: one row per model/run, one column per subject."""
    if not rows:
        raise ValidationError("no rows to tabulate")
    columns = _subjects_for(rows, level, subjects)
    header = ["Model"] + columns
    body = [[name] + [_cell(cells, s) for s in columns] for name, cells in rows]
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    def fmt(line: list[str]) -> str:
        cells = [line[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(line[1:], widths[1:])]
        return "  ".join(cells)
    rule = "-" * (sum(widths) + 2 * (len(widths) - 1))
    return "\n".join([fmt(header), rule] + [fmt(line) for line in body])


def format_csv(rows: Sequence[Row], level: Level, subjects: Sequence[str] | None = None) -> str:
    """Machine-readable twin of format_table (same cells, comma-separated)."""
    if not rows:
        raise ValidationError("no rows to tabulate")
    columns = _subjects_for(rows, level, subjects)
    lines = [",".join(["model"] + columns)]
    for name, cells in rows:
        lines.append(",".join([name] + [_cell(cells, s) for s in columns]))
    return "\n".join(lines) + "\n"
