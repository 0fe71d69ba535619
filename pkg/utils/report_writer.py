"""
Report emission in json, csv and text form, plus the spectrum CSV.

JSON keeps pydantic field order and Python's shortest round-trip float repr;
CSV and text print floats with 17 significant digits.
"""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Iterable, Optional, Union

from pydantic import BaseModel

from models.schemas import Report, SuiteSummary
from utils.errors import InputError

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")


def fmt(value: Optional[float]) -> str:
    return "" if value is None else format(value, ".17g")


def to_json(record: BaseModel) -> str:
    return json.dumps(record.model_dump(mode="json", by_alias=True), indent=2)


def _text_line(report: Report) -> str:
    status = "PASS" if report.passed else "FAIL"
    skipped = len(report.skipped)
    tail = f" skipped={skipped}" if skipped else ""
    return (f"{report.check:<16} {status}  max_residual={fmt(report.max_residual)} "
            f"tol={fmt(report.tol)} items={len(report.checked)}{tail}")


def render(record: Union[Report, SuiteSummary], format: str) -> str:
    if format not in FORMATS:
        raise InputError(f"unknown output format '{format}' (expected one of {', '.join(FORMATS)})")
    if format == "json":
        return to_json(record) + "\n"

    reports = record.reports if isinstance(record, SuiteSummary) else [record]
    if format == "text":
        lines = [_text_line(r) for r in reports]
        if isinstance(record, SuiteSummary):
            lines.extend(f"ERROR  {e}" for e in record.errors)
            lines.append(f"suite[{record.profile}] {record.passed_count}/{record.total} passed: "
                         f"{'PASS' if record.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["check", "item", "residual", "skipped", "reason"])
    for r in reports:
        for item in r.per_item:
            writer.writerow([r.check, item.item, fmt(item.residual), str(item.skipped).lower(), item.reason or ""])
    return buffer.getvalue()


def write_text(text: str, path: Optional[Union[str, Path]]):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror or e}")
    logger.info(f"Wrote {path}")


def emit(record: Union[Report, SuiteSummary], format: str = "text", path: Optional[Union[str, Path]] = None):
    """Render and write to path, or stdout when path is None."""
    write_text(render(record, format), path)


def write_spectrum_csv(eigenvalues: Iterable[float], path: Optional[Union[str, Path]] = None):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["index", "eigenvalue"])
    for k, value in enumerate(eigenvalues):
        writer.writerow([k, fmt(float(value))])
    write_text(buffer.getvalue(), path)


def write_json(record: BaseModel, path: Optional[Union[str, Path]] = None):
    write_text(to_json(record) + "\n", path)
