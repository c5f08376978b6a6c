"""
Module Name: report_writer

Deterministic serialization of analysis reports.

This module provides:
- JSON rendering with a fixed key order and 17-significant-digit floats
- CSV export of flat per-point records
- Safe writing to files (or stdout) with post-save validation

Two runs over the same problem produce byte-identical output.

Example:
    >>> from src.storage import ReportWriter
    >>> writer = ReportWriter(logger=logger)
    >>> path = writer.save(report, "out/sphere.json", "json")
"""

import csv
import dataclasses
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Final, List

import numpy as np
from marshmallow import Schema, fields, post_dump

from src.config.problem_config import ToleranceSchema
from src.errors.storage import *
from src.models import Report, ToleranceConfig

FLOAT_FORMAT: Final[str] = ".17g"
SUPPORTED_FORMATS: Final[tuple] = ("json", "csv")
REPORT_KEYS: Final[tuple] = ("version", "command", "convention", "hypersurface", "results", "summary")
JSON_INDENT: Final[int] = 2
TOLERANCE_KEYS: Final[tuple] = tuple(f.name for f in dataclasses.fields(ToleranceConfig))


class OrderedDumpSchema(Schema):
    """Dumps its keys in `key_order`; keys missing from the object are left out."""
    key_order: tuple = ()

    @post_dump
    def in_key_order(self, data: Dict[str, Any], **kwargs) -> Dict[str, Any]:
        return {key: data[key] for key in self.key_order if key in data}


class ConventionSchema(OrderedDumpSchema):
    key_order = ("theta", "sign", "tolerances")

    theta = fields.String()
    sign = fields.Integer()
    tolerances = fields.Nested(ToleranceSchema)

    @post_dump
    def in_key_order(self, data: Dict[str, Any], **kwargs) -> Dict[str, Any]:
        data = super().in_key_order(data)
        if "tolerances" in data:
            data["tolerances"] = {key: data["tolerances"][key] for key in TOLERANCE_KEYS if key in data["tolerances"]}
        return data


class HypersurfaceSchema(OrderedDumpSchema):
    key_order = ("rho", "N")

    rho = fields.String()
    N = fields.Integer()


class ReportSchema(OrderedDumpSchema):
    """Top-level layout of a report document, in output order."""
    key_order = REPORT_KEYS

    version = fields.String()
    command = fields.String()
    convention = fields.Nested(ConventionSchema)
    hypersurface = fields.Nested(HypersurfaceSchema)
    # per-command blocks, serialized by _plain
    results = fields.List(fields.Raw())
    summary = fields.Dict(keys=fields.String())


def format_float(value: float) -> str:
    """17 significant digits; -0.0 prints as 0, non-finite values as null."""
    if not math.isfinite(value):
        return "null"
    if value == 0.0:
        value = 0.0
    text = format(value, FLOAT_FORMAT)
    if "e" not in text and "." not in text and "n" not in text:
        text += ".0"
    return text


def _plain(value: Any) -> Any:
    """Turns numpy scalars, arrays, complex numbers and enums into JSON-ready values."""
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (np.floating, np.integer, np.bool_, np.complexfloating)):
        return _plain(value.item())
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _render_json(value: Any, depth: int = 0) -> str:
    pad = " " * (JSON_INDENT * (depth + 1))
    end = " " * (JSON_INDENT * depth)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_render_json(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in value):
            return "[" + ", ".join(_render_json(v, depth + 1) for v in value) + "]"
        items = [pad + _render_json(v, depth + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def render_json(report: Report) -> str:
    dumped = ReportSchema().dump(report)
    document = _plain({key: dumped[key] for key in REPORT_KEYS})
    return _render_json(document) + "\n"


def _csv_cell(value: Any) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, list):
        return " ".join(_csv_cell(v) for v in value)
    return str(value)


def render_csv(report: Report) -> str:
    """One row per record; columns in first-seen order across records."""
    columns: List[str] = []
    for record in report.records:
        columns.extend(k for k in record if k not in columns)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in report.records:
        writer.writerow([_csv_cell(record.get(c)) for c in columns])
    return buffer.getvalue()


class ReportWriter:
    """
    Renders reports and writes them to disk.

    Attributes:
        logger (logging.Logger): Logger instance for logging messages.
        encoding (str): File encoding (always utf-8 for reports).
    """

    def __init__(self, logger: logging.Logger, encoding: str = "utf-8") -> None:
        self.logger = logger
        self.encoding = encoding

    def render(self, report: Report, fmt: str = "json") -> str:
        """
        Renders a report in the requested format.

        Raises:
            UnsupportedFormatError: If fmt is not json or csv.
        """
        if fmt == "json":
            return render_json(report)
        if fmt == "csv":
            return render_csv(report)
        raise UnsupportedFormatError(f"Unsupported output format: {fmt}. Use one of: {', '.join(SUPPORTED_FORMATS)}")

    def _setup_directory(self, directory: Path) -> None:
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except PermissionError as e:
            self.logger.critical(f"Permission denied for: {directory}")
            raise DirectoryCreationError(f"Permission error: {e}") from e
        except OSError as e:
            self.logger.critical(f"Error creating directory: {e}")
            raise DirectoryCreationError(f"System error: {e}") from e

    def save(self, report: Report, path: Path, fmt: str = "json") -> Path:
        """
        Writes a rendered report to `path`, creating parent directories.

        Returns:
            Path: The written file.

        Raises:
            UnsupportedFormatError: On an unknown format.
            DirectoryCreationError: If the parent directory cannot be created.
            FileWriteError: If writing fails.
        """
        content = self.render(report, fmt)
        path = Path(path)
        self._setup_directory(path.parent)
        try:
            with open(path, "w", encoding=self.encoding, newline="") as f:
                f.write(content)
        except (IOError, UnicodeEncodeError) as e:
            self.logger.error(f"Error writing report: {e}", exc_info=True)
            raise FileWriteError(f"I/O error during report write: {e}") from e
        self.logger.info(f"Report written to {path}")
        self._post_save_validation(path, content)
        return path

    def _post_save_validation(self, file_path: Path, original_content: str) -> None:
        """Reads the file back and logs a warning if it differs from what was written."""
        try:
            with open(file_path, "r", encoding=self.encoding, newline="") as f:
                if f.read() != original_content:
                    self.logger.warning("Content discrepancy detected after save. Possible data corruption.")
        except IOError as e:
            self.logger.error(f"Error validating saved file: {e}")

    def __repr__(self) -> str:
        return f"ReportWriter(encoding={self.encoding})"


__all__ = ["ReportWriter", "ReportSchema", "format_float", "render_json", "render_csv"]
