"""CSV loading that keeps the raw cell text.

The renderer must never alter the data it plots, and `--dump-plotted-data`
must re-emit exactly the bytes that came in, so every cell is kept as its
original string; floats are derived views used only for drawing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class CsvFormatError(ValueError):
    """Malformed CSV input, with the offending line number."""


class MissingColumnError(KeyError):
    """A referenced column is not present in the CSV header."""


@dataclass(frozen=True)
class CsvTable:
    path: str
    metadata: dict[str, str]
    columns: list[str]
    cells: list[list[str]]  # raw tokens, row-major

    def index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise MissingColumnError(
                f"{self.path}: no column {name!r}; available: {', '.join(self.columns)}"
            ) from None

    def raw_column(self, name: str) -> list[str]:
        k = self.index(name)
        return [row[k] for row in self.cells]

    def values(self, name: str) -> np.ndarray:
        return np.array([float(tok) for tok in self.raw_column(name)])


def load_csv(path: str) -> CsvTable:
    metadata: dict[str, str] = {}
    columns: list[str] | None = None
    cells: list[list[str]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    metadata[key.strip()] = value.strip()
                continue
            tokens = line.split(",")
            if columns is None:
                columns = tokens
                continue
            if len(tokens) != len(columns):
                raise CsvFormatError(
                    f"{path}:{lineno}: expected {len(columns)} cells, got {len(tokens)}")
            for tok in tokens:
                try:
                    float(tok)
                except ValueError:
                    raise CsvFormatError(
                        f"{path}:{lineno}: non-numeric cell {tok!r}") from None
            cells.append(tokens)
    if columns is None:
        raise CsvFormatError(f"{path}: no header row found")
    if not cells:
        raise CsvFormatError(f"{path}: no data rows")
    return CsvTable(path=path, metadata=metadata, columns=columns, cells=cells)
