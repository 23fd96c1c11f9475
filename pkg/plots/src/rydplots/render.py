"""Figure rendering.  Strictly a CSV consumer: no smoothing, no rescaling
beyond axis units, and a dump path that re-emits the plotted columns byte
for byte so the figure can always be diffed against its inputs."""
from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .csvdata import CsvTable, load_csv
from .figspec import FigureSpec, PanelSpec

MARKER_COLOR = "0.6"  # grey vertical lines


def _panel_table(panel: PanelSpec, cache: dict[str, CsvTable]) -> CsvTable:
    if panel.csv not in cache:
        cache[panel.csv] = load_csv(panel.csv)
    return cache[panel.csv]


def render(spec: FigureSpec, output: str | None = None) -> str:
    """Render the figure and return the written image path."""
    rows, cols = spec.layout
    cache: dict[str, CsvTable] = {}
    fig, axes = plt.subplots(rows, cols, figsize=(4.8 * cols, 3.4 * rows),
                             squeeze=False)
    for ax in axes.flat:
        ax.set_visible(False)
    for k, panel in enumerate(spec.panels):
        ax = axes.flat[k]
        ax.set_visible(True)
        table = _panel_table(panel, cache)
        x = table.values(panel.x)
        for column in panel.y:
            ax.plot(x, table.values(column), linewidth=1.2,
                    label=column if len(panel.y) > 1 else None)
        for marker in panel.markers:
            ax.axvline(marker, color=MARKER_COLOR, linewidth=1.0, zorder=0)
        if panel.xlabel:
            ax.set_xlabel(panel.xlabel)
        if panel.ylabel:
            ax.set_ylabel(panel.ylabel)
        if panel.title:
            ax.set_title(panel.title)
        if len(panel.y) > 1:
            ax.legend(fontsize="small")
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()

    path = output or spec.output
    # no creation dates: identical inputs must give identical bytes
    metadata = {"CreationDate": None} if path.endswith((".pdf", ".svg")) else None
    fig.savefig(path, dpi=150, metadata=metadata)
    plt.close(fig)
    return path


def dump_plotted_data(spec: FigureSpec, directory: str) -> list[str]:
    """Write one CSV per panel containing exactly the plotted raw columns.

    Cells are the untouched tokens from the input CSVs, so extracting the
    same columns from the input file yields byte-identical text.
    """
    os.makedirs(directory, exist_ok=True)
    stem = os.path.splitext(os.path.basename(spec.output))[0]
    cache: dict[str, CsvTable] = {}
    written = []
    for k, panel in enumerate(spec.panels, start=1):
        table = _panel_table(panel, cache)
        names = [panel.x, *panel.y]
        raw = [table.raw_column(name) for name in names]
        path = os.path.join(directory, f"{stem}_panel{k}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(names) + "\n")
            for row in zip(*raw):
                fh.write(",".join(row) + "\n")
        written.append(path)
    return written
