"""Figure specification files: same key = value section grammar as run configs.

    [figure]
    layout = 1,2                 # rows, cols
    output = cs_eit.png
    title = ...                  # optional

    [panel.1]
    csv = fig3_cs_eit.csv
    x = swept_value
    y = im_rho12_mean            # one or more columns, comma-separated
    xlabel = probe detuning (2pi x MHz)
    ylabel = Im rho12
    markers = -4.0, 4.0          # optional vertical lines
    markers_json = eigen_summary.json   # or: avoided-crossing report

Panels are placed row-major into the layout grid.
"""
from __future__ import annotations

import configparser
import json
from dataclasses import dataclass, field


class FigureSpecError(ValueError):
    pass


@dataclass(frozen=True)
class PanelSpec:
    csv: str
    x: str
    y: tuple[str, ...]
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""
    markers: tuple[float, ...] = field(default=())


@dataclass(frozen=True)
class FigureSpec:
    layout: tuple[int, int]
    output: str
    panels: tuple[PanelSpec, ...]
    title: str = ""

    def __post_init__(self):
        rows, cols = self.layout
        if rows < 1 or cols < 1:
            raise FigureSpecError(f"bad layout {self.layout}")
        if len(self.panels) > rows * cols:
            raise FigureSpecError(
                f"{len(self.panels)} panels do not fit a {rows}x{cols} layout")
        if not self.panels:
            raise FigureSpecError("no panels defined")


def _crossing_markers(path: str) -> list[float]:
    with open(path, "r", encoding="utf-8") as fh:
        summary = json.load(fh)
    crossings = summary.get("avoided_crossings")
    if crossings is None:
        raise FigureSpecError(f"{path}: no avoided_crossings entry")
    return [c["delta1_mhz"] for c in crossings]


def parse_figure_spec(text: str, base_dir: str = ".") -> FigureSpec:
    import os

    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"),
                                       interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise FigureSpecError(f"figure spec parse error: {exc}") from exc
    if not parser.has_section("figure"):
        raise FigureSpecError("missing [figure] section")
    fig = dict(parser.items("figure"))

    layout_raw = fig.pop("layout", "1,1")
    try:
        rows, cols = (int(v) for v in layout_raw.split(","))
    except ValueError:
        raise FigureSpecError(f"layout must be 'rows,cols', got {layout_raw!r}") from None
    output = fig.pop("output", None)
    title = fig.pop("title", "")
    if fig:
        raise FigureSpecError(f"unknown [figure] keys: {sorted(fig)}")
    if output is None:
        raise FigureSpecError("[figure] output is required")

    panels = []
    for section in parser.sections():
        if section == "figure":
            continue
        if not section.startswith("panel."):
            raise FigureSpecError(f"unknown section [{section}]")
        items = dict(parser.items(section))
        try:
            csv_path = items.pop("csv")
            x = items.pop("x")
            y = tuple(col.strip() for col in items.pop("y").split(","))
        except KeyError as exc:
            raise FigureSpecError(f"[{section}] missing key {exc}") from None
        markers: list[float] = []
        if "markers" in items:
            markers += [float(v) for v in items.pop("markers").split(",")]
        if "markers_json" in items:
            markers += _crossing_markers(os.path.join(base_dir, items.pop("markers_json")))
        panel = PanelSpec(
            csv=os.path.join(base_dir, csv_path), x=x, y=y,
            xlabel=items.pop("xlabel", ""), ylabel=items.pop("ylabel", ""),
            title=items.pop("title", ""), markers=tuple(markers))
        if items:
            raise FigureSpecError(f"unknown [{section}] keys: {sorted(items)}")
        panels.append(panel)

    return FigureSpec(layout=(rows, cols), output=output,
                      panels=tuple(panels), title=title)


def load_figure_spec(path: str) -> FigureSpec:
    import os

    with open(path, "r", encoding="utf-8") as fh:
        return parse_figure_spec(fh.read(), base_dir=os.path.dirname(path) or ".")
