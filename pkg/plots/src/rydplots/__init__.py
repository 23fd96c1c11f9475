"""Figure rendering for rydladder CSV output: a pure CSV consumer."""

__version__ = "0.1.0"

from .csvdata import CsvFormatError, CsvTable, MissingColumnError, load_csv
from .figspec import FigureSpec, FigureSpecError, PanelSpec, load_figure_spec, parse_figure_spec
from .render import dump_plotted_data, render

__all__ = ["CsvFormatError", "CsvTable", "MissingColumnError", "load_csv",
           "FigureSpec", "FigureSpecError", "PanelSpec", "load_figure_spec",
           "parse_figure_spec", "dump_plotted_data", "render"]
