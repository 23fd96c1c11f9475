"""CSV emission and parsing for spectra and eigenvalue scans.

Layout: a block of `#`-prefixed metadata lines, one header row, then data
rows with 12 significant digits.  Swept values and eigenvalues are written
in MHz (the 2*pi convention of the config files); density-matrix columns are
dimensionless.  Nothing volatile (timestamps, hostnames, thread counts) goes
into the metadata, so identical runs produce identical bytes.
"""
from __future__ import annotations

import io

import numpy as np

from .ensemble import OBSERVABLES, SpectrumTable
from .params import to_mhz

SPECTRUM_HEADER = ("swept_value,rho11_mean,rho11_stderr,rho22_mean,rho22_stderr,"
                   "rho33_mean,rho33_stderr,rho44_mean,rho44_stderr,"
                   "re_rho12_mean,re_rho12_stderr,im_rho12_mean,im_rho12_stderr,"
                   "unconverged_frac")

EIGEN_HEADER = "swept_value,eig1,eig2,eig3,eig4"


def _num(x: float) -> str:
    return f"{x:.12g}"


def write_spectrum_csv(table: SpectrumTable, metadata: dict[str, str]) -> str:
    """Render a SpectrumTable as CSV text with a metadata comment block."""
    buf = io.StringIO()
    for key, value in metadata.items():
        buf.write(f"# {key} = {value}\n")
    in_mhz = table.parameter != "n"
    unit = "MHz" if in_mhz else "1"
    buf.write(f"# swept_parameter = {table.parameter} [{unit}]\n")
    buf.write(SPECTRUM_HEADER + "\n")
    for row in table.rows:
        value = to_mhz(row.swept_value) if in_mhz else row.swept_value
        cells = [_num(value)]
        for name in OBSERVABLES:
            cells.append(_num(row.means[name]))
            cells.append(_num(row.stderrs[name]))
        cells.append(_num(row.unconverged_frac))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def write_eigen_csv(swept_mhz: np.ndarray, eigenvalues_mhz: np.ndarray,
                    parameter: str, metadata: dict[str, str]) -> str:
    """Eigenvalue scan as CSV text; four ascending columns in MHz."""
    buf = io.StringIO()
    for key, value in metadata.items():
        buf.write(f"# {key} = {value}\n")
    buf.write(f"# swept_parameter = {parameter} [MHz]\n")
    buf.write(EIGEN_HEADER + "\n")
    for value, eigs in zip(swept_mhz, eigenvalues_mhz):
        buf.write(",".join([_num(value)] + [_num(e) for e in eigs]) + "\n")
    return buf.getvalue()


def read_csv(text: str) -> tuple[dict[str, str], list[str], np.ndarray]:
    """Parse CSV text into (metadata, column names, data array)."""
    metadata: dict[str, str] = {}
    header: list[str] | None = None
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                metadata[key.strip()] = value.strip()
            continue
        if header is None:
            header = line.split(",")
            continue
        rows.append([float(v) for v in line.split(",")])
    if header is None:
        raise ValueError("CSV has no header row")
    return metadata, header, np.array(rows)
