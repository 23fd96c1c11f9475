import pathlib

import pytest

from rydplots.csvdata import CsvFormatError, MissingColumnError, load_csv

TESTDATA = pathlib.Path(__file__).resolve().parent.parent / "testdata"


def test_load_bundled_spectrum():
    table = load_csv(str(TESTDATA / "fig3_cs_eit.csv"))
    assert table.columns[0] == "swept_value"
    assert "im_rho12_mean" in table.columns
    assert len(table.cells) == 301
    assert table.metadata["master_seed"] == "20260801"
    x = table.values("swept_value")
    assert x[0] == -15.0 and x[-1] == 15.0


def test_raw_tokens_preserved():
    table = load_csv(str(TESTDATA / "fig3_cs_eit.csv"))
    raw = table.raw_column("swept_value")
    assert raw[0] == "-15"  # kept exactly as written, not reformatted


def test_missing_column_is_named():
    table = load_csv(str(TESTDATA / "fig3_cs_eit.csv"))
    with pytest.raises(MissingColumnError, match="rho55"):
        table.values("rho55_mean")


def test_malformed_row_reports_line(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n3\n")
    with pytest.raises(CsvFormatError, match=r"bad\.csv:3"):
        load_csv(str(bad))


def test_non_numeric_cell_reports_line(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,x\n")
    with pytest.raises(CsvFormatError, match=r"bad\.csv:2.*'x'"):
        load_csv(str(bad))


def test_empty_file_rejected(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("# only = comments\n")
    with pytest.raises(CsvFormatError, match="no header"):
        load_csv(str(empty))
