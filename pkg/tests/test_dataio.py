import math

import numpy as np
import pytest

from stableport import DataError, SeriesFile, ingest
from stableport.dataio import log_returns


def _write(tmp_path, text, name="data.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestIngest:
    def test_whitespace_single_column(self, tmp_path):
        path = _write(tmp_path, "1.0\n2.5\n-3\n")
        np.testing.assert_allclose(ingest(SeriesFile(path)), [1.0, 2.5, -3.0])

    def test_comma_with_header_by_name(self, tmp_path):
        path = _write(tmp_path, "date,price\n1,100\n2,110\n3,99\n")
        np.testing.assert_allclose(
            ingest(SeriesFile(path, column="price")), [100.0, 110.0, 99.0]
        )

    def test_header_detected_with_index_column(self, tmp_path):
        path = _write(tmp_path, "a,b\n1,4\n2,5\n")
        np.testing.assert_allclose(ingest(SeriesFile(path, column=1)), [4.0, 5.0])

    def test_missing_file(self):
        with pytest.raises(DataError):
            ingest(SeriesFile("/nonexistent/file.csv"))

    def test_non_numeric_cell_names_row(self, tmp_path):
        rows = "\n".join(str(i) for i in range(1, 7)) + "\nabc\n8\n"
        path = _write(tmp_path, rows)
        with pytest.raises(DataError, match="row 7"):
            ingest(SeriesFile(path))

    def test_missing_column_names_row(self, tmp_path):
        path = _write(tmp_path, "1,2\n3\n")
        with pytest.raises(DataError, match="row 2"):
            ingest(SeriesFile(path, column=1))

    def test_unknown_header_name(self, tmp_path):
        path = _write(tmp_path, "a,b\n1,2\n")
        with pytest.raises(DataError, match="'c' not found"):
            ingest(SeriesFile(path, column="c"))

    def test_non_finite_rejected(self, tmp_path):
        path = _write(tmp_path, "1.0\nnan\n")
        with pytest.raises(DataError, match="row 2"):
            ingest(SeriesFile(path))

    def test_empty_file(self, tmp_path):
        with pytest.raises(DataError, match="no data rows"):
            ingest(SeriesFile(_write(tmp_path, "\n\n")))


class TestLogReturns:
    def test_hand_example(self, tmp_path):
        path = _write(tmp_path, "100\n110\n99\n")
        out = ingest(SeriesFile(path, transform="log_returns"))
        np.testing.assert_allclose(out, [math.log(1.1), math.log(0.9)], rtol=1e-12)

    def test_identity_when_none(self, tmp_path):
        path = _write(tmp_path, "100\n110\n99\n")
        np.testing.assert_allclose(ingest(SeriesFile(path)), [100, 110, 99])

    def test_non_positive_rejected(self):
        with pytest.raises(DataError, match="observation 2"):
            log_returns(np.array([100.0, -3.0, 99.0]))

    def test_unknown_transform_rejected(self):
        with pytest.raises(ValueError):
            SeriesFile("x", transform="sqrt")
