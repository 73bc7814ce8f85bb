"""CSV ingestion, deterministic path serialization, JSON summaries."""

import numpy as np
import pytest

from larspath.core import fit_path
from larspath.dataio import (
    FIXED_COLUMNS,
    json_summary,
    read_csv,
    read_path_records,
    records_from_path,
    write_path_csv,
    write_path_records,
)
from larspath.datasets import load_diabetes, verify_checksum
from larspath.errors import (
    EmptyData,
    MissingResponse,
    NonNumericCell,
    ParseError,
)
from larspath.preprocess import from_unit_columns, to_original_units

LABELS = ["AGE", "SEX", "BMI", "BP", "S1", "S2", "S3", "S4", "S5", "S6"]


def test_bundled_data_shape_and_checksum():
    matrix, response, labels = load_diabetes()
    assert matrix.shape == (442, 10)
    assert response.shape == (442,)
    assert labels == LABELS
    assert verify_checksum()


def test_read_csv_drops_response_and_keeps_order(tmp_path):
    f = tmp_path / "t.csv"
    f.write_text("a,y,b\n1,10,2\n3,20,4\n")
    matrix, response, labels = read_csv(f, "y")
    assert labels == ["a", "b"]
    assert matrix.tolist() == [[1.0, 2.0], [3.0, 4.0]]
    assert response.tolist() == [10.0, 20.0]


def test_read_csv_ignores_blank_lines(tmp_path):
    f = tmp_path / "t.csv"
    f.write_text("a,y\n\n1,10\n   ,\n2,20\n\n")
    matrix, response, _ = read_csv(f, "y")
    assert matrix.tolist() == [[1.0], [2.0]]
    assert response.tolist() == [10.0, 20.0]


def test_read_csv_empty_and_header_only(tmp_path):
    f = tmp_path / "e.csv"
    f.write_text("")
    with pytest.raises(EmptyData):
        read_csv(f, "y")
    f.write_text("a,b,y\n")
    with pytest.raises(EmptyData):
        read_csv(f, "y")


def test_read_csv_missing_response(tmp_path):
    f = tmp_path / "t.csv"
    f.write_text("a,b\n1,2\n")
    with pytest.raises(MissingResponse):
        read_csv(f, "y")


def test_read_csv_non_numeric_cell_names_the_spot(tmp_path):
    f = tmp_path / "t.csv"
    f.write_text("a,b,y\n1,2,3\n4,5,6\n7,oops,9\n")
    with pytest.raises(NonNumericCell) as exc:
        read_csv(f, "y")
    assert exc.value.row == 3
    assert exc.value.column_name == "b"


def test_read_csv_ragged_row(tmp_path):
    f = tmp_path / "t.csv"
    f.write_text("a,b,y\n1,2,3\n4,5\n")
    with pytest.raises(ParseError) as exc:
        read_csv(f, "y")
    assert exc.value.line == 3
    assert exc.value.column == 2


def test_path_csv_layout(diabetes_paths):
    text = write_path_csv(diabetes_paths["lars"])
    lines = text.splitlines()
    assert len(lines) == 12  # header + starting vertex + ten moves
    header = lines[0].split(",")
    assert tuple(header[:8]) == FIXED_COLUMNS
    assert header[8:] == LABELS
    first = lines[1].split(",")
    assert first[:4] == ["0", "", "", ""]
    step1 = lines[2].split(",")
    assert step1[1] == "ADD" and step1[2] == "BMI" and step1[3] == "1"


def test_path_csv_of_an_immediately_saturated_fit():
    d = from_unit_columns(np.eye(3), np.zeros(3))
    path = fit_path(d)
    text = write_path_csv(path)
    assert len(text.splitlines()) == 2


def test_serialization_round_trips_byte_for_byte(diabetes_paths):
    for variant in ("lars", "lasso", "stagewise"):
        text = write_path_csv(diabetes_paths[variant])
        names, records = read_path_records(text)
        assert write_path_records(names, records) == text


def test_seventeen_digit_floats_survive_the_round_trip(diabetes_paths):
    path = diabetes_paths["lasso"]
    _, records = read_path_records(write_path_csv(path))
    for rec, step in zip(records, path.steps):
        assert rec.gamma == step.gamma
        assert rec.C_max == step.C_max
        assert rec.T_original_units == step.T
        assert rec.rss == step.rss


def test_records_report_original_units_by_default(design, diabetes_paths):
    path = diabetes_paths["lars"]
    names, records = records_from_path(path)
    assert names == LABELS
    beta_orig, _ = to_original_units(design, path.steps[-1].beta)
    assert np.array_equal(records[-1].coefficients, beta_orig)
    _, std_records = records_from_path(path, standardized=True)
    assert np.array_equal(std_records[-1].coefficients, path.steps[-1].beta)
    # unit-norm columns carry much smaller per-unit coefficients after
    # rescaling back to the raw measurement units
    assert np.abs(std_records[-1].coefficients).sum() > np.abs(
        records[-1].coefficients).sum()


def test_read_path_records_rejects_foreign_header():
    with pytest.raises(ParseError) as exc:
        read_path_records("a,b,c\n1,2,3\n")
    assert exc.value.line == 1 and exc.value.column == 1
    with pytest.raises(EmptyData):
        read_path_records("")


def test_json_summary_contents(diabetes_paths):
    s = json_summary(diabetes_paths["lasso"])
    assert s["variant"] == "lasso"
    assert s["steps"] == 12
    assert s["entry_order"][:4] == ["BMI", "S5", "BP", "S3"]
    assert s["entry_order_index"][:4] == [3, 9, 4, 7]
    assert s["t_max"] > 0
    assert "cp_argmin" not in s
    s2 = json_summary(diabetes_paths["lars"], cp_argmin=7)
    assert s2["cp_argmin"] == 7
