"""CSV ingestion and deterministic serialization of fitted paths.

Floating point values are written with 17 significant digits so parsing and
re-serializing a report reproduces it byte for byte.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .errors import EmptyData, MissingResponse, NonNumericCell, ParseError
from .preprocess import to_original_units

__all__ = [
    "PathRecord",
    "read_csv",
    "write_path_csv",
    "records_from_path",
    "read_path_records",
    "write_path_records",
    "json_summary",
]

FIXED_COLUMNS = (
    "step",
    "action",
    "variable",
    "sign",
    "gamma",
    "C_max",
    "T_original_units",
    "rss",
)


def _fmt(x):
    return format(float(x), ".17g")


def column_names(design):
    """Labels for a design, synthesizing x1..xm when none were recorded."""
    names = list(design.column_names)
    if len(names) == design.m:
        return names
    return [f"x{j + 1}" for j in range(design.m)]


def read_csv(path, response_column):
    """Load a rectangular numeric CSV with a header row.

    Returns ``(matrix, response, labels)`` with the response column removed
    from the matrix and the remaining column order preserved.  Blank lines
    are ignored.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = None
        data = []
        data_line = 0
        for row in reader:
            if not row or all(tok.strip() == "" for tok in row):
                continue
            if header is None:
                header = [tok.strip() for tok in row]
                continue
            data_line += 1
            if len(row) != len(header):
                raise ParseError(
                    line=reader.line_num,
                    column=len(row),
                    message=f"expected {len(header)} fields, found {len(row)}",
                )
            parsed = np.empty(len(row))
            for i, tok in enumerate(row):
                try:
                    parsed[i] = float(tok)
                except ValueError:
                    raise NonNumericCell(data_line, header[i]) from None
            data.append(parsed)
    if header is None:
        raise EmptyData("no header row")
    if response_column not in header:
        raise MissingResponse(response_column)
    if not data:
        raise EmptyData("header only, no data rows")
    table = np.array(data)
    y_col = header.index(response_column)
    keep = [i for i in range(len(header)) if i != y_col]
    labels = [header[i] for i in keep]
    return table[:, keep], table[:, y_col], labels


@dataclass(frozen=True)
class PathRecord:
    """One serialized path vertex."""

    step: int
    action: str
    variable: str
    sign: object
    gamma: float
    C_max: float
    T_original_units: float
    rss: float
    coefficients: np.ndarray


def records_from_path(path, design=None, standardized=False):
    """Flatten a fitted path into serializable records.

    Coefficients are reported in the original units of the raw columns
    unless ``standardized`` is set, in which case the internal unit-norm
    scale is kept.
    """
    design = path.design if design is None else design
    names = column_names(design)
    action_token = {None: "", "add": "ADD", "drop": "DROP", "final": "FINAL"}
    out = []
    for s in path.steps:
        if standardized:
            coef = s.beta.copy()
        else:
            coef, _ = to_original_units(design, s.beta)
        out.append(
            PathRecord(
                step=s.step_index,
                action=action_token[s.action],
                variable="" if s.variable is None else names[s.variable],
                sign=None if s.sign is None else int(s.sign),
                gamma=s.gamma,
                C_max=s.C_max,
                T_original_units=s.T,
                rss=s.rss,
                coefficients=coef,
            )
        )
    return names, out


def write_path_records(names, records):
    """Serialize records to CSV text (deterministic, 17 significant digits)."""
    lines = [",".join(FIXED_COLUMNS + tuple(names))]
    for r in records:
        cells = [
            str(r.step),
            r.action,
            r.variable,
            "" if r.sign is None else str(int(r.sign)),
            _fmt(r.gamma),
            _fmt(r.C_max),
            _fmt(r.T_original_units),
            _fmt(r.rss),
        ]
        cells.extend(_fmt(v) for v in r.coefficients)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_path_csv(path, design=None, standardized=False):
    """CSV report of a fitted path: header, starting vertex, one row per move."""
    names, records = records_from_path(path, design, standardized)
    return write_path_records(names, records)


def read_path_records(text):
    """Parse :func:`write_path_csv` output back into records."""
    rows = [r for r in csv.reader(text.splitlines()) if r]
    if not rows:
        raise EmptyData("no header row")
    header = rows[0]
    if tuple(header[: len(FIXED_COLUMNS)]) != FIXED_COLUMNS:
        raise ParseError(line=1, column=1, message="unrecognized path header")
    names = header[len(FIXED_COLUMNS):]
    records = []
    for row in rows[1:]:
        fixed, coefs = row[: len(FIXED_COLUMNS)], row[len(FIXED_COLUMNS):]
        records.append(
            PathRecord(
                step=int(fixed[0]),
                action=fixed[1],
                variable=fixed[2],
                sign=None if fixed[3] == "" else int(fixed[3]),
                gamma=float(fixed[4]),
                C_max=float(fixed[5]),
                T_original_units=float(fixed[6]),
                rss=float(fixed[7]),
                coefficients=np.array([float(v) for v in coefs]),
            )
        )
    return names, records


def json_summary(path, design=None, cp_argmin=None):
    """Machine-readable fit summary.

    Variable references appear twice: by label and by 1-based column index,
    matching the numbering used in the CSV reports.
    """
    design = path.design if design is None else design
    names = column_names(design)
    summary = {
        "variant": path.variant,
        "steps": path.n_steps,
        "entry_order": [names[j] for j in path.entry_order],
        "entry_order_index": [int(j) + 1 for j in path.entry_order],
        "t_max": path.t_max,
    }
    if cp_argmin is not None:
        summary["cp_argmin"] = int(cp_argmin)
    return summary
