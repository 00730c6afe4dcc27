"""CSV and key=value file formats used by the command-line tools.

Signal files are comma separated with an optional header row. A leading time
column is recognised by its header (``time`` or ``t``) or, without a header,
by being strictly increasing with uniform spacing. All other columns are
channels. Numbers are written with 17 significant digits so a write/read
round trip is exact.
"""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import InvalidSignal, Signal

FLOAT_FMT = "%.17g"
TIME_NAMES = ("time", "t")


class FileFormatError(ValueError):
    """Malformed or missing input file."""


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def read_table(path) -> Tuple[Optional[List[str]], np.ndarray]:
    """Read a numeric CSV. Returns ``(header or None, data)`` with data ``(rows, cols)``."""
    path = Path(path)
    if not path.is_file():
        raise FileFormatError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        return None, np.empty((0, 0))
    header = None
    if not all(_is_number(c) for c in rows[0]):
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    width = len(header) if header is not None else len(rows[0]) if rows else 0
    data = np.empty((len(rows), width))
    for i, r in enumerate(rows):
        if len(r) != width:
            raise FileFormatError(f"{path}: row {i + 1} has {len(r)} fields, expected {width}")
        try:
            data[i] = [float(c) for c in r]
        except ValueError as exc:
            raise FileFormatError(f"{path}: row {i + 1}: {exc}") from None
    return header, data


def write_table(path, data, header: Sequence[str]) -> None:
    """Write ``data`` (``(rows, cols)``) with a header row, 17 significant digits."""
    data = np.atleast_2d(np.asarray(data, dtype=float))
    if data.shape[1] != len(header):
        raise ValueError("one header name per column is required")
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in data:
            fh.write(",".join(FLOAT_FMT % x for x in row) + "\n")


def _looks_like_time(col: np.ndarray) -> bool:
    if col.size < 2:
        return False
    d = np.diff(col)
    if not np.all(d > 0):
        return False
    return bool(np.allclose(d, d[0], rtol=1e-6, atol=0.0))


def read_signal(path, sample_rate: Optional[float] = None) -> Signal:
    """Load a signal CSV.

    The sample rate is ``sample_rate`` if given, else inferred from the time
    column, else ``N`` (the signal is taken to span one time unit).
    """
    header, data = read_table(path)
    if data.size == 0:
        raise FileFormatError(f"{path}: no samples")
    time = None
    if header is not None and header[0].lower() in TIME_NAMES:
        time = data[:, 0]
    elif header is None and data.shape[1] > 1 and _looks_like_time(data[:, 0]):
        time = data[:, 0]
    if time is not None:
        data = data[:, 1:]
        if header is not None:
            header = header[1:]
    if data.shape[1] == 0:
        raise FileFormatError(f"{path}: no channel columns")
    n = data.shape[0]
    if sample_rate is None:
        if time is not None and n > 1:
            d = np.diff(time)
            if not np.all(d > 0):
                raise FileFormatError(f"{path}: time column must be strictly increasing")
            sample_rate = 1.0 / float(np.mean(d))
        else:
            sample_rate = float(n)
    try:
        return Signal(data.T, sample_rate=sample_rate, labels=header)
    except InvalidSignal as exc:
        raise FileFormatError(f"{path}: {exc}") from None


def write_signal(path, sig: Signal, with_time: bool = True) -> None:
    cols = sig.samples.T
    header = list(sig.labels)
    if with_time:
        t = np.arange(sig.n_samples) / sig.sample_rate
        cols = np.column_stack([t, cols])
        header = ["time"] + header
    write_table(path, cols, header)


def write_channels(path, x, labels: Sequence[str]) -> None:
    """Write a ``(C, N)`` array as one column per channel."""
    write_table(path, np.asarray(x).T, list(labels))


def read_channels(path) -> Tuple[List[str], np.ndarray]:
    """Inverse of :func:`write_channels`; returns ``(labels, (C, N) array)``."""
    header, data = read_table(path)
    if header is None:
        header = [f"ch{c + 1}" for c in range(data.shape[1])]
    return header, data.T


# ------------------------------------------------------------ key=value files


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else str(v)


def write_keyvalue(path, items: Dict[str, object]) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for k, v in items.items():
            fh.write(f"{k}={_format_value(v)}\n")


def read_keyvalue(path) -> Dict[str, str]:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    path = Path(path)
    if not path.is_file():
        raise FileFormatError(f"no such file: {path}")
    out: Dict[str, str] = {}
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise FileFormatError(f"{path}:{i}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out
