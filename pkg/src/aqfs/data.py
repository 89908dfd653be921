"""Tabular dataset ingestion, discretization and synthetic data generation.

Columns are typed on load: a column whose every value parses as a number is
real-valued, anything else is categorical. Real columns are reduced to
integer bin codes (equal-width binning) before any information measure is
computed, because the plug-in estimators work on discrete symbols only.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigurationError, DataError, ParseError

DEFAULT_BIN_COUNT = 10


@dataclass(frozen=True)
class Dataset:
    """A named collection of equal-length columns with one designated target.

    Parameters
    ----------
    names : tuple of str
        Column names in file order (target included).
    columns : tuple of ndarray
        One array per name; float64 for real columns, object (str) otherwise.
    real : tuple of bool
        Whether each column parsed as numeric.
    target : str
        Name of the class column. Must be one of ``names``.
    """

    names: tuple
    columns: tuple
    real: tuple
    target: str

    def __post_init__(self):
        if self.target not in self.names:
            raise ConfigurationError(f"target column {self.target!r} not found "
                                     f"in {list(self.names)}")
        if len(set(self.names)) != len(self.names):
            raise DataError("column names must be unique")
        lengths = {len(c) for c in self.columns}
        if not self.columns or len(self.columns) != len(self.names) or len(lengths) > 1:
            raise DataError("all columns must have the same length")

    @property
    def sample_count(self) -> int:
        return len(self.columns[0])

    @property
    def feature_names(self) -> list:
        return [n for n in self.names if n != self.target]

    @property
    def n_features(self) -> int:
        return len(self.names) - 1

    def column(self, name: str) -> np.ndarray:
        return self.columns[self.names.index(name)]

    def is_real(self, name: str) -> bool:
        return self.real[self.names.index(name)]


def _parse_real(values):
    """Return a float64 array if every value parses as a number, else None."""
    out = np.empty(len(values))
    for i, v in enumerate(values):
        try:
            out[i] = float(v)
        except (TypeError, ValueError):
            return None
    return out


def load_dataset(source, target: str, delimiter: str = ",") -> Dataset:
    """Load a delimited text file (or file-like object) into a Dataset.

    The first row is a mandatory header. Rows whose field count disagrees
    with the header raise :class:`ParseError` naming the 1-based row index.
    """
    if isinstance(source, (str, os.PathLike)):
        try:
            fh = open(source, "r", encoding="utf-8", newline="")
        except OSError as exc:
            raise DataError(f"cannot read {source}: {exc}") from exc
        with fh:
            return load_dataset(fh, target, delimiter)
    if isinstance(source, (bytes, bytearray)):
        return load_dataset(io.StringIO(source.decode("utf-8")), target, delimiter)

    reader = csv.reader(source, delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input: header row required") from None
    names = [h.strip() for h in header]
    if len(set(names)) != len(names):
        raise ParseError(f"duplicate column names in header {names}")
    if target not in names:
        raise ConfigurationError(f"target column {target!r} not found in header {names}")

    rows = []
    for idx, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(names):
            raise ParseError(f"row {idx}: expected {len(names)} fields, got {len(row)}")
        rows.append(row)
    if not rows:
        raise DataError("no data rows")

    columns, real = [], []
    for j, _name in enumerate(names):
        raw = [r[j].strip() for r in rows]
        parsed = _parse_real(raw)
        if parsed is not None:
            columns.append(parsed)
            real.append(True)
        else:
            columns.append(np.array(raw, dtype=object))
            real.append(False)
    return Dataset(tuple(names), tuple(columns), tuple(real), target)


def discretize(column, bin_count: int) -> np.ndarray:
    """Map real values onto equal-width bin indices over [min, max].

    The maximum maps into the last bin; a constant column maps to bin 0.
    """
    if bin_count < 1:
        raise ConfigurationError(f"bin_count must be >= 1, got {bin_count}")
    values = np.asarray(column, dtype=float)
    if values.size == 0:
        raise DataError("cannot discretize an empty column")
    if not np.all(np.isfinite(values)):
        raise DataError("non-finite value in column")
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.zeros(values.shape, dtype=np.int64)
    idx = np.floor((values - lo) / (hi - lo) * bin_count).astype(np.int64)
    return np.clip(idx, 0, bin_count - 1)


def encode_column(values, real: bool, bin_count: int) -> np.ndarray:
    """Integer symbol codes for one column: bins if real, factorized otherwise."""
    if real:
        return discretize(values, bin_count)
    _, codes = np.unique(np.asarray(values, dtype=object), return_inverse=True)
    return codes.astype(np.int64)


def sample_random_weights(seed: int, n: int) -> np.ndarray:
    """Draw n standard-normal weights, deterministic for a fixed seed."""
    if n < 1:
        raise ConfigurationError(f"n must be >= 1, got {n}")
    if seed < 0:
        raise ConfigurationError(f"seed must be non-negative, got {seed}")
    return np.random.default_rng(seed).standard_normal(n)


def synthetic_dataset(seed: int, n_features: int, samples: int,
                      informative=None) -> Dataset:
    """Build a dataset of standard-normal weight columns plus a target column.

    Every feature column is an independent stream of seeded normal weights.
    When ``informative`` names a feature index, the target is an exact copy of
    that feature (so it carries full relevance); otherwise the target is one
    more independent normal column.

    Parameters
    ----------
    seed : int
        Generator seed; identical seeds reproduce the dataset exactly.
    n_features : int
        Number of feature columns (named f0..f{n-1}).
    samples : int
        Rows per column.
    informative : int or None
        Index of the feature copied into the target column ``y``.
    """
    if n_features < 1 or samples < 1:
        raise ConfigurationError("n_features and samples must be >= 1")
    if informative is not None and not 0 <= informative < n_features:
        raise ConfigurationError(f"informative index {informative} out of range "
                                 f"for {n_features} features")
    flat = sample_random_weights(seed, n_features * samples + samples)
    grid = flat[: n_features * samples].reshape(samples, n_features)
    names = [f"f{i}" for i in range(n_features)] + ["y"]
    cols = [grid[:, i].copy() for i in range(n_features)]
    if informative is None:
        cols.append(flat[n_features * samples:].copy())
    else:
        cols.append(grid[:, informative].copy())
    return Dataset(tuple(names), tuple(cols), tuple([True] * (n_features + 1)), "y")
