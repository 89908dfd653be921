"""Plug-in mutual information and the relevance/redundancy matrix.

All scores are in bits (base-2 logarithm). The matrix diagonal holds each
feature's MI with the target; the off-diagonal part holds pairwise MI
between features, computed once for i<j and mirrored exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .data import DEFAULT_BIN_COUNT, Dataset, encode_column
from .exceptions import DataError, DegenerateInputError

_PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class JointDistribution:
    """Empirical joint probability table over two discrete supports."""

    support_a: tuple
    support_b: tuple
    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.shape != (len(self.support_a), len(self.support_b)):
            raise DataError(f"probability table shape {p.shape} does not match "
                            f"supports ({len(self.support_a)}, {len(self.support_b)})")
        if np.any(p < 0):
            raise DataError("negative probability entry")
        if abs(p.sum() - 1.0) > _PROB_SUM_TOL:
            raise DataError(f"probabilities sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "probabilities", p)

    def transpose(self) -> "JointDistribution":
        return JointDistribution(self.support_b, self.support_a,
                                 self.probabilities.T.copy())


@dataclass(frozen=True)
class MIMatrix:
    """Symmetric nonnegative matrix of mutual-information scores (bits)."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.shape != (self.n, self.n):
            raise DataError(f"entries shape {e.shape} does not match n={self.n}")
        if not np.array_equal(e, e.T):
            raise DataError("MI matrix must be exactly symmetric")
        if np.any(e < -_PROB_SUM_TOL):
            raise DataError("MI matrix entries must be nonnegative")
        object.__setattr__(self, "entries", e)


def joint_distribution(a, b) -> JointDistribution:
    """Empirical co-occurrence frequencies of two equal-length sequences."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1:
        raise DataError(f"sequences must be 1-d and equal length, "
                        f"got {a.shape} and {b.shape}")
    if a.size == 0:
        raise DataError("sequences must be non-empty")
    sa, ia = np.unique(a, return_inverse=True)
    sb, ib = np.unique(b, return_inverse=True)
    counts = np.zeros((len(sa), len(sb)))
    np.add.at(counts, (ia, ib), 1.0)
    return JointDistribution(tuple(sa.tolist()), tuple(sb.tolist()),
                             counts / a.size)


def mutual_information(joint: JointDistribution) -> float:
    """Sum of P(x,y) * log2(P(x,y) / (P(x) P(y))) over the support.

    Terms with P(x,y) = 0 contribute nothing; a zero marginal cannot occur
    alongside a positive joint entry.
    """
    p = joint.probabilities
    pa = p.sum(axis=1)
    pb = p.sum(axis=0)
    mask = p > 0
    ratio = p[mask] / (np.outer(pa, pb)[mask])
    return float(np.sum(p[mask] * np.log2(ratio)))


def build_mi_matrix(data: Dataset, bin_count: int = DEFAULT_BIN_COUNT) -> MIMatrix:
    """Relevance/redundancy MI matrix of a dataset.

    entries[i][i] = MI(feature_i; target), entries[i][j] = MI(feature_i;
    feature_j) for i != j. Real columns (target included) are reduced to
    equal-width bin codes first.

    Parameters
    ----------
    data : Dataset
        Input table; every non-target column is a feature.
    bin_count : int
        Equal-width bin count for real-valued columns.
    """
    feats = data.feature_names
    codes = [encode_column(data.column(f), data.is_real(f), bin_count)
             for f in feats]
    target = encode_column(data.column(data.target),
                           data.is_real(data.target), bin_count)
    n = len(feats)
    m = np.zeros((n, n))
    for i in range(n):
        m[i, i] = mutual_information(joint_distribution(codes[i], target))
        for j in range(i + 1, n):
            mij = mutual_information(joint_distribution(codes[i], codes[j]))
            m[i, j] = mij
            m[j, i] = mij
    return MIMatrix(n, m)


def normalize_mi_matrix(m: MIMatrix) -> MIMatrix:
    """Scale all entries so they sum to one (the objective's constraint)."""
    total = m.entries.sum()
    if total <= 0:
        raise DegenerateInputError("cannot normalize an all-zero MI matrix")
    return MIMatrix(m.n, m.entries / total)


def write_mi_matrix(m: MIMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"n": m.n, "entries": m.entries.tolist()}, fh)
        fh.write("\n")


def read_mi_matrix(path) -> MIMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return MIMatrix(int(obj["n"]), np.array(obj["entries"], dtype=float))
