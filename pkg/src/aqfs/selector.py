"""Scikit-learn estimator wrapping the adiabatic selection pipeline."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.feature_selection import SelectorMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from .data import DEFAULT_BIN_COUNT, Dataset
from .evolution import DEFAULT_GRID_POINTS
from .exceptions import ConfigurationError
from .mi import build_mi_matrix
from .pipeline import DEFAULT_SAFETY, select_features


class QuantumAdiabaticSelector(SelectorMixin, BaseEstimator):
    """Select k of n features by simulating an adiabatic quantum anneal.

    The estimator scores columns with a plug-in mutual-information
    relevance/redundancy matrix, encodes the resulting bi-quadratic
    objective (with a cardinality penalty) as a diagonal Ising Hamiltonian,
    and numerically anneals the uniform superposition toward it. The
    dominant basis state of the final wavefunction is the selected subset.

    Because the simulation is dense over 2^n amplitudes, the number of
    feature columns is capped at 14.

    Parameters
    ----------
    k : int
        Number of features to keep.
    alpha : float or "auto"
        Cardinality penalty strength; "auto" uses a bound that provably
        forces every optimum to have exactly k features.
    bins : int
        Equal-width bin count used to discretize real-valued columns.
    grid_points : int
        Gap-scan grid resolution.
    safety : float
        Anneal duration multiplier: T = safety / g_min**2.
    total_time : float or None
        Explicit anneal duration, overriding the safety rule.
    steps : int or None
        Explicit integrator step count, overriding the default rule.
    normalize : bool
        Scale the MI matrix to unit total sum before encoding.

    Attributes
    ----------
    support_ : ndarray of bool, shape (n_features_in_,)
        Mask of selected features.
    mi_matrix_ : ndarray
        The (normalized) MI matrix the encoding used.
    gap_min_, gamma_, local_delay_, total_time_ : float
        Spectral-gap and schedule diagnostics of the anneal.
    trace_ : EvolutionTrace
        Full per-step diagnostics.

    Examples
    --------
    >>> import numpy as np
    >>> rng = np.random.default_rng(0)
    >>> X = rng.standard_normal((200, 4))
    >>> y = (X[:, 2] > 0).astype(int)
    >>> picked = QuantumAdiabaticSelector(k=1, bins=4).fit(X, y)
    >>> picked.get_support(indices=True)
    array([2])
    """

    def __init__(self, k=2, alpha="auto", bins=DEFAULT_BIN_COUNT,
                 grid_points=DEFAULT_GRID_POINTS, safety=DEFAULT_SAFETY,
                 total_time=None, steps=None, normalize=True):
        self.k = k
        self.alpha = alpha
        self.bins = bins
        self.grid_points = grid_points
        self.safety = safety
        self.total_time = total_time
        self.steps = steps
        self.normalize = normalize

    def fit(self, X, y):
        """Run the selection pipeline on (X, y) and store the support mask."""
        X, y = validate_data(self, X, y, dtype="numeric")
        n = X.shape[1]
        if not 0 <= self.k <= n:
            raise ConfigurationError(f"k={self.k} out of range for {n} features")
        names = tuple(f"f{i}" for i in range(n)) + ("y",)
        y_arr = np.asarray(y)
        y_real = np.issubdtype(y_arr.dtype, np.number)
        columns = tuple(X[:, i].copy() for i in range(n))
        columns += (y_arr.astype(float) if y_real else y_arr.astype(object),)
        data = Dataset(names, columns, tuple([True] * n + [y_real]), "y")

        matrix = build_mi_matrix(data, self.bins)
        result = select_features(matrix, self.k, alpha=self.alpha,
                                 grid_points=self.grid_points,
                                 safety=self.safety,
                                 total_time=self.total_time,
                                 steps=self.steps,
                                 normalize=self.normalize)
        mask = np.zeros(n, dtype=bool)
        mask[list(result.selected.indices)] = True
        self.support_ = mask
        self.mi_matrix_ = result.mi_matrix.entries
        self.alpha_ = result.alpha
        self.gap_min_ = result.gap_scan.g_min
        self.s_at_gap_min_ = result.gap_scan.s_at_g_min
        self.gamma_ = result.gamma
        self.local_delay_ = result.local_delay
        self.total_time_ = result.total_time
        self.trace_ = result.trace
        self.candidates_ = result.candidates
        return self

    def _get_support_mask(self):
        check_is_fitted(self)
        return self.support_

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.target_tags.required = True
        return tags
