"""Scikit-learn style wrapper around the certificate pipeline.

The core library is functional; this module adapts it to the estimator
protocol (``get_params`` / ``set_params`` / ``fit`` / ``predict``) so the
certifier can sit inside sklearn tooling.  Rows of ``X`` are eigenvalue
vectors; there is nothing to learn, so ``fit`` only validates and freezes the
layout.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from . import criteria, report
from .spectra import (
    Bipartite,
    Multiqudit,
    SymmetricMultiqudit,
    SystemDims,
    validate_spectrum,
)


class SpectrumCertifier(BaseEstimator):
    """Classify eigenvalue vectors by absolute-separability certificate.

    Parameters
    ----------
    dims_type : {"bipartite", "multiqudit", "symmetric"}
    d1, d2 : int
        For ``bipartite`` these are the local dimensions (N, M); for the
        qudit layouts they are (d, n).
    run_hull : bool
        Whether to fall back to the convex-hull program when no closed-form
        criterion fires.
    tol : float
        Solver tolerance for the hull program.
    """

    def __init__(self, dims_type="bipartite", d1=2, d2=2, run_hull=True, tol=1e-9):
        self.dims_type = dims_type
        self.d1 = d1
        self.d2 = d2
        self.run_hull = run_hull
        self.tol = tol

    def _build_dims(self) -> SystemDims:
        if self.dims_type == "bipartite":
            return Bipartite(self.d1, self.d2)
        if self.dims_type == "multiqudit":
            return Multiqudit(self.d1, self.d2)
        if self.dims_type == "symmetric":
            return SymmetricMultiqudit(self.d1, self.d2)
        raise ValueError(f"unknown dims_type {self.dims_type!r}")

    def fit(self, X, y=None):
        """Validate the layout and every row of ``X``; no parameters are learned."""
        dims = self._build_dims()
        X = check_array(X, dtype=float)
        if X.shape[1] != dims.total_dim:
            raise ValueError(
                f"rows of X have length {X.shape[1]}, layout needs {dims.total_dim}"
            )
        for row in X:
            validate_spectrum(row, dims)
        self.dims_ = dims
        self.n_features_in_ = X.shape[1]
        return self

    def _reports(self, X):
        check_is_fitted(self, "dims_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError("X has a different number of features than at fit time")
        for row in X:
            s = validate_spectrum(row, self.dims_)
            yield report.build_report(s, self.dims_, run_hull=self.run_hull, tol=self.tol)

    def predict(self, X):
        """Aggregate certificate label per row (see :class:`report.Aggregate`)."""
        return np.array([r.aggregate.value for r in self._reports(X)], dtype=object)

    def decision_function(self, X):
        """Best slack over the sufficient criteria; positive means certified."""
        sufficient = set(report._SUFFICIENT_TO_AGGREGATE)
        out = []
        for r in self._reports(X):
            slacks = [v.slack for v in r.verdicts if v.certifies in sufficient]
            out.append(max(slacks) if slacks else -np.inf)
        return np.asarray(out)

    def score(self, X, y):
        """Fraction of rows whose aggregate label matches ``y``."""
        return float(np.mean(self.predict(X) == np.asarray(y, dtype=object)))


class NptFalsifier(BaseEstimator):
    """Randomized NPT-witness search as an estimator.

    ``predict`` returns True for rows where a witness was found (the spectrum
    is provably not absolutely PPT); False is always inconclusive.
    """

    def __init__(self, dims_type="bipartite", d1=2, d2=2, samples=1000, seed=0):
        self.dims_type = dims_type
        self.d1 = d1
        self.d2 = d2
        self.samples = samples
        self.seed = seed

    def fit(self, X, y=None):
        certifier = SpectrumCertifier(self.dims_type, self.d1, self.d2)
        certifier.fit(X)
        self.dims_ = certifier.dims_
        self.n_features_in_ = certifier.n_features_in_
        return self

    def _outcomes(self, X):
        from . import falsify

        check_is_fitted(self, "dims_")
        X = check_array(X, dtype=float)
        for row in X:
            s = validate_spectrum(row, self.dims_)
            if isinstance(self.dims_, SymmetricMultiqudit):
                yield falsify.falsify_sap(
                    s, self.dims_.d, self.dims_.n, self.samples, self.seed
                )
            else:
                yield falsify.falsify_ap(s, self.dims_, self.samples, self.seed)

    def predict(self, X):
        return np.array([o.witness_found for o in self._outcomes(X)])

    def decision_function(self, X):
        """Negated best min-PT eigenvalue; positive means a witness exists."""
        return np.array([-o.best_min_pt_eig for o in self._outcomes(X)])
