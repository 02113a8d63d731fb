"""Logarithmic and power trendlines with coefficient-of-determination reporting.

Both families are linear in their parameters after a change of variables,
so the fits are closed-form ordinary least squares:

* log:   y = a ln(x) + b        (OLS of y on ln x)
* power: y = a x**b             (OLS of ln y on ln x, a = exp(intercept))

The power family is fitted in log-log space, the way spreadsheet trendline
tools do it.  Its ``r2_transformed_`` is measured in that space while
``r2_original_`` is measured on the raw (x, y) data.  For constant y the
coefficients are still returned but both R^2 values are NaN.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .errors import (
    DegenerateDesignError,
    RegressionDomainError,
    UndefinedRSquaredError,
)


@dataclass(frozen=True)
class FitModel:
    kind: str
    a: float
    b: float
    r2_transformed: float
    r2_original: float

    def predict(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "log":
            return self.a * np.log(x) + self.b
        return self.a * x ** self.b


def r_squared(points, predictor):
    """Coefficient of determination ``1 - SS_res / SS_tot`` of ``predictor`` on ``points``.

    ``points`` is a sequence of (x, y) pairs; ``predictor`` maps an array of
    x to predicted y.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 2:
        raise DegenerateDesignError("R^2 needs at least two points")
    x, y = pts[:, 0], pts[:, 1]
    return _r2(y, np.asarray(predictor(x), dtype=float))


def _r2(y, y_hat):
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        raise UndefinedRSquaredError("observations have zero variance; R^2 is undefined")
    ss_res = float(np.sum((y - y_hat) ** 2))
    return 1.0 - ss_res / ss_tot


def _r2_or_nan(y, y_hat):
    # Fits on constant data are still valid; only their R^2 is undefined.
    try:
        return _r2(y, y_hat)
    except UndefinedRSquaredError:
        return float("nan")


def _ols(u, v):
    """Slope and intercept of v regressed on u."""
    u_mean = u.mean()
    v_mean = v.mean()
    du = u - u_mean
    slope = float(np.dot(du, v - v_mean) / np.dot(du, du))
    return slope, float(v_mean - slope * u_mean)


def _validate(X, y, positive_y):
    X, y = check_X_y(np.asarray(X, dtype=float).reshape(-1, 1), y, dtype=float,
                     y_numeric=True)
    x = X[:, 0]
    if np.any(x <= 0.0):
        raise RegressionDomainError("all x must be strictly positive")
    if positive_y and np.any(y <= 0.0):
        raise RegressionDomainError("power fits need strictly positive y")
    if len(np.unique(x)) < 2:
        raise DegenerateDesignError("need at least two distinct x values")
    return x, y


def _as_x(X):
    X = check_array(np.asarray(X, dtype=float).reshape(-1, 1), dtype=float)
    return X[:, 0]


class LogTrendline(RegressorMixin, BaseEstimator):
    """Least-squares fit of ``y = slope_ * ln(x) + intercept_``."""

    kind = "log"

    def fit(self, X, y):
        x, y = _validate(X, y, positive_y=False)
        self.slope_, self.intercept_ = _ols(np.log(x), y)
        self.n_features_in_ = 1
        self.r2_original_ = _r2_or_nan(y, self._predict(x))
        self.r2_transformed_ = self.r2_original_
        return self

    def _predict(self, x):
        return self.slope_ * np.log(x) + self.intercept_

    def predict(self, X):
        check_is_fitted(self, "slope_")
        return self._predict(_as_x(X))

    @property
    def model_(self):
        check_is_fitted(self, "slope_")
        return FitModel("log", self.slope_, self.intercept_,
                        self.r2_transformed_, self.r2_original_)


class PowerTrendline(RegressorMixin, BaseEstimator):
    """Log-log least-squares fit of ``y = prefactor_ * x ** exponent_``."""

    kind = "power"

    def fit(self, X, y):
        x, y = _validate(X, y, positive_y=True)
        ln_x, ln_y = np.log(x), np.log(y)
        self.exponent_, ln_a = _ols(ln_x, ln_y)
        self.prefactor_ = float(np.exp(ln_a))
        self.n_features_in_ = 1
        self.r2_transformed_ = _r2_or_nan(ln_y, ln_a + self.exponent_ * ln_x)
        self.r2_original_ = _r2_or_nan(y, self._predict(x))
        return self

    def _predict(self, x):
        return self.prefactor_ * x ** self.exponent_

    def predict(self, X):
        check_is_fitted(self, "exponent_")
        return self._predict(_as_x(X))

    @property
    def model_(self):
        check_is_fitted(self, "exponent_")
        return FitModel("power", self.prefactor_, self.exponent_,
                        self.r2_transformed_, self.r2_original_)


def _split(points):
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise DegenerateDesignError("need at least two distinct x values")
    pts = pts.reshape(-1, 2)
    return pts[:, 0], pts[:, 1]


def fit_log(points) -> FitModel:
    """Fit ``y = a ln x + b`` to a sequence of (x, y) pairs."""
    x, y = _split(points)
    return LogTrendline().fit(x, y).model_


def fit_power(points) -> FitModel:
    """Fit ``y = a x**b`` to a sequence of (x, y) pairs with x, y > 0."""
    x, y = _split(points)
    return PowerTrendline().fit(x, y).model_


def recommend(models):
    """Return the model with the highest transformed-space R^2."""
    return max(models, key=lambda m: m.r2_transformed)
