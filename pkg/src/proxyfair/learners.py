"""Base predictors and cost-sensitive heuristics.

Least squares is solved by normal equations with a stated ridge jitter on
singular Gram matrices, so small fixtures get exact, reproducible answers.
The paired regression classifier turns a cost-sensitive instance into a
single linear threshold; an exhaustive 1-D search provides the matching
ground truth on one-dimensional instances. All learners are deterministic
functions of their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonFiniteInput

RIDGE_JITTER = 1e-8
GRAD_TOL_PER_ROW = 1e-6


def augment(X: np.ndarray) -> np.ndarray:
    """Append the intercept column: x -> [x, 1]."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    return np.hstack([X, np.ones((X.shape[0], 1))])


@dataclass(frozen=True)
class ThresholdClassifier:
    """h(x) = 1 iff theta . [x, 1] > 0 (strict; boundary predicts 0)."""

    theta: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.theta, dtype=np.float64).ravel()
        if not np.all(np.isfinite(t)):
            raise NonFiniteInput("threshold coefficients")
        t.setflags(write=False)
        object.__setattr__(self, "theta", t)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (augment(X) @ self.theta > 0.0).astype(np.float64)


@dataclass(frozen=True)
class CscInstance:
    """Cost-sensitive instance: cost of predicting label l on row i is cost_l[i]."""

    features: np.ndarray
    cost0: np.ndarray
    cost1: np.ndarray

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.features, dtype=np.float64))
        c0 = np.asarray(self.cost0, dtype=np.float64).ravel()
        c1 = np.asarray(self.cost1, dtype=np.float64).ravel()
        if c0.shape[0] != X.shape[0] or c1.shape[0] != X.shape[0]:
            raise DimensionMismatch(X.shape[0], (c0.shape[0], c1.shape[0]))
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(c0)) and np.all(np.isfinite(c1))):
            raise NonFiniteInput("csc instance")
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "cost0", c0)
        object.__setattr__(self, "cost1", c1)

    @property
    def n(self) -> int:
        return self.features.shape[0]


def csc_cost(h: ThresholdClassifier, instance: CscInstance) -> float:
    pred = h.predict(instance.features)
    return float(np.sum(pred * instance.cost1 + (1.0 - pred) * instance.cost0))


@dataclass(frozen=True)
class RegressionModel:
    coefficients: np.ndarray
    kind: str = "least-squares"

    def predict(self, X: np.ndarray) -> np.ndarray:
        raw = augment(X) @ self.coefficients
        if self.kind == "logistic":
            return _sigmoid(raw)
        return raw


def _sigmoid(t: np.ndarray) -> np.ndarray:
    out = np.empty_like(t)
    pos = t >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
    e = np.exp(t[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def solve_normal_equations(gram: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve G theta = b, adding 1e-8 * trace(G) to the diagonal when G is singular."""
    try:
        theta = np.linalg.solve(gram, rhs)
        if np.all(np.isfinite(theta)):
            return theta
    except np.linalg.LinAlgError:
        pass
    jitter = RIDGE_JITTER * float(np.trace(gram))
    if jitter <= 0:
        jitter = RIDGE_JITTER
    return np.linalg.solve(gram + jitter * np.eye(gram.shape[0]), rhs)


def fit_least_squares(X, targets, weights=None) -> RegressionModel:
    """Weighted least squares by normal equations.

    Minimizes sum_i w_i (theta . [x_i, 1] - t_i)^2; the returned solution
    has residual gradient norm <= 1e-6 * n on well-posed inputs, falling
    back to the ridge-jittered system when the Gram matrix is singular.
    """
    Xa = augment(X)
    t = np.asarray(targets, dtype=np.float64).ravel()
    n = Xa.shape[0]
    if t.shape[0] != n:
        raise DimensionMismatch(n, t.shape[0])
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=np.float64).ravel()
    if not (np.all(np.isfinite(Xa)) and np.all(np.isfinite(t)) and np.all(np.isfinite(w))):
        raise NonFiniteInput("least squares input")
    if np.any(w < 0):
        raise NonFiniteInput("negative weights")
    Xw = Xa * w[:, None]
    gram = Xa.T @ Xw
    rhs = Xw.T @ t
    theta = solve_normal_equations(gram, rhs)
    grad = 2.0 * (gram @ theta - rhs)
    if np.linalg.norm(grad) > GRAD_TOL_PER_ROW * n:
        jitter = RIDGE_JITTER * float(np.trace(gram))
        theta = np.linalg.solve(gram + max(jitter, RIDGE_JITTER) * np.eye(gram.shape[0]), rhs)
    return RegressionModel(theta, "least-squares")


def logistic_loss(theta, Xa, y, w) -> float:
    t = Xa @ theta
    return float(np.sum(w * (np.logaddexp(0.0, t) - y * t)))


def fit_logistic(X, labels, weights=None, steps=500, step_size=0.1) -> RegressionModel:
    """Gradient descent on weighted cross-entropy from a zero start.

    Deterministic; returns the best-loss iterate of the descent sequence,
    so the fitted loss never exceeds the loss at initialization.
    """
    Xa = augment(X)
    y = np.asarray(labels, dtype=np.float64).ravel()
    n = Xa.shape[0]
    if y.shape[0] != n:
        raise DimensionMismatch(n, y.shape[0])
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=np.float64).ravel()
    if not (np.all(np.isfinite(Xa)) and np.all(np.isfinite(y)) and np.all(np.isfinite(w))):
        raise NonFiniteInput("logistic input")
    theta = np.zeros(Xa.shape[1])
    best = theta.copy()
    best_loss = logistic_loss(theta, Xa, y, w)
    for _ in range(steps):
        p = _sigmoid(Xa @ theta)
        grad = Xa.T @ (w * (p - y)) / n
        theta = theta - step_size * grad
        loss = logistic_loss(theta, Xa, y, w)
        if loss < best_loss:
            best_loss = loss
            best = theta.copy()
    return RegressionModel(best, "logistic")


def prc_classify(instance: CscInstance) -> ThresholdClassifier:
    """Paired regression classifier.

    Fits one regression per label to predict that label's cost and
    predicts the cheaper label; ties predict 0. Costs may be negative.
    """
    m0 = fit_least_squares(instance.features, instance.cost0)
    m1 = fit_least_squares(instance.features, instance.cost1)
    return ThresholdClassifier(m0.coefficients - m1.coefficients)


def threshold_cuts(values: np.ndarray) -> np.ndarray:
    """Cut positions separating every achievable labeling of a 1-D sample."""
    vals = np.unique(values)
    cuts = np.empty(vals.size + 1)
    cuts[0] = vals[0] - 1.0
    cuts[1:-1] = (vals[:-1] + vals[1:]) / 2.0
    cuts[-1] = vals[-1] + 1.0
    return cuts


def enumerate_1d_thresholds(values: np.ndarray):
    """All cut/orientation threshold classifiers over a 1-D sample.

    Orientation +1 predicts 1 on x > cut, orientation -1 on x < cut; the
    enumeration includes the constant classifiers at the extreme cuts.
    """
    out = []
    for cut in threshold_cuts(values):
        out.append(ThresholdClassifier(np.array([1.0, -cut])))
        out.append(ThresholdClassifier(np.array([-1.0, cut])))
    return out


def exhaustive_1d_csc(instance: CscInstance) -> ThresholdClassifier:
    """Exact CSC minimizer over all 1-D threshold/orientation classifiers."""
    if instance.features.shape[1] != 1:
        raise DimensionMismatch(1, instance.features.shape[1])
    best = None
    best_cost = np.inf
    for h in enumerate_1d_thresholds(instance.features[:, 0]):
        cost = csc_cost(h, instance)
        if cost < best_cost:
            best_cost = cost
            best = h
    return best
