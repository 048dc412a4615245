"""Group fairness notions, conditional group rates, and proxy-quality audits.

A fairness notion is a pair of events: a classifier-dependent event E1 and
a conditioning event E2 over (x, y). The group rate is the weighted
conditional frequency of E1 within E2, where the per-row group weight is
either the binary sensitive bit or a real-valued proxy value. The proxy
quality alpha is the largest gap between true-weighted and proxy-weighted
rates over an explicit audit set of classifiers and tasks.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .data import Dataset, FiniteDistribution
from .errors import DegenerateProxy, EmptyGroup, EmptyInput, NonPositiveInput
from .learners import ThresholdClassifier, enumerate_1d_thresholds

DEGENERATE_PROXY_TOL = 1e-9

STATISTICAL_PARITY = "statistical_parity"
EQUALIZED_ERROR = "equalized_error"
EQUAL_FPR = "equal_fpr"
EQUAL_FNR = "equal_fnr"

_NOTIONS = (STATISTICAL_PARITY, EQUALIZED_ERROR, EQUAL_FPR, EQUAL_FNR)


@dataclass(frozen=True)
class FairnessSpec:
    """Selects one member of the (E1, E2) family by name."""

    notion: str = EQUALIZED_ERROR

    def __post_init__(self):
        if self.notion not in _NOTIONS:
            raise NonPositiveInput("notion", self.notion)

    def e1_mask(self, pred: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.notion == EQUALIZED_ERROR:
            return pred != y
        if self.notion == EQUAL_FNR:
            return pred == 0.0
        return pred == 1.0  # statistical parity and FPR share E1

    def e2_mask(self, y: np.ndarray) -> np.ndarray:
        if self.notion == EQUAL_FPR:
            return y == 0.0
        if self.notion == EQUAL_FNR:
            return y == 1.0
        return np.ones_like(y, dtype=bool)


@dataclass(frozen=True)
class GroupStats:
    group: int
    numerator: float
    denominator: float

    @property
    def rate(self) -> float:
        return self.numerator / self.denominator


def _resolve_weights(data, weights, k: int) -> tuple[np.ndarray, bool]:
    """Per-row group weights and whether they are the true binary column."""
    if isinstance(weights, str) and weights == "true":
        if isinstance(data, FiniteDistribution):
            return data.cond_z[:, k], True
        return data.sensitive[:, k], True
    if hasattr(weights, "predict_matrix"):
        feats = data.points if isinstance(data, FiniteDistribution) else data.features
        cols = list(weights.group_indices)
        if k not in cols:
            raise EmptyGroup(k)
        return weights.predict_matrix(feats)[:, cols.index(k)], False
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim == 1:
        return w, False
    return w[:, k], False


def _mass_labels(data, task: int):
    if isinstance(data, FiniteDistribution):
        return data.probs, data.labels[:, task]
    return data.mass, data.labels[:, task]


def _rate_from_pred(data, pred, spec, k, weights, task):
    mass, y = _mass_labels(data, task)
    w, is_true = _resolve_weights(data, weights, k)
    e2 = spec.e2_mask(y)
    denom = float(np.sum(mass * w * e2))
    if is_true:
        if denom <= 0.0:
            raise EmptyGroup(k)
    elif denom <= DEGENERATE_PROXY_TOL:
        raise DegenerateProxy(k, denom)
    e1 = spec.e1_mask(pred, y) & e2
    num = float(np.sum(mass * w * e1))
    return GroupStats(k, num, denom)


def _predictions(data, h):
    feats = data.points if isinstance(data, FiniteDistribution) else data.features
    return h.predict(feats)


def group_rate(data, h, spec: FairnessSpec, k: int, weights="true", task: int = 0) -> float:
    """Weighted conditional rate of E1(h) within E2 for group k.

    ``weights`` selects the group weighting: "true" for the binary
    sensitive column (exact conditional expectation on a
    FiniteDistribution), a proxy model, or a raw weight array used as-is.
    For a randomized ensemble the rate is the exact mixture expectation.
    """
    if hasattr(h, "members"):
        stats = [_rate_from_pred(data, _predictions(data, m), spec, k, weights, task) for m in h.members]
        num = float(np.dot(h.weights, [s.numerator for s in stats]))
        return num / stats[0].denominator
    return _rate_from_pred(data, _predictions(data, h), spec, k, weights, task).rate


def disparity(data, h, spec: FairnessSpec, weights="true", task: int = 0, groups=None) -> float:
    """Largest pairwise gap between group rates."""
    if groups is None:
        groups = range(data.num_groups)
    rates = [group_rate(data, h, spec, k, weights, task) for k in groups]
    return max(abs(a - b) for a in rates for b in rates)


def alpha_to_slack(alpha: float, n: int, M: float, group_mass: float) -> float:
    """Constraint slack equivalent to a target proxy quality alpha."""
    if n <= 0:
        raise NonPositiveInput("n", n)
    if M <= 0:
        raise NonPositiveInput("M", M)
    if group_mass <= 0:
        raise NonPositiveInput("group_mass", group_mass)
    if alpha < 0:
        raise NonPositiveInput("alpha", alpha)
    return alpha * group_mass / (1.0 + n * M)


@dataclass(frozen=True)
class AlphaReport:
    """Per-(group, classifier, task) violation table plus its maximum."""

    rows: tuple  # (k, h_id, task, true_rate, proxy_rate, violation)
    alpha: float

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "h_id", "task_j", "true_rate", "proxy_rate", "violation"])
            for row in self.rows:
                writer.writerow([row[0], row[1], row[2]] + [format(v, ".17g") for v in row[3:]])


def measure_alpha(data, proxy, audit_set, spec: FairnessSpec) -> AlphaReport:
    """Worst gap between true- and proxy-weighted rates over an audit set.

    ``audit_set`` is a sequence of (classifier, task index) pairs; on a
    FiniteDistribution every expectation is an exact sum over the support.
    ``proxy`` may be a proxy model or a raw per-row value array.
    """
    audit_set = list(audit_set)
    if not audit_set:
        raise EmptyInput("audit set")
    if hasattr(proxy, "group_indices"):
        groups = list(proxy.group_indices)
    else:
        arr = np.asarray(proxy, dtype=np.float64)
        groups = [0] if arr.ndim == 1 else list(range(arr.shape[1]))
    rows = []
    worst = 0.0
    for h_id, (h, task) in enumerate(audit_set):
        pred = _predictions(data, h)
        for k in groups:
            true_rate = _rate_from_pred(data, pred, spec, k, "true", task).rate
            proxy_rate = _rate_from_pred(data, pred, spec, k, proxy, task).rate
            gap = abs(true_rate - proxy_rate)
            worst = max(worst, gap)
            rows.append((k, h_id, task, true_rate, proxy_rate, gap))
    return AlphaReport(tuple(rows), worst)


# ---------------------------------------------------------------------------
# Audit-set builders


def audit_random_thresholds(d: int, count: int = 200, seed: int = 0, tasks=(0,)):
    """Seeded random linear-threshold classifiers paired with each task."""
    rng = np.random.default_rng([seed, 0xA0D1])
    out = []
    for _ in range(count):
        theta = rng.normal(size=d + 1)
        for j in tasks:
            out.append((ThresholdClassifier(theta), j))
    return out


def audit_axis_thresholds(features: np.ndarray, tasks=(0,)):
    """Every axis-aligned threshold/orientation over the sample, per task."""
    X = np.atleast_2d(np.asarray(features, dtype=np.float64))
    d = X.shape[1]
    out = []
    for axis in range(d):
        for h1 in enumerate_1d_thresholds(X[:, axis]):
            theta = np.zeros(d + 1)
            theta[axis] = h1.theta[0]
            theta[d] = h1.theta[1]
            for j in tasks:
                out.append((ThresholdClassifier(theta), j))
    return out
