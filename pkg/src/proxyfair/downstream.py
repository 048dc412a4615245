"""Fairness-constrained downstream training and tradeoff bookkeeping.

The reductions loop trades population error against pairwise group-error
gaps: duals on the signed pairwise constraints reweight a cost-sensitive
instance each round, the paired regression classifier best-responds, and
the uniform mixture of the played classifiers is returned. Statistics of
the randomized ensemble are computed exactly as weight-averaged member
statistics, never sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .data import Dataset
from .errors import EmptyGroup, EmptyInput, NonFiniteDual, NonPositiveInput
from .fairness import FairnessSpec, group_rate
from .learners import CscInstance, ThresholdClassifier, prc_classify


@dataclass(frozen=True)
class Ensemble:
    """Finite mixture of threshold classifiers with weights summing to 1."""

    members: tuple
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64).ravel()
        if w.size != len(self.members) or w.size == 0:
            raise EmptyInput("ensemble members")
        if np.any(w < 0) or abs(float(w.sum()) - 1.0) > 1e-12:
            raise NonPositiveInput("ensemble weights", w)
        w.setflags(write=False)
        object.__setattr__(self, "members", tuple(self.members))
        object.__setattr__(self, "weights", w)

    def to_json_dict(self) -> dict:
        return {
            "members": [[float(v) for v in h.theta] for h in self.members],
            "weights": [float(v) for v in self.weights],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Ensemble":
        members = tuple(ThresholdClassifier(np.array(t)) for t in doc["members"])
        return cls(members, np.array(doc["weights"]))


@dataclass(frozen=True)
class ReductionsConfig:
    gamma: float = 0.0
    rounds: int = 500
    a: float = 5.0
    b: float = 0.5
    dual_bound: float = 50.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise NonPositiveInput("gamma", self.gamma)
        if self.a <= 0 or self.b <= 0:
            raise NonPositiveInput("lr schedule", (self.a, self.b))


@dataclass(frozen=True)
class TradeoffPoint:
    gamma: float
    error: float
    disparity_true: float
    disparity_proxy: float
    split: str  # train | test
    kind: str


def fit_reductions(dataset: Dataset, spec: FairnessSpec = FairnessSpec(),
                   config: ReductionsConfig = ReductionsConfig(), task: int = 0,
                   group_weights=None) -> Ensemble:
    """Error-parity reductions with signed pairwise dual ascent.

    Group membership comes from ``group_weights`` (n, K) when given, else
    the dataset's binary sensitive columns; real-valued weights are the
    statistically equivalent form of the doubled binary transformation.
    Each round the label-flip cost of row i is
    mass_i * (1 + sum over ordered pairs of dual * (w_ik/S_k - w_ik'/S_k'))
    and the paired regression classifier best-responds (costs may be
    negative); duals then take a projected step eta_t = a * t^(-b) on the
    signed gap violations, clipped to [0, dual_bound].
    """
    W = dataset.sensitive if group_weights is None else np.atleast_2d(np.asarray(group_weights, dtype=np.float64))
    K = W.shape[1]
    mass = dataset.mass
    y = dataset.labels[:, task]
    X = dataset.features
    S = mass @ W
    for k in range(K):
        if S[k] <= 0.0:
            raise EmptyGroup(k)
    pairs = list(combinations(range(K), 2))
    lam_pos = np.zeros(len(pairs))
    lam_neg = np.zeros(len(pairs))
    members = []
    for t in range(1, config.rounds + 1):
        weight = np.ones(dataset.n)
        for p, (k1, k2) in enumerate(pairs):
            weight += (lam_pos[p] - lam_neg[p]) * (W[:, k1] / S[k1] - W[:, k2] / S[k2])
        cost = mass * weight
        h = prc_classify(CscInstance(X, cost * (y == 1.0), cost * (y == 0.0)))
        members.append(h)
        err = (h.predict(X) != y).astype(np.float64)
        rates = (mass * err) @ W / S
        eta = config.a * t ** (-config.b)
        for p, (k1, k2) in enumerate(pairs):
            gap = rates[k1] - rates[k2]
            lam_pos[p] = min(max(lam_pos[p] + eta * (gap - config.gamma), 0.0), config.dual_bound)
            lam_neg[p] = min(max(lam_neg[p] + eta * (-gap - config.gamma), 0.0), config.dual_bound)
        if not (np.all(np.isfinite(lam_pos)) and np.all(np.isfinite(lam_neg))):
            raise NonFiniteDual(t)
    return Ensemble(tuple(members), np.full(len(members), 1.0 / len(members)))


def expected_stats(ensemble: Ensemble, dataset: Dataset, spec: FairnessSpec,
                   weights="true", task: int = 0, groups=None):
    """Exact expected (population error, disparity) of a randomized ensemble."""
    y = dataset.labels[:, task]
    errors = [float(np.sum(dataset.mass * (h.predict(dataset.features) != y))) for h in ensemble.members]
    error = float(np.dot(ensemble.weights, errors))
    if groups is None:
        if isinstance(weights, str):
            groups = range(dataset.num_groups)
        elif hasattr(weights, "group_indices"):
            groups = list(weights.group_indices)
        else:
            arr = np.atleast_2d(np.asarray(weights, dtype=np.float64))
            groups = range(arr.shape[1])
    rates = [group_rate(dataset, ensemble, spec, k, weights, task) for k in groups]
    disp = max(abs(a - b) for a in rates for b in rates)
    return error, disp


def pareto_frontier(points):
    """Non-dominated tradeoff points plus the mixture segments joining them.

    A point is dominated when another has error and true-z disparity both
    no larger, one strictly. The frontier is sorted by error ascending
    (disparity then descends); consecutive points are joined by segments
    achievable as ensemble convex combinations.
    """
    points = list(points)
    if not points:
        raise EmptyInput("tradeoff points")

    def dominated(p, q):
        return (q.error <= p.error and q.disparity_true <= p.disparity_true
                and (q.error < p.error or q.disparity_true < p.disparity_true))

    frontier = [p for p in points if not any(dominated(p, q) for q in points)]
    frontier.sort(key=lambda p: (p.error, -p.disparity_true))
    segments = [(frontier[i], frontier[i + 1]) for i in range(len(frontier) - 1)]
    return frontier, segments
