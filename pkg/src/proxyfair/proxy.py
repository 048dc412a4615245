"""Proxy learners for missing sensitive attributes.

Five trainers share one model type: a thresholded logistic baseline, a
plain least-squares fit, the practical constrained loop (auditor +
first-order updates on the three-term loss), the projected-gradient linear
learner with its theoretical dual bound and round count, and the
perturbed-leader learner whose auditor samples signed dual constraints and
whose learner best-responds in closed form. A sixth entry point retargets
the perturbed-leader engine at an explicit finite family of labeling rules
over (x, z).

Training for different groups is embarrassingly parallel; random draws are
seeded per (group, round, draw) so any schedule reproduces the serial run.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .errors import (
    ConfigOverflow,
    EmptyGroup,
    EmptyInput,
    FTooLarge,
    NonFiniteLoss,
    NonPositiveInput,
)
from .learners import (
    ThresholdClassifier,
    augment,
    enumerate_1d_thresholds,
    fit_least_squares,
    fit_logistic,
    solve_normal_equations,
)
from .online import project_ball

BASELINE_BINARY = "baseline_binary"
MSE = "mse"
H_PROXY = "h_proxy"
FTPL = "ftpl"
ALG2 = "alg2"

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class TrainingLog:
    """Per-round constraint violations and the classifiers the auditor chose."""

    ratio_violations: tuple = ()
    error_violations: tuple = ()
    lam0_values: tuple = ()
    lam_l1_values: tuple = ()
    audit: tuple = ()  # (ThresholdClassifier, task) pairs
    extras: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ProxyModel:
    """Linear predictors for sensitive columns, clipped to [0, M] at evaluation.

    ``coef`` has one row per covered group; ``group_indices`` names the
    sensitive columns those rows predict. The thresholded baseline kind
    emits 0/1 instead of clipped reals. An averaged-iterate model is
    represented by the mean coefficient vector, which by linearity equals
    averaging per-iterate predictions.
    """

    kind: str
    coef: np.ndarray
    M: float = 1.0
    group_indices: tuple = (0,)
    config: dict = field(default_factory=dict)
    log: tuple = ()

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.coef, dtype=np.float64))
        if not np.all(np.isfinite(c)):
            raise NonFiniteLoss(-1, "non-finite coefficients")
        c.setflags(write=False)
        object.__setattr__(self, "coef", c)
        object.__setattr__(self, "group_indices", tuple(self.group_indices))
        if len(self.group_indices) != c.shape[0]:
            raise NonPositiveInput("group_indices", self.group_indices)

    def predict_matrix(self, features: np.ndarray) -> np.ndarray:
        raw = augment(features) @ self.coef.T
        if self.kind == BASELINE_BINARY:
            return (raw >= 0.0).astype(np.float64)
        return np.clip(raw, 0.0, self.M)

    def predict(self, features: np.ndarray, k: int) -> np.ndarray:
        cols = list(self.group_indices)
        return self.predict_matrix(features)[:, cols.index(k)]


def stack_proxies(models) -> ProxyModel:
    """Combine single-group models (same kind and M) into one."""
    models = list(models)
    if not models:
        raise EmptyInput("models")
    kind = models[0].kind
    M = models[0].M
    if any(m.kind != kind or m.M != M for m in models):
        raise NonPositiveInput("models", "mixed kinds or ranges")
    coef = np.vstack([m.coef for m in models])
    groups = tuple(g for m in models for g in m.group_indices)
    logs = tuple(entry for m in models for entry in m.log)
    return ProxyModel(kind, coef, M, groups, dict(models[0].config), logs)


def save_proxy(model: ProxyModel, path) -> None:
    doc = {
        "kind": model.kind,
        "M": model.M,
        "group_indices": list(model.group_indices),
        "coefficients": [[float(v) for v in row] for row in model.coef],
        "config": model.config,
        "log_summary": [
            {
                "rounds": len(entry.ratio_violations),
                "final_ratio_violation": entry.ratio_violations[-1] if entry.ratio_violations else None,
                "final_error_violation": entry.error_violations[-1] if entry.error_violations else None,
                "extras": {k: v for k, v in entry.extras.items() if isinstance(v, (int, float, str, bool))},
            }
            for entry in model.log
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)


def load_proxy(path) -> ProxyModel:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return ProxyModel(
        doc["kind"],
        np.array(doc["coefficients"], dtype=np.float64),
        doc["M"],
        tuple(doc["group_indices"]),
        doc.get("config", {}),
    )


@dataclass
class DualState:
    """Signed dual variables with their box/simplex bounds."""

    bound_ratio: float  # on |lam0|
    bound_error: float  # on the l1 norm of the constraint duals
    lam0: float = 0.0
    lam: dict = field(default_factory=dict)

    def l1(self) -> float:
        return float(sum(abs(v) for v in self.lam.values()))

    def within_bounds(self, tol: float = 0.0) -> bool:
        return abs(self.lam0) <= self.bound_ratio + tol and self.l1() <= self.bound_error + tol


# ---------------------------------------------------------------------------
# Simple proxies


def _group_column(dataset: Dataset, k: int) -> np.ndarray:
    z = dataset.sensitive[:, k]
    if z.sum() <= 0:
        raise EmptyGroup(k)
    return z


def fit_baseline(dataset: Dataset, k: int, steps: int = 500, step_size: float = 0.1) -> ProxyModel:
    """Thresholded logistic regression of the sensitive bit on the features."""
    z = _group_column(dataset, k)
    model = fit_logistic(dataset.features, z, weights=dataset.mass * dataset.n, steps=steps, step_size=step_size)
    return ProxyModel(BASELINE_BINARY, model.coefficients[None, :], 1.0, (k,),
                      {"steps": steps, "step_size": step_size})


def fit_mse(dataset: Dataset, k: int, M: float = 1.0) -> ProxyModel:
    """Plain least-squares fit of the sensitive bit, clipped at evaluation."""
    z = _group_column(dataset, k)
    model = fit_least_squares(dataset.features, z, weights=dataset.mass * dataset.n)
    return ProxyModel(MSE, model.coefficients[None, :], M, (k,))


# ---------------------------------------------------------------------------
# Practical constrained loop


def proxy_loss(dataset: Dataset, k: int, zhat: np.ndarray, h: ThresholdClassifier,
               task: int, alpha_coef: float = 0.1):
    """Three-term training loss: scaled squared error, mean-ratio gap,
    and the absolute weighted-residual sum over the classifier's error region.

    Returns the scalar loss and the (mse, ratio, error) component triple,
    with the scale factor folded into the first component.
    """
    z = _group_column(dataset, k)
    zhat = np.asarray(zhat, dtype=np.float64).ravel()
    y = dataset.labels[:, task]
    mse = alpha_coef * float(np.sum((z - zhat) ** 2))
    ratio = abs(float(zhat.sum()) / float(z.sum()) - 1.0)
    err_region = h.predict(dataset.features) != y
    err = abs(float(np.sum((z - zhat) * err_region)))
    return mse + ratio + err, (mse, ratio, err)


@dataclass(frozen=True)
class AuditorStep:
    classifier: ThresholdClassifier
    task: int
    violation: float
    ratio_violation: float
    dominant: str  # "error" | "ratio"


def auditor_step(dataset: Dataset, k: int, zhat: np.ndarray, tasks=None) -> AuditorStep:
    """Find the most constraint-violating threshold classifier.

    Per task, a regression is fit to the signed costs (z - zhat)(1 - 2y)
    and thresholded both ways; the candidate maximizing the absolute
    weighted residual over its error region wins across tasks and signs.
    The ratio constraint's own violation is reported alongside, with a flag
    for which constraint dominates.
    """
    z = _group_column(dataset, k)
    zhat = np.asarray(zhat, dtype=np.float64).ravel()
    X = dataset.features
    resid = z - zhat
    if tasks is None:
        tasks = range(dataset.num_tasks)
    best = None
    for j in tasks:
        y = dataset.labels[:, j]
        costs = resid * (1.0 - 2.0 * y)
        reg = fit_least_squares(X, costs)
        for theta in (reg.coefficients, -reg.coefficients):
            h = ThresholdClassifier(theta)
            v = float(np.sum(resid * (h.predict(X) != y)))
            if best is None or abs(v) > abs(best[2]):
                best = (h, j, v)
    ratio_violation = float(zhat.sum()) / float(z.sum()) - 1.0
    dominant = "error" if abs(best[2]) >= abs(ratio_violation) else "ratio"
    return AuditorStep(best[0], best[1], best[2], ratio_violation, dominant)


@dataclass(frozen=True)
class HProxyConfig:
    rounds: int = 300
    step: float = 0.01
    alpha_coef: float = 0.1
    seed: int = 0
    optimizer: str = "adam"  # or "sgd"
    average: bool = False
    max_loss: float = 1e6


def fit_h_proxy(dataset: Dataset, k: int, config: HProxyConfig = HProxyConfig()) -> ProxyModel:
    """Auditor-in-the-loop training of a linear proxy.

    Each round the auditor picks the most violating classifier and the
    coefficients take one first-order step on the three-term loss
    (adaptive-moment update by default, plain gradient via config). The
    final model is the last iterate, or the uniform iterate average when
    ``config.average`` is set.
    """
    z = _group_column(dataset, k)
    X = dataset.features
    Xa = augment(X)
    sz = float(z.sum())
    col_sum = Xa.sum(axis=0)
    theta = np.zeros(Xa.shape[1])
    m_state = np.zeros_like(theta)
    v_state = np.zeros_like(theta)
    iterates = []
    ratio_log, err_log, audit = [], [], []
    for t in range(1, config.rounds + 1):
        zhat = Xa @ theta
        aud = auditor_step(dataset, k, zhat, None)
        loss, _ = proxy_loss(dataset, k, zhat, aud.classifier, aud.task, config.alpha_coef)
        if not math.isfinite(loss) or loss > config.max_loss:
            raise NonFiniteLoss(t, loss)
        err_region = aud.classifier.predict(X) != dataset.labels[:, aud.task]
        grad = config.alpha_coef * 2.0 * (Xa.T @ (zhat - z))
        grad += np.sign(aud.ratio_violation) * col_sum / sz
        grad -= np.sign(aud.violation) * (Xa.T @ err_region.astype(np.float64))
        if config.optimizer == "adam":
            m_state = ADAM_BETA1 * m_state + (1.0 - ADAM_BETA1) * grad
            v_state = ADAM_BETA2 * v_state + (1.0 - ADAM_BETA2) * grad * grad
            m_hat = m_state / (1.0 - ADAM_BETA1**t)
            v_hat = v_state / (1.0 - ADAM_BETA2**t)
            theta = theta - config.step * m_hat / (np.sqrt(v_hat) + ADAM_EPS)
        else:
            theta = theta - config.step * grad
        iterates.append(theta.copy())
        ratio_log.append(abs(aud.ratio_violation))
        err_log.append(abs(aud.violation))
        audit.append((aud.classifier, aud.task))
    coef = np.mean(iterates, axis=0) if config.average else theta
    log = TrainingLog(tuple(ratio_log), tuple(err_log), (), (), tuple(audit),
                      {"rounds": config.rounds, "step": config.step, "alpha_coef": config.alpha_coef,
                       "optimizer": config.optimizer, "average": config.average})
    return ProxyModel(H_PROXY, coef[None, :], 1.0, (k,),
                      {"rounds": config.rounds, "step": config.step,
                       "alpha_coef": config.alpha_coef, "seed": config.seed}, (log,))


# ---------------------------------------------------------------------------
# Projected-gradient linear learner


@dataclass(frozen=True)
class Alg2Config:
    max_rounds: int = 500
    step_scale: float = 1.0
    pool_size: int = 32
    seed: int = 0


def _candidate_pool(dataset: Dataset, pool_size: int, seed: int, k: int):
    """Fixed audit candidates: constants, random thresholds, 1-D cuts when d=1."""
    d = dataset.d
    pool = [ThresholdClassifier(np.zeros(d + 1)),
            ThresholdClassifier(np.r_[np.zeros(d), 1.0])]
    if d == 1:
        pool.extend(enumerate_1d_thresholds(dataset.features[:, 0]))
    rng = np.random.default_rng([seed, k, 0xB001])
    for _ in range(pool_size):
        pool.append(ThresholdClassifier(rng.normal(size=d + 1)))
    return pool


def alg2_dual_bound(M: float, n: int, alpha: float, group_sum: float) -> int:
    raw = (M * M * (1.0 + n * M) + 2.0 * alpha * group_sum / (1.0 + n * M)) / (alpha * group_sum)
    return int(math.ceil(raw))


def alg2_round_count(dim: int, D: float, M: float, B: float, n: int,
                     C: float, alpha: float, group_sum: float) -> float:
    inner = dim * D * (1.0 + n * M) * (2.0 * M * B + n * C * B / group_sum) / (alpha * group_sum)
    return math.ceil(inner * inner)


def fit_alg2_linear(dataset: Dataset, k: int, alpha_target: float = 0.1, M: float = 1.0,
                    B: float | None = None, D: float = 10.0,
                    config: Alg2Config = Alg2Config()) -> ProxyModel:
    """Projected-gradient training of a linear proxy with hard dual caps.

    The dual bound and theoretical round count follow the stated closed
    forms and are logged; execution caps rounds at ``config.max_rounds``.
    Each round puts the full dual mass on the single most violated
    constraint (error-region argmax over an explicit candidate family,
    exhaustive over 1-D thresholds when d = 1, versus the mean-ratio
    constraint), steps with eta = t^(-1/2), and projects onto the radius-D
    ball. The returned model is the uniform average of the played iterates.
    """
    z = _group_column(dataset, k)
    X = dataset.features
    Xa = augment(X)
    n = dataset.n
    sz = float(z.sum())
    if B is None:
        B = max(1.0, float(np.max(np.abs(Xa))))
    C = alg2_dual_bound(M, n, alpha_target, sz)
    t_theory = alg2_round_count(Xa.shape[1], D, M, B, n, C, alpha_target, sz)
    rounds = int(min(t_theory, config.max_rounds))
    pool = _candidate_pool(dataset, config.pool_size, config.seed, k)
    preds = np.stack([h.predict(X) for h in pool])
    errs = [preds != dataset.labels[:, j] for j in range(dataset.num_tasks)]

    col_sum = Xa.sum(axis=0)
    theta = np.zeros(Xa.shape[1])
    played = []
    ratio_log, err_log, lam0_log, laml1_log, audit = [], [], [], [], []
    for t in range(1, rounds + 1):
        played.append(theta.copy())
        zhat = Xa @ theta
        resid = z - zhat
        best = None
        for j, err in enumerate(errs):
            v = err @ resid
            qi = int(np.argmax(np.abs(v)))
            if best is None or abs(v[qi]) > abs(best[2]):
                best = (qi, j, float(v[qi]))
        rv = float(zhat.sum()) / sz - 1.0
        duals = DualState(bound_ratio=C, bound_error=C)
        grad = (2.0 / n) * (Xa.T @ (zhat - z))
        if abs(best[2]) >= abs(rv):
            duals.lam[(best[0], best[1])] = C * np.sign(best[2])
            grad -= duals.lam[(best[0], best[1])] * (Xa.T @ errs[best[1]][best[0]].astype(np.float64))
            audit.append((pool[best[0]], best[1]))
        else:
            duals.lam0 = C * np.sign(rv)
            grad += duals.lam0 * col_sum / sz
        assert duals.within_bounds()
        theta = project_ball(theta - (config.step_scale / math.sqrt(t)) * grad, D)
        ratio_log.append(abs(rv))
        err_log.append(abs(best[2]))
        lam0_log.append(duals.lam0)
        laml1_log.append(duals.l1())
    coef = np.mean(played, axis=0)
    log = TrainingLog(tuple(ratio_log), tuple(err_log), tuple(lam0_log), tuple(laml1_log),
                      tuple(audit),
                      {"C": C, "T_theory": t_theory, "T": rounds, "D": D, "B": B,
                       "alpha_target": alpha_target})
    return ProxyModel(ALG2, coef[None, :], M, (k,),
                      {"alpha_target": alpha_target, "M": M, "B": B, "D": D,
                       "max_rounds": config.max_rounds, "seed": config.seed}, (log,))


# ---------------------------------------------------------------------------
# Perturbed-leader learner


@dataclass(frozen=True)
class FtplConfig:
    alpha_target: float = 0.1
    delta: float = 0.05
    M: float = 1.0
    rounds_override: int | None = None
    samples_override: int | None = None
    seed: int = 0
    budget: int = 20000
    pool_size: int = 16


def ftpl_dual_bound(M: float, n: int, alpha: float, group_sum: float) -> float:
    return M * M * (1.0 + n * M) / (2.0 * alpha * group_sum) + 1.0


def ftpl_schedule(M: float, n: int, alpha: float, group_sum: float, K: int, delta: float):
    """Theoretical (C, T, W) for the perturbed-leader learner."""
    C = ftpl_dual_bound(M, n, alpha, group_sum)
    t_raw = math.sqrt(2.0 * (1.0 + n * M) * (n**1.5 * C * M + C * n * M / group_sum) / (alpha * group_sum))
    T = int(math.ceil(t_raw))
    w_raw = (1.0 + n * M) ** 2 * n * n * C * C * M * M * math.log(T * K / (2.0 * delta)) / (alpha * group_sum) ** 2
    W = int(math.ceil(w_raw))
    return C, T, W


def ftpl_best_response(Xa: np.ndarray, z: np.ndarray, lam0: float, penalties: np.ndarray,
                       group_sum: float) -> np.ndarray:
    """Closed-form minimizer of the expected Lagrangian over linear proxies.

    ``penalties`` aggregates sum over active constraints of
    lambda_{h,j} * Xa^T(error indicator). Solves the stationarity system of
    (1/n) * ||Xa theta - z||^2 plus the linear dual terms.
    """
    n = Xa.shape[0]
    rhs = Xa.T @ z + (n / 2.0) * (penalties - lam0 * Xa.sum(axis=0) / group_sum)
    return solve_normal_equations(Xa.T @ Xa, rhs)


def _label_costs(z: np.ndarray, zhat: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Cost of labeling each row positive, one column per task: (z - zhat)(1 - 2y)."""
    return (z - zhat)[:, None] * (1.0 - 2.0 * Y)


def _ftpl_engine(dataset: Dataset, k: int, Y: np.ndarray, config: FtplConfig):
    z = _group_column(dataset, k)
    X = dataset.features
    Xa = augment(X)
    n = dataset.n
    sz = float(z.sum())
    m = Y.shape[1]
    K_total = dataset.num_groups
    C, t_theory, w_theory = ftpl_schedule(config.M, n, config.alpha_target, sz, K_total, config.delta)
    C0 = C
    rounds = config.rounds_override if config.rounds_override is not None else t_theory
    samples = config.samples_override if config.samples_override is not None else w_theory
    if (config.rounds_override is None or config.samples_override is None) and rounds * samples > config.budget:
        raise ConfigOverflow(rounds, samples, config.budget)
    eta = (1.0 / (C * config.M)) * math.sqrt(1.0 / (n * rounds))
    eta_prime = (sz / (C0 * n * config.M)) * math.sqrt(1.0 / rounds)

    pool = _candidate_pool(dataset, config.pool_size, config.seed, k)
    preds = np.stack([h.predict(X) for h in pool])  # grows by rows over rounds
    cost_history = []  # per round: (m, n) cost matrix of the learner's response
    responses = []
    zhat = np.zeros(n)
    ratio_log, err_log, lam0_log, laml1_log, audit = [], [], [], [], []

    for t in range(1, rounds + 1):
        current_costs = _label_costs(z, zhat, Y)  # (n, m)
        for j in range(m):
            reg = fit_least_squares(X, current_costs[:, j])
            for theta_c in (reg.coefficients, -reg.coefficients):
                h = ThresholdClassifier(theta_c)
                pool.append(h)
                preds = np.vstack([preds, h.predict(X)[None, :]])
        q = preds.shape[0]
        cum = np.zeros((q, m))
        for past in cost_history:
            cum += np.abs(preds @ past.T)  # (q, m)
        draws = []
        for w in range(1, samples + 1):
            xi = np.random.default_rng([config.seed, k, t, w, 0xF7]).random(n)
            scores = -cum + (preds @ xi)[:, None] / eta
            flat = int(np.argmin(scores))
            qi, j = divmod(flat, m)
            v = float(preds[qi] @ current_costs[:, j])
            draws.append((qi, j, 1.0 if v > 0.0 else -1.0))
        lam = {}
        for qi, j, sign in draws:
            lam[(qi, j)] = lam.get((qi, j), 0.0) + C * sign / samples
        rv = float(zhat.sum()) / sz - 1.0
        p = min(1.0, -eta_prime * rv) if rv < 0.0 else 0.0
        lam0 = C0 * (2.0 * p - 1.0)
        duals = DualState(bound_ratio=C0, bound_error=C, lam0=lam0, lam=lam)
        assert duals.within_bounds(1e-9)
        penalties = np.zeros(Xa.shape[1])
        for (qi, j), weight in lam.items():
            err = (preds[qi] != Y[:, j]).astype(np.float64)
            penalties += weight * (Xa.T @ err)
            audit.append((pool[qi], j))
        theta = ftpl_best_response(Xa, z, lam0, penalties, sz)
        zhat = Xa @ theta
        responses.append(theta)
        cost_history.append(_label_costs(z, zhat, Y).T)  # (m, n)
        ratio_log.append(abs(rv))
        err_log.append(max(abs(float(preds[qi] @ current_costs[:, j])) for qi, j, _ in draws))
        lam0_log.append(lam0)
        laml1_log.append(duals.l1())

    coef = np.mean(responses, axis=0)
    log = TrainingLog(tuple(ratio_log), tuple(err_log), tuple(lam0_log), tuple(laml1_log),
                      tuple(audit),
                      {"C": C, "C0": C0, "T_theory": t_theory, "W_theory": w_theory,
                       "T": rounds, "W": samples, "eta": eta, "eta_prime": eta_prime})
    return coef, log


def fit_alg1_ftpl(dataset: Dataset, k: int, config: FtplConfig = FtplConfig()) -> ProxyModel:
    """Perturbed-leader proxy training against the dataset's label columns.

    Deterministic under the seed; the model is the uniform average of the
    per-round best responses. Theoretical round/sample counts are logged;
    without explicit overrides a schedule exceeding the budget raises
    ConfigOverflow rather than silently truncating.
    """
    coef, log = _ftpl_engine(dataset, k, dataset.labels, config)
    return ProxyModel(FTPL, coef[None, :], config.M, (k,),
                      {"alpha_target": config.alpha_target, "delta": config.delta,
                       "M": config.M, "seed": config.seed,
                       "rounds_override": config.rounds_override,
                       "samples_override": config.samples_override}, (log,))


def fit_function_class(dataset: Dataset, k: int, explicit_rules,
                       config: FtplConfig = FtplConfig()) -> ProxyModel:
    """Perturbed-leader training against an explicit finite rule family.

    Each rule maps (features, sensitive) to binary labels; the engine runs
    on the induced label matrix, so a single constant-zero rule coincides
    exactly with training on one all-zero label column.
    """
    rules = list(explicit_rules)
    if not rules:
        raise EmptyInput("explicit rule family")
    if len(rules) > 64:
        raise FTooLarge(len(rules))
    cols = []
    for f in rules:
        col = np.asarray(f(dataset.features, dataset.sensitive), dtype=np.float64).ravel()
        if col.shape[0] != dataset.n or not np.all((col == 0.0) | (col == 1.0)):
            raise NonPositiveInput("rule output", "must be binary of length n")
        cols.append(col)
    Y = np.stack(cols, axis=1)
    coef, log = _ftpl_engine(dataset, k, Y, config)
    return ProxyModel(FTPL, coef[None, :], config.M, (k,),
                      {"alpha_target": config.alpha_target, "delta": config.delta,
                       "M": config.M, "seed": config.seed, "family_size": len(rules),
                       "rounds_override": config.rounds_override,
                       "samples_override": config.samples_override}, (log,))


def statistical_parity_mode(dataset: Dataset) -> Dataset:
    """Swap the label columns for a single all-zero dummy column.

    With the dummy labels the error region of any classifier is exactly
    its positive region, so equalized-error training yields a
    statistical-parity multiaccurate proxy.
    """
    return dataset.with_labels(np.zeros((dataset.n, 1)))


def train_proxy(dataset: Dataset, kind: str, k: int, options: dict | None = None) -> ProxyModel:
    """Dispatch a single-group training run by kind name."""
    options = dict(options or {})
    if kind == BASELINE_BINARY or kind == "baseline":
        options.pop("seed", None)  # deterministic fits take no seed
        return fit_baseline(dataset, k, **options)
    if kind == MSE:
        options.pop("seed", None)
        return fit_mse(dataset, k, **options)
    if kind == H_PROXY:
        return fit_h_proxy(dataset, k, HProxyConfig(**options))
    if kind == FTPL:
        return fit_alg1_ftpl(dataset, k, FtplConfig(**options))
    if kind == ALG2:
        cfg = Alg2Config(**{key: options.pop(key) for key in ("max_rounds", "step_scale", "pool_size", "seed")
                            if key in options})
        return fit_alg2_linear(dataset, k, config=cfg, **options)
    raise NonPositiveInput("proxy kind", kind)
