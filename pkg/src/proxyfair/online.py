"""No-regret primitives: perturbed-leader play over the binary cube and
projected gradient descent over a ball.

These are the abstractions behind the two proxy-training loops; the regret
harnesses in the test suite drive them directly against their bounds.
"""

from __future__ import annotations

import numpy as np


def ftpl_cube_actions(losses: np.ndarray, eta: float, rng) -> np.ndarray:
    """Play follow-the-perturbed-leader over actions {0,1}^n.

    ``losses`` is a (T, n) sequence revealed one row per round; the action
    at round t minimizes <cumulative loss before t, a> + (1/eta) <xi_t, a>
    with fresh uniform noise xi_t. The argmin over the cube separates per
    coordinate. Returns the (T, n) 0/1 action matrix.
    """
    losses = np.atleast_2d(np.asarray(losses, dtype=np.float64))
    T, n = losses.shape
    actions = np.zeros((T, n))
    cum = np.zeros(n)
    for t in range(T):
        xi = rng.random(n)
        actions[t] = (cum + xi / eta < 0.0).astype(np.float64)
        cum += losses[t]
    return actions


def ftpl_cube_regret(losses: np.ndarray, eta: float, rng) -> float:
    """Realized regret of one FTPL run against the best fixed cube vertex."""
    losses = np.atleast_2d(np.asarray(losses, dtype=np.float64))
    actions = ftpl_cube_actions(losses, eta, rng)
    incurred = float(np.sum(losses * actions))
    totals = losses.sum(axis=0)
    best = float(np.sum(np.minimum(totals, 0.0)))
    return incurred - best


def project_ball(theta: np.ndarray, radius: float) -> np.ndarray:
    """Euclidean projection onto the origin-centered ball of the given radius."""
    norm = float(np.linalg.norm(theta))
    if norm <= radius or norm == 0.0:
        return theta
    return theta * (radius / norm)


def ogd_play(grad_fn, theta0: np.ndarray, eta: float, radius: float, rounds: int):
    """Projected gradient descent with a fixed step size.

    ``grad_fn(t, theta)`` returns the round-t loss gradient at the played
    point. Returns the list of played iterates (length ``rounds``), each
    inside the radius ball.
    """
    theta = project_ball(np.asarray(theta0, dtype=np.float64).copy(), radius)
    played = []
    for t in range(rounds):
        played.append(theta.copy())
        grad = np.asarray(grad_fn(t, theta), dtype=np.float64)
        theta = project_ball(theta - eta * grad, radius)
    return played
