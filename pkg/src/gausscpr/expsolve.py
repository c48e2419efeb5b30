"""Exponential-node linear systems recovering A and B from scaled magnitudes.

The model  e^{2 lam gamma^2} |f(gamma)|^2 = sum_m A_m u^m,  u = e^{2 lam beta gamma},
is a Vandermonde system in the nodes u after factoring out u^{m_min}.  The
square case is solved by Bjorck-Pereyra progressive elimination on sorted
positive nodes, which is far more accurate here than forming the inverse;
oversampled sets go through orthogonal least squares.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .autocorr import AutocorrData, d_mag_sq_from_samples
from .errors import (DuplicateNodes, InsufficientSamples, InvalidLeadingCoefficient,
                     InvalidSignal, RankDeficient)
from .signals import SampleSet

NODE_GAP_REL = 1e-13
CONDITION_WARN = 1e12


@dataclass(frozen=True)
class MomentProblem:
    """Scaled-magnitude values at distinct points and the exponent range."""

    gammas: np.ndarray
    values: np.ndarray
    m_min: int
    m_max: int
    lam: float
    beta: float

    def __post_init__(self):
        g = np.asarray(self.gammas, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if len(g) != len(v):
            raise InvalidSignal("gammas and values must have equal length")
        if self.m_max < self.m_min:
            raise InvalidSignal("m_max must be >= m_min")
        if len(g) < self.m_max - self.m_min + 1:
            raise InsufficientSamples(
                f"{self.m_max - self.m_min + 1} unknowns need at least as many samples, "
                f"got {len(g)}")
        order = np.argsort(g)
        object.__setattr__(self, "gammas", g[order])
        object.__setattr__(self, "values", v[order])
        if np.any(np.diff(self.gammas) == 0):
            raise DuplicateNodes("sampling points coincide")

    @property
    def n_unknowns(self) -> int:
        return self.m_max - self.m_min + 1


def _log_nodes(gammas: np.ndarray, lam: float, beta: float) -> np.ndarray:
    """w = log u = 2 lam beta gamma for the (sorted) sample points."""
    return 2.0 * lam * beta * np.asarray(gammas, dtype=float)


def _check_node_gaps(w: np.ndarray):
    """RankDeficient when min gap of u falls below 1e-13 * max u (log test)."""
    if len(w) < 2:
        return
    dw = np.diff(w)
    if np.any(dw == 0.0):
        raise DuplicateNodes("exponential nodes coincide")
    # log(u_{i+1} - u_i) = w_{i+1} + log(1 - e^{-dw})
    with np.errstate(divide="ignore"):
        log_gap = w[1:] + np.log(-np.expm1(-dw))
    if np.min(log_gap) < np.log(NODE_GAP_REL) + np.max(w):
        raise RankDeficient("exponential nodes too close for a stable solve")


def _bjorck_pereyra(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Solve sum_p x_p u_i^p = v_i for ascending positive nodes u."""
    x = np.array(v, dtype=float)
    n = len(u) - 1
    for k in range(n):
        x[k + 1:] = (x[k + 1:] - x[k:-1]) / (u[k + 1:] - u[: n - k])
    for k in range(n - 1, -1, -1):
        x[k:n] -= u[k] * x[k + 1: n + 1]
    return x


def _least_squares(u: np.ndarray, v: np.ndarray, ncoef: int) -> np.ndarray:
    """Column-scaled orthogonal least squares for oversampled node sets."""
    V = u[:, None] ** np.arange(ncoef)[None, :]
    col = np.max(np.abs(V), axis=0)
    col[col == 0] = 1.0
    sol, _, rank, _ = np.linalg.lstsq(V / col, v, rcond=None)
    if rank < ncoef:
        raise RankDeficient("oversampled design matrix is rank-deficient")
    return sol / col


def condition_report(gammas, lam: float, beta: float, m_count: int) -> float:
    """1-norm condition number of the node-power matrix V[i, p] = u_i^p.

    For positive nodes the Lagrange-basis coefficients alternate in sign, so
    ||V^{-1}||_1 = max_n prod_{j != n} (1 + u_j)/|u_n - u_j| exactly; both
    factors are evaluated in log space so the estimate never overflows
    prematurely.  Returns inf when the true value exceeds float range.
    """
    w = np.sort(_log_nodes(np.asarray(gammas, dtype=float), lam, beta))
    ncoef = int(m_count)
    if ncoef <= 1 or len(w) == 1:
        return 1.0
    w = w[: len(w)]
    # log ||V||_1 = max_p logsumexp(p * w)
    p = np.arange(ncoef)
    pw = p[None, :] * w[:, None]
    mx = np.max(pw, axis=0)
    log_norm_v = np.max(mx + np.log(np.sum(np.exp(pw - mx[None, :]), axis=0)))
    # log ||V^{-1}||_1 via pairwise log|u_n - u_j| and log(1 + u_j)
    log1p_u = np.logaddexp(0.0, w)
    best = -np.inf
    for i in range(len(w)):
        diff = np.abs(w - w[i])
        mask = np.arange(len(w)) != i
        with np.errstate(divide="ignore"):
            log_abs_diff = np.maximum(w, w[i]) + np.log(-np.expm1(-np.maximum(diff, 1e-300)))
        total = np.sum(log1p_u[mask] - log_abs_diff[mask])
        best = max(best, total)
    with np.errstate(over="ignore"):
        return float(np.exp(log_norm_v + best))


def solve_moments(problem: MomentProblem) -> tuple[np.ndarray, float]:
    """Recover {X_m} with sum_m X_m u^m = values; returns (coeffs, condition).

    Ill-conditioning is reported, never raised; the caller decides.
    """
    w = _log_nodes(problem.gammas, problem.lam, problem.beta)
    _check_node_gaps(w)
    u = np.exp(w)
    # factor out u^{m_min} so the exponents start at zero
    v = problem.values * np.exp(-problem.m_min * w)
    ncoef = problem.n_unknowns
    if len(u) == ncoef:
        coeffs = _bjorck_pereyra(u, v)
    else:
        coeffs = _least_squares(u, v, ncoef)
    cond = condition_report(problem.gammas, problem.lam, problem.beta, ncoef)
    return coeffs, cond


def solve_residual(problem: MomentProblem, coeffs: np.ndarray) -> float:
    """Max reproduction error of the factored system, relative to its values."""
    w = _log_nodes(problem.gammas, problem.lam, problem.beta)
    u = np.exp(w)
    v = problem.values * np.exp(-problem.m_min * w)
    fit = (u[:, None] ** np.arange(problem.n_unknowns)[None, :]) @ coeffs
    return float(np.max(np.abs(fit - v)) / max(np.max(np.abs(v)), 1e-300))


def recover_A(samples: SampleSet, k_min: int, k_max: int,
              lam: float, beta: float) -> tuple[AutocorrData, float]:
    """Recover the A-sequence from |f| samples; returns (data, condition).

    The leading entry A_{2 k_min} equals |c_{k_min}|^2 e^{-2 lam beta^2 k_min^2}
    and must be positive, otherwise the assumed support window is wrong.
    """
    need = 2 * (k_max - k_min) + 1
    if len(samples) < need:
        raise InsufficientSamples(
            f"window [{k_min}, {k_max}] needs at least {need} samples, got {len(samples)}")
    values = np.exp(2.0 * lam * samples.gammas**2) * samples.mag_f**2
    problem = MomentProblem(gammas=samples.gammas, values=values,
                            m_min=2 * k_min, m_max=2 * k_max, lam=lam, beta=beta)
    coeffs, cond = solve_moments(problem)
    m = problem.m_min + np.arange(need)
    grade = np.exp(lam * beta**2 * m.astype(float)**2 / 2.0)
    r = coeffs * grade
    if coeffs[0] <= 0 or r[0] <= 1e-10 * np.max(np.abs(r)):
        raise InvalidLeadingCoefficient(
            f"recovered A at m = {2 * k_min} is not positive; support window wrong?")
    return AutocorrData(m_min=2 * k_min, A=coeffs, B=None, lam=lam, beta=beta), cond


def recover_B(samples: SampleSet, data_a: AutocorrData, k_min: int, k_max: int,
              clamp_tol: float = 1e-10) -> tuple[AutocorrData, float]:
    """Recover the B-sequence from |f'| samples and the recovered A.

    ``clamp_tol`` loosens the negativity guard of the |d|^2 extraction for
    noisy magnitudes (the default is the exact-data rounding allowance).
    Returns the merged AutocorrData and the condition estimate.
    """
    lam, beta = data_a.lam, data_a.beta
    dsq = np.array([
        d_mag_sq_from_samples(g, mf, mdf, data_a, tol=clamp_tol)
        for g, mf, mdf in zip(samples.gammas, samples.mag_f, samples.mag_df)
    ])
    values = np.exp(2.0 * lam * samples.gammas**2) * dsq
    problem = MomentProblem(gammas=samples.gammas, values=values,
                            m_min=2 * k_min, m_max=2 * k_max, lam=lam, beta=beta)
    coeffs, cond = solve_moments(problem)
    merged = AutocorrData(m_min=data_a.m_min, A=data_a.A, B=coeffs, lam=lam, beta=beta)
    return merged, cond
