"""Gaussian shift-invariant signals and phaseless Hermite sampling.

A signal is a finite sum f(x) = sum_k c_k exp(-lam (x - beta k)^2) with
complex coefficients c_k on the integer lattice window [k_min, k_max].
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DuplicatePoints, InvalidSignal


@dataclass(frozen=True)
class GaussianSignal:
    """Finite-duration signal in the Gaussian shift-invariant space.

    ``coeffs[j]`` is the coefficient at absolute lattice index ``k_min + j``.
    The first and last coefficients must be nonzero so the support window is
    well defined.  The empty sequence is the dedicated zero signal and is
    produced only by :func:`omega_signal`.
    """

    lam: float
    beta: float
    k_min: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not (self.lam > 0 and np.isfinite(self.lam)):
            raise InvalidSignal(f"lambda must be positive, got {self.lam}")
        if not (self.beta > 0 and np.isfinite(self.beta)):
            raise InvalidSignal(f"beta must be positive, got {self.beta}")
        c = np.asarray(self.coeffs, dtype=complex)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "k_min", int(self.k_min))
        if c.size and not np.all(np.isfinite(c)):
            raise InvalidSignal("coefficients must be finite")
        if c.size and (c[0] == 0 or c[-1] == 0):
            raise InvalidSignal("leading and trailing coefficients must be nonzero")

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def k_max(self) -> int:
        return self.k_min + len(self.coeffs) - 1

    @property
    def indices(self) -> np.ndarray:
        """Absolute lattice indices, k_min .. k_max."""
        return self.k_min + np.arange(len(self.coeffs))

    def to_dict(self) -> dict:
        return {
            "lambda": float(self.lam),
            "beta": float(self.beta),
            "k_min": int(self.k_min),
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GaussianSignal":
        coeffs = np.array([complex(re, im) for re, im in d["coeffs"]])
        if coeffs.size == 0:
            raise InvalidSignal("serialized signal must have coefficients")
        return cls(lam=float(d["lambda"]), beta=float(d["beta"]),
                   k_min=int(d["k_min"]), coeffs=coeffs)


def zero_signal(lam: float, beta: float) -> GaussianSignal:
    """The zero signal (empty support); only omega_signal should need it."""
    return GaussianSignal(lam=lam, beta=beta, k_min=0, coeffs=np.zeros(0, dtype=complex))


@dataclass(frozen=True)
class SampleSet:
    """Phaseless Hermite samples: gamma, |f(gamma)|, |f'(gamma)|."""

    gammas: np.ndarray
    mag_f: np.ndarray
    mag_df: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gammas, dtype=float)
        mf = np.asarray(self.mag_f, dtype=float)
        mdf = np.asarray(self.mag_df, dtype=float)
        if not (len(g) == len(mf) == len(mdf)):
            raise InvalidSignal("sample arrays must have equal length")
        if len(np.unique(g)) != len(g):
            raise DuplicatePoints("sampling points must be pairwise distinct")
        if not (np.all(np.isfinite(g)) and np.all(np.isfinite(mf)) and np.all(np.isfinite(mdf))):
            raise InvalidSignal("samples must be finite")
        if np.any(mf < 0) or np.any(mdf < 0):
            raise InvalidSignal("magnitudes must be nonnegative")
        object.__setattr__(self, "gammas", g)
        object.__setattr__(self, "mag_f", mf)
        object.__setattr__(self, "mag_df", mdf)

    def __len__(self) -> int:
        return len(self.gammas)

    def to_dict(self) -> dict:
        return {"points": [
            {"gamma": float(g), "mag_f": float(a), "mag_df": float(b)}
            for g, a, b in zip(self.gammas, self.mag_f, self.mag_df)
        ]}

    @classmethod
    def from_dict(cls, d: dict) -> "SampleSet":
        pts = d["points"]
        return cls(gammas=np.array([p["gamma"] for p in pts], dtype=float),
                   mag_f=np.array([p["mag_f"] for p in pts], dtype=float),
                   mag_df=np.array([p["mag_df"] for p in pts], dtype=float))


def _kahan_sum(terms: np.ndarray) -> np.ndarray:
    """Compensated summation along axis 0, in index order.

    The Gaussian terms span many orders of magnitude, so plain accumulation
    loses digits for wide windows.
    """
    total = np.zeros(terms.shape[1:], dtype=terms.dtype)
    comp = np.zeros_like(total)
    for term in terms:
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def evaluate(signal: GaussianSignal, x) -> complex | np.ndarray:
    """Evaluate f(x) = sum_k c_k exp(-lam (x - beta k)^2)."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if signal.is_zero:
        out = np.zeros(xa.shape, dtype=complex)
        return out[0] if np.isscalar(x) or np.ndim(x) == 0 else out
    k = signal.indices
    terms = signal.coeffs[:, None] * np.exp(
        -signal.lam * (xa[None, :] - signal.beta * k[:, None]) ** 2)
    out = _kahan_sum(terms)
    return out[0] if np.isscalar(x) or np.ndim(x) == 0 else out


def evaluate_derivative(signal: GaussianSignal, x) -> complex | np.ndarray:
    """Evaluate f'(x) = 2 lam sum_k (beta k - x) c_k exp(-lam (x - beta k)^2)."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if signal.is_zero:
        out = np.zeros(xa.shape, dtype=complex)
        return out[0] if np.isscalar(x) or np.ndim(x) == 0 else out
    k = signal.indices
    centers = signal.beta * k[:, None]
    terms = (2.0 * signal.lam * (centers - xa[None, :]) * signal.coeffs[:, None]
             * np.exp(-signal.lam * (xa[None, :] - centers) ** 2))
    out = _kahan_sum(terms)
    return out[0] if np.isscalar(x) or np.ndim(x) == 0 else out


def omega_signal(signal: GaussianSignal) -> GaussianSignal:
    """Companion signal with coefficients k * c_k (absolute lattice index k).

    Links the derivative to plain evaluations via
    f'(x) = 2 lam (beta * d(x) - x * f(x)) where d is the returned signal.
    Leading/trailing zeros created by the index weighting are trimmed; a
    single coefficient at k = 0 yields the zero signal.
    """
    if signal.is_zero:
        return signal
    d = signal.indices * signal.coeffs
    nz = np.nonzero(d)[0]
    if len(nz) == 0:
        return zero_signal(signal.lam, signal.beta)
    lo, hi = nz[0], nz[-1]
    return GaussianSignal(lam=signal.lam, beta=signal.beta,
                          k_min=signal.k_min + int(lo), coeffs=d[lo:hi + 1])


def normalize_step(signal: GaussianSignal) -> GaussianSignal:
    """Rescale to unit lattice step: beta' = 1, lam' = beta^2 lam.

    The coefficients are unchanged and evaluate(out, u) = evaluate(in, beta*u).
    """
    if signal.beta == 1.0:
        return signal
    return GaussianSignal(lam=signal.beta**2 * signal.lam, beta=1.0,
                          k_min=signal.k_min, coeffs=signal.coeffs)


def hermite_samples(signal: GaussianSignal, gammas) -> SampleSet:
    """Magnitude-only samples |f(gamma)|, |f'(gamma)| at distinct points."""
    g = np.asarray(gammas, dtype=float)
    if len(np.unique(g)) != len(g):
        raise DuplicatePoints("sampling points must be pairwise distinct")
    mf = np.abs(evaluate(signal, g))
    mdf = np.abs(evaluate_derivative(signal, g))
    return SampleSet(gammas=g, mag_f=np.atleast_1d(mf), mag_df=np.atleast_1d(mdf))


def default_sampling_grid(k_min: int, k_max: int, beta: float) -> np.ndarray:
    """2(k_max - k_min) + 1 equispaced points covering the support window.

    The window extends half a step beyond the outermost lattice centers,
    which keeps the exponential nodes u = e^{2 lam beta gamma} moderate.
    """
    if k_max < k_min:
        raise InvalidSignal("k_max must be >= k_min")
    n_points = 2 * (k_max - k_min) + 1
    if n_points == 1:
        return np.array([beta * (k_min + k_max) / 2.0])
    return np.linspace(beta * k_min - beta / 2.0, beta * k_max + beta / 2.0, n_points)
