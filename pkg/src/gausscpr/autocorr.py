"""Autocorrelation sequences of the Gaussian-weighted coefficients.

The squared modulus of a signal expands as
|f(x)|^2 = e^{-2 lam x^2} sum_m A_m e^{2 lam beta m x},  m = 2 k_min .. 2 k_max,
where A is the Hermitian autocorrelation of ct_k = c_k e^{-lam beta^2 k^2}.
B is the same convolution weighted by (m - j) j and equals the A-sequence of
the companion signal with coefficients k c_k.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSignal, NegativeModulus, NonRealAutocorrelation
from .signals import GaussianSignal, omega_signal

IMAG_RESIDUE_TOL = 1e-12


@dataclass(frozen=True)
class AutocorrData:
    """A and B exponential-sum coefficients on m = m_min .. m_min + len - 1.

    ``B`` may be None while only the first stage of the pipeline has run.
    """

    m_min: int
    A: np.ndarray
    B: np.ndarray | None
    lam: float
    beta: float

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "m_min", int(self.m_min))
        if self.B is not None:
            B = np.asarray(self.B, dtype=float)
            if B.shape != A.shape:
                raise InvalidSignal("A and B must have the same shape")
            if not np.all(np.isfinite(B)):
                raise InvalidSignal("B must be finite")
            object.__setattr__(self, "B", B)
        if A.size == 0 or A.size % 2 == 0:
            raise InvalidSignal("A must have odd length 2(k_max - k_min) + 1")
        if not np.all(np.isfinite(A)):
            raise InvalidSignal("A must be finite")
        if not (self.lam > 0 and self.beta > 0):
            raise InvalidSignal("lambda and beta must be positive")

    @property
    def m_indices(self) -> np.ndarray:
        return self.m_min + np.arange(len(self.A))

    @property
    def k_min(self) -> int:
        return self.m_min // 2

    @property
    def k_max(self) -> int:
        return self.k_min + (len(self.A) - 1) // 2

    def is_autocorrelation(self, tol: float = 1e-10, grid: int = 256) -> bool:
        """Check nonnegativity of the trig polynomial sum_m A_m e^{i m theta}."""
        theta = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
        vals = np.real(np.exp(1j * np.outer(theta, self.m_indices)) @ self.A.astype(complex))
        return bool(np.min(vals) >= -tol * np.sum(np.abs(self.A)))

    def to_dict(self) -> dict:
        return {
            "m_min": int(self.m_min),
            "A": [float(a) for a in self.A],
            "B": None if self.B is None else [float(b) for b in self.B],
            "lambda": float(self.lam),
            "beta": float(self.beta),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AutocorrData":
        return cls(m_min=int(d["m_min"]), A=np.asarray(d["A"], dtype=float),
                   B=None if d.get("B") is None else np.asarray(d["B"], dtype=float),
                   lam=float(d["lambda"]), beta=float(d["beta"]))


def tilde_coeffs(signal: GaussianSignal) -> np.ndarray:
    """Gaussian-weighted coefficients ct_k = c_k e^{-lam beta^2 k^2}."""
    k = signal.indices
    return signal.coeffs * np.exp(-signal.lam * signal.beta**2 * k.astype(float)**2)


def real_part_checked(values: np.ndarray, tol: float = IMAG_RESIDUE_TOL) -> np.ndarray:
    """Drop the imaginary residue of an algebraically real Hermitian sum.

    A residue above ``tol`` (relative to the largest entry) means an index
    bug, not bad input.
    """
    values = np.asarray(values)
    scale = np.max(np.abs(values))
    if scale > 0 and np.max(np.abs(values.imag)) > tol * scale:
        raise NonRealAutocorrelation(
            f"imaginary residue {np.max(np.abs(values.imag)) / scale:.3e} exceeds {tol:g}")
    return values.real.copy()


def autocorr_A(signal: GaussianSignal) -> AutocorrData:
    """A_m = sum_j ct_{m-j} conj(ct_j), m = 2 k_min .. 2 k_max."""
    ct = tilde_coeffs(signal)
    A = real_part_checked(np.convolve(ct, np.conj(ct)))
    return AutocorrData(m_min=2 * signal.k_min, A=A, B=None,
                        lam=signal.lam, beta=signal.beta)


def _weighted_autocorr(ct: np.ndarray, k: np.ndarray) -> np.ndarray:
    """sum_j (m-j) j ct_{m-j} conj(ct_j) via the weighted sequence k*ct."""
    dt = k * ct
    return np.convolve(dt, np.conj(dt))


def autocorr_B(signal: GaussianSignal) -> AutocorrData:
    """B_m = sum_j (m-j) j ct_{m-j} conj(ct_j) on the same index range as A.

    Cross-checked against the A-sequence of the companion signal k c_k; a
    mismatch indicates an absolute/relative index bug.
    """
    ct = tilde_coeffs(signal)
    k = signal.indices.astype(float)
    B = real_part_checked(_weighted_autocorr(ct, k))

    om = omega_signal(signal)
    B_via_omega = np.zeros_like(B)
    if not om.is_zero:
        Aom = autocorr_A(om)
        off = Aom.m_min - 2 * signal.k_min
        B_via_omega[off:off + len(Aom.A)] = Aom.A
    assert np.allclose(B, B_via_omega, rtol=0, atol=1e-12 * max(1.0, np.max(np.abs(B)))), \
        "weighted convolution disagrees with the companion-signal route"

    return AutocorrData(m_min=2 * signal.k_min, A=B, B=None,
                        lam=signal.lam, beta=signal.beta)


def autocorr_data(signal: GaussianSignal) -> AutocorrData:
    """Both sequences packed together, the forward reference for recovery."""
    A = autocorr_A(signal).A
    B = autocorr_B(signal).A
    return AutocorrData(m_min=2 * signal.k_min, A=A, B=B,
                        lam=signal.lam, beta=signal.beta)


def half_lattice_r(signal: GaussianSignal) -> np.ndarray:
    """Half-lattice expansion coefficients r_m = A_m e^{lam beta^2 m^2 / 2}.

    These satisfy |f(x)|^2 = sum_m r_m e^{-2 lam (x - beta m / 2)^2} and stay
    O(|c|^2) uniformly, unlike A itself.
    """
    data = autocorr_A(signal)
    m = data.m_indices.astype(float)
    return data.A * np.exp(signal.lam * signal.beta**2 * m**2 / 2.0)


def modulus_sq_via_A(data: AutocorrData, x) -> float | np.ndarray:
    """|f(x)|^2 from the A-sequence.

    Evaluated through the half-lattice form r_m e^{-2 lam (x - beta m/2)^2},
    which is algebraically identical to e^{-2 lam x^2} sum A_m e^{2 lam beta m x}
    but free of huge intermediates.  Small negative rounding is clamped to 0;
    beyond -1e-12 of the term scale it is an error.
    """
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    m = data.m_indices.astype(float)
    r = data.A * np.exp(data.lam * data.beta**2 * m**2 / 2.0)
    bumps = np.exp(-2.0 * data.lam * (xa[None, :] - data.beta * m[:, None] / 2.0) ** 2)
    vals = r @ bumps
    scale = np.abs(r) @ bumps
    bad = vals < -1e-12 * np.maximum(scale, 1e-300)
    if np.any(bad):
        raise NegativeModulus(
            f"|f|^2 = {vals[bad][0]:.3e} at x = {xa[bad][0]:g}; A is not consistent")
    out = np.maximum(vals, 0.0)
    return out[0] if np.isscalar(x) or np.ndim(x) == 0 else out


def _weighted_moment_sum(data: AutocorrData, gamma: float) -> float:
    """e^{-2 lam x^2} sum_m m A_m e^{2 lam beta m x}, in stable half-lattice form."""
    m = data.m_indices.astype(float)
    r = data.A * np.exp(data.lam * data.beta**2 * m**2 / 2.0)
    return float(np.sum(m * r * np.exp(-2.0 * data.lam * (gamma - data.beta * m / 2.0) ** 2)))


def d_mag_sq_from_samples(gamma: float, mag_f: float, mag_df: float,
                          data: AutocorrData, tol: float = 1e-10) -> float:
    """|d(gamma)|^2 for the companion signal, from one Hermite sample and A.

    |d|^2 = [ |f'|^2 / (4 lam^2) - gamma^2 |f|^2 + beta gamma S ] / beta^2
    with S the first-moment exponential sum of A.  Negative rounding residue
    within ``tol`` of the term scale is clamped to 0.
    """
    lam, beta = data.lam, data.beta
    S = _weighted_moment_sum(data, gamma)
    t1 = mag_df**2 / (4.0 * lam**2)
    t2 = gamma**2 * mag_f**2
    t3 = beta * gamma * S
    val = (t1 - t2 + t3) / beta**2
    scale = (abs(t1) + abs(t2) + abs(t3)) / beta**2
    if val < -tol * max(scale, 1e-300):
        raise NegativeModulus(
            f"|d|^2 = {val:.3e} at gamma = {gamma:g} (scale {scale:.3e}); inconsistent inputs")
    return max(val, 0.0)
