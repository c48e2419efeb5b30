"""Equivalence modulo a unimodular constant and conjugation.

Two signals carry identical phaseless Hermite data exactly when one is z*f or
z*conj-coefficients(f) for some |z| = 1, so comparisons happen modulo that
group.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroSignal
from .signals import GaussianSignal

IMAG_SIGNIFICANT = 1e-12


@dataclass(frozen=True)
class EquivalenceReport:
    """Distance and optimal group element aligning g to f."""

    distance: float
    phase: complex
    conjugated: bool
    aligned: GaussianSignal

    def to_dict(self) -> dict:
        return {
            "distance": float(self.distance),
            "phase": [float(self.phase.real), float(self.phase.imag)],
            "conjugated": bool(self.conjugated),
        }


def canonicalize(signal: GaussianSignal) -> GaussianSignal:
    """Canonical representative of the ambiguity class of a signal.

    Rotate so the leading coefficient is real positive; then, if the first
    coefficient with significant imaginary part has a negative one, conjugate
    the whole sequence.  Idempotent.
    """
    if signal.is_zero:
        raise ZeroSignal("cannot canonicalize the zero signal")
    c = signal.coeffs
    lead = c[0]
    out = (np.conj(lead) / abs(lead)) * c
    scale = np.max(np.abs(out))
    for v in out:
        if abs(v.imag) > IMAG_SIGNIFICANT * scale:
            if v.imag < 0:
                out = np.conj(out)
            break
    out[0] = complex(out[0].real, 0.0)
    return GaussianSignal(lam=signal.lam, beta=signal.beta,
                          k_min=signal.k_min, coeffs=out)


def _common_window(f: GaussianSignal, g: GaussianSignal):
    """Coefficient arrays of f and g zero-padded to their joint window."""
    k_lo = min(f.k_min, g.k_min)
    k_hi = max(f.k_max, g.k_max)
    n = k_hi - k_lo + 1
    cf = np.zeros(n, dtype=complex)
    cg = np.zeros(n, dtype=complex)
    cf[f.k_min - k_lo:f.k_min - k_lo + len(f.coeffs)] = f.coeffs
    cg[g.k_min - k_lo:g.k_min - k_lo + len(g.coeffs)] = g.coeffs
    return cf, cg, k_lo


def equivalence_distance(f: GaussianSignal, g: GaussianSignal) -> EquivalenceReport:
    """Relative coefficient distance of g from the ambiguity class of f.

    For each conjugation option the optimal unimodular phase is the
    normalized inner product; the smaller distance wins, ties break to the
    non-conjugated option.
    """
    if f.is_zero or g.is_zero:
        raise ZeroSignal("equivalence distance needs nonzero signals")
    if f.lam != g.lam or f.beta != g.beta:
        raise ValueError("signals must share lambda and beta")
    cf, cg, k_lo = _common_window(f, g)
    norm_f = np.linalg.norm(cf)
    if norm_f == 0 or np.linalg.norm(cg) == 0:
        raise ZeroSignal("equivalence distance needs nonzero signals")

    best = None
    for conjugated in (False, True):
        w = np.conj(cg) if conjugated else cg
        inner = np.sum(cf * np.conj(w))
        z = inner / abs(inner) if abs(inner) > 0 else 1.0 + 0.0j
        dist = float(np.linalg.norm(cf - z * w) / norm_f)
        if best is None or dist < best[0] - 1e-14:
            best = (dist, z, conjugated, z * w)
    dist, z, conjugated, aligned_c = best
    nz = np.nonzero(aligned_c)[0]
    if len(nz) == 0:
        raise ZeroSignal("aligned candidate is zero")
    aligned = GaussianSignal(lam=f.lam, beta=f.beta, k_min=k_lo + int(nz[0]),
                             coeffs=aligned_c[nz[0]:nz[-1] + 1])
    return EquivalenceReport(distance=dist, phase=complex(z),
                             conjugated=conjugated, aligned=aligned)
