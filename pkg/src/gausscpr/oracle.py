"""Independent brute-force verifiers for the recovery formulas.

Everything here is deliberately separate from the production code paths:
the autocorrelation pair is built by direct double sums in plain Python
complex arithmetic, and the dense-grid fit uses a Gaussian-bump design
matrix instead of exponential-node elimination.  No production path imports
this module.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InconsistentData, RankDeficient
from .signals import GaussianSignal, default_sampling_grid, evaluate

CHECK_TOL = 1e-10


@dataclass
class OracleReport:
    """Outcome of a formula-verification run; failures carry full context."""

    trials: int
    checks: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, formula: str, k_min: int, trial: int,
               expected: complex, got: complex):
        self.checks += 1
        if not ok:
            self.failures.append({
                "formula": formula,
                "k_min": int(k_min),
                "trial": int(trial),
                "expected": float(np.real(expected)),
                "got": float(np.real(got)),
            })

    @property
    def n_failures(self) -> int:
        return len(self.failures)

    def to_json_list(self) -> list:
        return list(self.failures)


def _direct_pair(ct: list, a: int):
    """A_m and B_m by direct double sums over absolute indices."""
    n = len(ct) - 1
    A = [0.0 + 0.0j] * (2 * n + 1)
    B = [0.0 + 0.0j] * (2 * n + 1)
    for i, ci in enumerate(ct):
        for j, cj in enumerate(ct):
            p = ci * cj.conjugate()
            A[i + j] += p
            B[i + j] += (a + i) * (a + j) * p
    return [x.real for x in A], [x.real for x in B]


def _draw(rng, n, real_prefix=0, min_im_at=None):
    """Random tilde coefficients, gauged to the canonical representative."""
    while True:
        ct = []
        for _ in range(n + 1):
            mag = rng.uniform(0.3, 1.0)
            th = rng.uniform(0.0, 2.0 * math.pi)
            ct.append(mag * complex(math.cos(th), math.sin(th)))
        for t in range(min(real_prefix, n) + 1):
            ct[t] = complex(abs(ct[t]), 0.0)
        # gauge: leading real positive
        z = ct[0].conjugate() / abs(ct[0])
        ct = [z * c for c in ct]
        ct[0] = complex(ct[0].real, 0.0)
        if min_im_at is not None and min_im_at <= n:
            if abs(ct[min_im_at].imag) < 0.05:
                continue
            if ct[min_im_at].imag < 0:
                ct = [c.conjugate() for c in ct]
        return ct


def _close(got, expected) -> bool:
    return abs(got - expected) <= CHECK_TOL * max(1.0, abs(expected))


def symbolic_step_check(k_min: int, k_max: int, trials: int = 100,
                        seed: int = 0, include_flawed: bool = False) -> OracleReport:
    """Verify every recovery formula against direct expansion.

    Draws random coefficient vectors, builds (A, B) by brute force, runs each
    re-derived recursion formula on true lower-order coefficients, and checks
    the output against the known value to 1e-10 (conjugation handled by the
    canonical gauge).  ``include_flawed`` also evaluates the uncorrected
    first-imaginary-part variant, which is expected to fail and demonstrates
    why the re-derivation was necessary.
    """
    a = int(k_min)
    n = int(k_max) - a
    if n < 1 or n > 4:
        raise ValueError("window must have 2..5 coefficients")
    rng = np.random.default_rng(seed)
    report = OracleReport(trials=trials)

    for trial in range(trials):
        # --- branch-a family: generic coefficients, first off-lead complex
        ct = _draw(rng, n, min_im_at=1)
        A, B = _direct_pair(ct, a)
        c0 = math.sqrt(A[0])
        report.record(_close(c0, ct[0].real), "leading-sqrt", a, trial, ct[0].real, c0)
        re1 = A[1] / (2.0 * math.sqrt(A[0]))
        report.record(_close(re1, ct[1].real), "first-real", a, trial, ct[1].real, re1)
        arg = B[2] - a * (a + 2) * A[2] - A[1] ** 2 / (4.0 * A[0])
        im1 = math.sqrt(max(arg, 0.0))
        report.record(_close(im1, abs(ct[1].imag)), "first-imag", a, trial,
                      abs(ct[1].imag), im1)
        if include_flawed:
            # transcribed variant: |B at 2a+2| squared in place of the linear term
            arg_bad = abs(B[2]) ** 2 - A[1] ** 2 / (4.0 * A[0])
            im_bad = math.sqrt(arg_bad) if arg_bad >= 0 else float("nan")
            ok = arg_bad >= 0 and _close(im_bad, abs(ct[1].imag))
            report.record(ok, "first-imag-transcribed", a, trial, abs(ct[1].imag), im_bad)
        if n >= 2:
            re2 = ((a + 1) ** 2 * A[2] - B[2]) / (2.0 * math.sqrt(A[0]))
            report.record(_close(re2, ct[2].real), "second-real", a, trial, ct[2].real, re2)
            cross = (B[3] - a * (a + 3) * A[3]) / 4.0
            truth = (ct[2] * ct[1].conjugate()).real
            report.record(_close(cross, truth), "cross-second-first", a, trial, truth, cross)
        if n >= 3:
            re3 = ((a + 1) * (a + 2) * A[3] - B[3]) / (4.0 * ct[0].real)
            report.record(_close(re3, ct[3].real), "third-real", a, trial, ct[3].real, re3)
        for k in range(2, n + 1):
            s = sum(ct[k + 0 - j] * ct[j].conjugate() for j in range(1, k))
            rek = (A[k] - s.real) / (2.0 * ct[0].real)
            report.record(_close(rek, ct[k].real), "real-chain", a, trial, ct[k].real, rek)
        for k in range(2, n):
            ca = sum(ct[k + 1 - j] * ct[j].conjugate() for j in range(2, k))
            cb = sum((a + j) * (a + k + 1 - j) * ct[k + 1 - j] * ct[j].conjugate()
                     for j in range(2, k))
            cross = (B[k + 1] - a * (a + k + 1) * A[k + 1]
                     + a * (a + k + 1) * ca.real - cb.real) / (2.0 * k)
            truth = (ct[k] * ct[1].conjugate()).real
            report.record(_close(cross, truth), "cross-chain-first", a, trial, truth, cross)
            imk = (cross - ct[1].real * ct[k].real) / ct[1].imag
            report.record(_close(imk, ct[k].imag), "imag-chain-first", a, trial,
                          ct[k].imag, imk)
        if n >= 2:
            c = sum(ct[n + 1 - j] * ct[j].conjugate() for j in range(2, n))
            cross = (A[n + 1] - c.real) / 2.0
            truth = (ct[n] * ct[1].conjugate()).real
            report.record(_close(cross, truth), "closure-cross-first", a, trial, truth, cross)
            imn = (cross - ct[1].real * ct[n].real) / ct[1].imag
            report.record(_close(imn, ct[n].imag), "closure-imag-first", a, trial,
                          ct[n].imag, imn)

        # --- branch-b family: real prefix with the pivot at q = 2 .. n
        for q in range(2, n + 1):
            ctb = _draw(rng, n, real_prefix=q - 1, min_im_at=q)
            Ab, Bb = _direct_pair(ctb, a)
            acc = 0.0
            for t in range(1, q):
                i2 = 2 * q - t
                if i2 <= n:
                    acc += 2.0 * t * (2 * q - t) * ctb[t].real * ctb[i2].real
            magsq = (Bb[2 * q] - a * (a + 2 * q) * Ab[2 * q] - acc) / q**2
            truth = abs(ctb[q]) ** 2
            report.record(_close(magsq, truth), f"pivot-magnitude-{q}", a, trial,
                          truth, magsq)
            for k in range(q + 1, n + 1):
                s = k + q
                acc = 0.0
                for t in range(max(1, s - n), s // 2 + 1):
                    pt = s - t
                    if pt > n or (t == q and pt == k):
                        continue
                    w = t * pt
                    if t == pt:
                        acc += w * abs(ctb[t]) ** 2
                    elif t < q:
                        acc += 2.0 * w * ctb[t].real * ctb[pt].real
                    else:
                        acc += 2.0 * w * (ctb[pt] * ctb[t].conjugate()).real
                ws = Bb[s] - a * (a + s) * Ab[s]
                cross = (ws - acc) / (2.0 * q * k)
                truth = (ctb[k] * ctb[q].conjugate()).real
                report.record(_close(cross, truth), f"pivot-cross-{q}", a, trial,
                              truth, cross)
                imk = (cross - ctb[q].real * ctb[k].real) / ctb[q].imag
                report.record(_close(imk, ctb[k].imag), f"pivot-imag-{q}", a, trial,
                              ctb[k].imag, imk)
    return report


def fit_A_dense(signal: GaussianSignal, grid_size: int | None = None) -> np.ndarray:
    """Least-squares fit of the A-sequence from dense |f|^2 values.

    Fits the well-scaled half-lattice bump expansion on a dense grid and
    converts back, so it shares nothing with the exponential-node route it
    cross-checks.
    """
    n = signal.k_max - signal.k_min
    n_unknowns = 2 * n + 1
    if grid_size is None:
        grid_size = max(4 * n_unknowns, 64)
    if grid_size < 4 * n_unknowns:
        raise ValueError("grid must have at least 4x the unknown count")
    window = default_sampling_grid(signal.k_min, signal.k_max, signal.beta)
    lo = window[0] - signal.beta
    hi = window[-1] + signal.beta
    x = np.linspace(lo, hi, grid_size)
    values = np.abs(evaluate(signal, x)) ** 2
    m = 2 * signal.k_min + np.arange(n_unknowns)
    design = np.exp(-2.0 * signal.lam
                    * (x[:, None] - signal.beta * m[None, :].astype(float) / 2.0) ** 2)
    r, _, rank, _ = np.linalg.lstsq(design, values, rcond=None)
    if rank < n_unknowns:
        raise RankDeficient("dense design matrix is rank-deficient")
    return r * np.exp(-signal.lam * signal.beta**2 * m.astype(float)**2 / 2.0)


def exhaustive_two_term(A, B, tol: float = 1e-10):
    """All canonical two-coefficient solutions of a 3-entry (A, B) pair.

    Closed-form enumeration for the window [0, 1]: either one all-real pair
    or two conjugate pairs.  A trailing zero in the single returned pair
    flags a support violation (the data demands c1 = 0).
    """
    A = [float(x) for x in A]
    B = [float(x) for x in B]
    if len(A) != 3 or len(B) != 3:
        raise ValueError("expected 3-entry sequences")
    if A[0] <= 0:
        raise InconsistentData("leading entry must be positive")
    c0 = math.sqrt(A[0])
    re1 = A[1] / (2.0 * c0)
    imsq = B[2] - A[1] ** 2 / (4.0 * A[0])
    scale = abs(B[2]) + re1 * re1 + A[0]
    if imsq < -tol * scale:
        raise InconsistentData(f"negative discriminant {imsq:.3e} beyond tolerance")
    if imsq <= tol * scale:
        return [(complex(c0), complex(re1))]
    im1 = math.sqrt(imsq)
    return [(complex(c0), complex(re1, im1)), (complex(c0), complex(re1, -im1))]
