"""Haar-random unitary spectra and the matrix integrals the variance
asymptotics converge to.

Only eigenangles are ever stored: every statistic of interest (traces of
symmetric powers, secular coefficients) is a spectral function.  Sampling
follows the standard recipe: QR-factor a complex Ginibre matrix and fix
phases so the triangular factor has positive real diagonal; the resulting
Q is Haar distributed.

tr Sym^k U is the complete homogeneous symmetric polynomial h_k of the
eigenvalues, computed from power sums via k h_k = sum_{i<=k} p_i h_{k-i};
det(I - xU) = sum_j lambda_j(U) x^j gives the secular coefficients.
Because Sym^k is an irreducible representation of U(N), the Haar average
of |tr Sym^k U|^2 is exactly 1 for every k >= 1, which is the target all
Monte Carlo estimates here are judged against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class UnitarySample:
    """Eigenangles of one U(N) matrix."""

    angles: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.angles)


def rng_for(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator; worker streams are fixed key offsets."""
    return np.random.Generator(np.random.Philox(key=[seed, stream]))


def haar_angle_samples(N: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """(count, N) eigenangle matrix of independent Haar U(N) samples."""
    if N < 1:
        raise ValueError("N must be >= 1")
    z = rng.standard_normal((count, N, N)) + 1j * rng.standard_normal((count, N, N))
    qmat, rmat = np.linalg.qr(z / np.sqrt(2.0))
    d = np.diagonal(rmat, axis1=-2, axis2=-1)
    qmat = qmat * (d / np.abs(d))[:, np.newaxis, :]
    eig = np.linalg.eigvals(qmat)
    return np.sort(np.angle(eig), axis=1)


def haar_sample(N: int, rng: np.random.Generator) -> UnitarySample:
    return UnitarySample(haar_angle_samples(N, 1, rng)[0])


def power_sums(angles: np.ndarray, kmax: int) -> np.ndarray:
    """p_i = sum_j e^(i * i * theta_j) for i = 0..kmax; batched over rows."""
    angles = np.atleast_2d(angles)
    ks = np.arange(kmax + 1)
    return np.exp(1j * angles[:, :, None] * ks[None, None, :]).sum(axis=1)


def sym_trace_values(angles: np.ndarray, kmax: int) -> np.ndarray:
    """h_0..h_kmax per row of the angle matrix (h_k = tr Sym^k)."""
    angles = np.atleast_2d(angles)
    p = power_sums(angles, kmax)
    h = np.zeros((angles.shape[0], kmax + 1), dtype=complex)
    h[:, 0] = 1.0
    for k in range(1, kmax + 1):
        acc = np.zeros(angles.shape[0], dtype=complex)
        for i in range(1, k + 1):
            acc += p[:, i] * h[:, k - i]
        h[:, k] = acc / k
    return h


def sym_trace(sample: UnitarySample, k: int) -> complex:
    if k < 0:
        raise ValueError("k must be >= 0")
    return complex(sym_trace_values(sample.angles, k)[0, k])


def secular_coeff_values(angles: np.ndarray) -> np.ndarray:
    """All lambda_j, j = 0..N, per row: det(I - xU) = sum lambda_j x^j."""
    angles = np.atleast_2d(angles)
    count, N = angles.shape
    coeffs = np.zeros((count, N + 1), dtype=complex)
    coeffs[:, 0] = 1.0
    eig = np.exp(1j * angles)
    for j in range(N):
        coeffs[:, 1:j + 2] -= eig[:, j, None] * coeffs[:, :j + 1].copy()
    return coeffs


def secular_coeff(sample: UnitarySample, j: int) -> complex:
    if not 0 <= j <= sample.dim:
        raise ValueError(f"j = {j} outside [0, {sample.dim}]")
    return complex(secular_coeff_values(sample.angles)[0, j])


# -- Monte Carlo integrals ---------------------------------------------------

STATISTICS = ("sym_sq", "pair_trace_sym_sq", "pair_secular_sym_sq")


def mc_integral(statistic: str, N: int, samples: int, rng: np.random.Generator,
                k: int = 1, m: int = 1) -> tuple[float, float]:
    """Monte Carlo estimate (mean, standard error) of a Haar integral.

    sym_sq:              int |tr Sym^k U|^2 dU                    (= 1)
    pair_trace_sym_sq:   int |tr U|^2 dU * int |tr Sym^m U'|^2 dU' (= 1)
    pair_secular_sym_sq: int int |lambda_{N-1}(U) tr Sym^m U'|^2   (= 1)
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    if statistic == "sym_sq":
        ang = haar_angle_samples(N, samples, rng)
        vals = np.abs(sym_trace_values(ang, k)[:, k]) ** 2
    elif statistic == "pair_trace_sym_sq":
        a1 = haar_angle_samples(N, samples, rng)
        a2 = haar_angle_samples(N, samples, rng)
        vals = (np.abs(sym_trace_values(a1, 1)[:, 1]) ** 2
                * np.abs(sym_trace_values(a2, m)[:, m]) ** 2)
    elif statistic == "pair_secular_sym_sq":
        a1 = haar_angle_samples(N, samples, rng)
        a2 = haar_angle_samples(N, samples, rng)
        lam = secular_coeff_values(a1)[:, N - 1]
        vals = np.abs(lam) ** 2 * np.abs(sym_trace_values(a2, m)[:, m]) ** 2
    else:
        raise ValueError(f"unknown statistic {statistic!r}; pick from {STATISTICS}")
    est = float(vals.mean())
    err = float(vals.std(ddof=1) / np.sqrt(samples))
    return est, err


# -- empirical equidistribution diagnostics ----------------------------------


def _angles_of(cls) -> np.ndarray:
    return cls.angles if isinstance(cls, (np.ndarray,)) else np.asarray(cls.angles)


def equidistribution_diagnostic(classes, k: int, q: int, modulus: str,
                                family: str) -> dict:
    """Average |tr Sym^k|^2 over a family of unitarized Frobenius classes
    against the Haar value 1; the deviation is reported relative to the
    heuristic 1/sqrt(q) scale (no convergence rate is asserted)."""
    if len(classes) < 20:
        raise ValueError("family too small for a meaningful diagnostic")
    ang = np.vstack([_angles_of(c) for c in classes])
    vals = np.abs(sym_trace_values(ang, k)[:, k]) ** 2
    emp = float(vals.mean())
    return {
        "family": family,
        "q": q,
        "modulus": modulus,
        "statistic": f"|tr Sym^{k}|^2",
        "empirical": emp,
        "haar_target": 1.0,
        "deviation": emp - 1.0,
        "heuristic_scale": 1.0 / np.sqrt(q),
        "n_classes": len(classes),
    }


def joint_moment_diagnostic(pairs, q: int, modulus: str, family: str) -> dict:
    """E[|tr T1|^2 |tr T2|^2] over (Theta_chi, Theta_chi^2) pairs; the
    independence prediction is the product of Haar means, i.e. 1."""
    if len(pairs) < 20:
        raise ValueError("family too small for a meaningful diagnostic")
    v1 = np.array([np.abs(np.exp(1j * _angles_of(a)).sum()) ** 2 for a, _ in pairs])
    v2 = np.array([np.abs(np.exp(1j * _angles_of(b)).sum()) ** 2 for _, b in pairs])
    emp = float((v1 * v2).mean())
    return {
        "family": family,
        "q": q,
        "modulus": modulus,
        "statistic": "|tr|^2 x |tr|^2 (joint)",
        "empirical": emp,
        "haar_target": 1.0,
        "deviation": emp - 1.0,
        "heuristic_scale": 1.0 / np.sqrt(q),
        "n_classes": len(pairs),
    }
