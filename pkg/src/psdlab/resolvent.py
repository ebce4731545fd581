"""Pseudospectrum scans, spectra and scaling-law fits.

sigma_min(z) = smallest singular value of Op - z is the reciprocal of
the resolvent norm; everything here is built on dense SVD.  Fits of
sigma_min against a geometric h-sweep detect the power-law
(h^mu blow-up) and exponential (exp(-c/h)) regimes, with values below
the double-precision reliability floor censored rather than clamped.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import NumericalError
from .quantize import GridSpec, quantize_fourier, quantize_poly, quantize_expansion

__all__ = ["PseudospectrumScan", "ScalingFit", "sigma_min_at", "scan",
           "exponent_fit", "fit_sigma_curve", "spectrum_and_gap", "SIGMA_FLOOR"]

SIGMA_FLOOR = 1e-14


def sigma_min_at(op, z):
    """Smallest singular value of (Op - z Id)."""
    try:
        sv = sla.svdvals(op.shifted(z))
    except np.linalg.LinAlgError as exc:   # pragma: no cover - LAPACK failure
        raise NumericalError(f"SVD failed at z={z}: {exc}") from exc
    return float(sv[-1])


@dataclass
class PseudospectrumScan:
    z_grid: np.ndarray        # complex lattice
    sigma_min: np.ndarray     # same shape, non-negative reals
    h: float
    grid: GridSpec


def scan(op, z_grid):
    """sigma_min at every point of a complex lattice (deterministic order)."""
    z_grid = np.asarray(z_grid, dtype=complex)
    if z_grid.size == 0:
        raise ValueError("empty z lattice")
    out = np.empty(z_grid.shape, dtype=float)
    flat = z_grid.ravel()
    res = out.ravel()
    for i in range(flat.size):
        res[i] = sigma_min_at(op, flat[i])
    return PseudospectrumScan(z_grid, out, op.grid.h, op.grid)


@dataclass
class ScalingFit:
    h_list: tuple
    sigma_list: tuple
    mu_hat: float             # power-law exponent: -log sigma ~ mu log(1/h)
    intercept: float
    r2: float                 # r2 of the selected model
    model: str                # "power" | "exponential" | "inconclusive"
    c_hat: float = 0.0        # exponential rate: -log sigma ~ c / h
    r2_power: float = 0.0
    r2_exponential: float = 0.0
    censored: tuple = ()      # h values dropped at the SVD floor


def _lin_fit(x, y):
    A = np.stack([x, np.ones_like(x)], axis=1)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    pred = A @ coef
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(coef[0]), float(coef[1]), r2


def fit_sigma_curve(h_list, sigma_list, model="auto", margin=0.02):
    """Fit -log sigma against log(1/h) (power) and 1/h (exponential).

    Values at or below the SVD floor are censored (dropped, never
    clamped).  With ``model="auto"`` the better r2 wins if it leads by
    ``margin``; ties are reported as inconclusive.
    """
    h = np.asarray(h_list, dtype=float)
    s = np.asarray(sigma_list, dtype=float)
    keep = s > SIGMA_FLOOR
    censored = tuple(float(v) for v in h[~keep])
    h, s = h[keep], s[keep]
    if h.size < 3:
        raise ValueError("fewer than 3 usable sigma values after censoring")
    y = -np.log(s)
    mu, b_pow, r2_pow = _lin_fit(np.log(1.0 / h), y)
    c, b_exp, r2_exp = _lin_fit(1.0 / h, y)
    if model == "power":
        chosen, r2 = "power", r2_pow
    elif model == "exponential":
        chosen, r2 = "exponential", r2_exp
    else:
        if r2_exp > r2_pow + margin:
            chosen, r2 = "exponential", r2_exp
        elif r2_pow > r2_exp + margin:
            chosen, r2 = "power", r2_pow
        else:
            chosen, r2 = "inconclusive", max(r2_pow, r2_exp)
    return ScalingFit(tuple(float(v) for v in h), tuple(float(v) for v in s),
                      mu_hat=mu, intercept=b_pow if chosen != "exponential" else b_exp,
                      r2=r2, model=chosen, c_hat=c,
                      r2_power=r2_pow, r2_exponential=r2_exp, censored=censored)


def build_operator(sym, grid, backend="poly", lower_terms=None, xi_cutoff=None):
    """Quantize a symbol (with optional lower-order addends) on a grid."""
    if lower_terms:
        return quantize_expansion([(0, sym)] + list(lower_terms), grid, backend=backend)
    if backend == "poly":
        return quantize_poly(sym, grid)
    if backend == "fourier":
        return quantize_fourier(sym, grid, xi_cutoff=xi_cutoff)
    raise ValueError(f"unknown backend {backend!r}")


def exponent_fit(sym, grid_template, z, h_list, model="auto", backend="poly",
                 lower_terms=None, margin=0.02):
    """sigma_min(h) sweep at fixed z, with power/exponential fits.

    ``h_list`` must be geometric with at least 5 entries; mu_hat is
    meaningful only when the power-model r2 is at least 0.98 (callers
    inspect both r2 fields).
    """
    h = np.asarray(sorted(h_list, reverse=True), dtype=float)
    if h.size < 5:
        raise ValueError("h_list must contain at least 5 values")
    ratios = h[1:] / h[:-1]
    if np.max(np.abs(ratios - ratios[0])) > 1e-8 * ratios[0]:
        raise ValueError("h_list must be geometric")
    sigmas = []
    for hv in h:
        grid = grid_template.with_h(float(hv))
        op = build_operator(sym, grid, backend=backend, lower_terms=lower_terms)
        sigmas.append(sigma_min_at(op, z))
    return fit_sigma_curve(h, sigmas, model=model, margin=margin)


def spectrum_and_gap(op, z, radius):
    """Dense eigenvalues near z and the spectral-gap verdict.

    ``gap_ok`` is true when no eigenvalue lies within ``radius`` of z.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    try:
        eigs = np.linalg.eigvals(op.matrix)
    except np.linalg.LinAlgError as exc:   # pragma: no cover
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    d = np.abs(eigs - complex(z))
    inside = eigs[d < radius]
    inside = inside[np.lexsort((inside.imag, inside.real))]
    return {"eigs_in_disk": inside, "gap_ok": bool(inside.size == 0),
            "min_dist": float(np.min(d))}
