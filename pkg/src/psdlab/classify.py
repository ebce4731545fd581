"""Pointwise and regional classification verdicts for matrix symbols.

Covers the verdict layer of the laboratory: principal-type tests (two
independent criteria), Poisson brackets of eigenvalue germs and the
induced plus/minus witness sets, a winding index for one-dimensional
symbols, quasi-symmetry and symmetrizer verification, spectral
projections and the invariant-subbundle approximation property,
sublevel-set measures of semidefinite matrix paths and the finite-type
order fit built on them.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import ContourError
from .symbols import (
    DEFAULT_TOL_CLUSTER,
    DEFAULT_TOL_RANK,
    MatrixSymbol,
    PhaseGrid,
    PhasePoint,
    eval_and_derive,
    germ_track,
    spectral_at,
    xi_classify,
)

__all__ = [
    "PrincipalTypeVerdict",
    "BracketVerdict",
    "QuasiSymVerdict",
    "FiniteTypeReport",
    "HessianBoundReport",
    "SurfaceChart",
    "principal_type_at",
    "poisson_bracket",
    "lambda_pm_scan",
    "winding_index",
    "quasi_symmetric_check",
    "symmetrizer_verify",
    "spectral_projection",
    "approximation_check",
    "omega_delta",
    "finite_type_order",
    "hessian_bound_check",
]


# --- principal type -------------------------------------------------------

@dataclass
class PrincipalTypeVerdict:
    is_pt: bool
    witness_dir: object        # 2n-vector or None
    k_used: int
    method: str                # "determinant-derivative" | "bilinear-form" | "elliptic"
    agree: bool
    elliptic: bool = False
    det_is_pt: bool = False
    bilinear_is_pt: bool = False


def _direction_samples(n, extra=32, seed=0):
    dirs = []
    for c in range(2 * n):
        for s in (1.0, -1.0):
            d = np.zeros(2 * n)
            d[c] = s
            dirs.append(d)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((extra, 2 * n))
    v /= np.linalg.norm(v, axis=1)[:, None]
    dirs.extend(v)
    return dirs


def _poly_fit_derivatives(g, max_order, S, npts=11):
    """Coefficients c_j of the degree-(npts-1) LSQ fit of g on [-S, S].

    c_j approximates g^(j)(0)/j!; exact for polynomial g of degree
    < npts up to conditioning.
    """
    s = np.linspace(-S, S, npts)
    vals = np.array([g(v) for v in s], dtype=complex)
    deg = npts - 1
    V = np.vander(s / S, deg + 1, increasing=True)
    coef, *_ = np.linalg.lstsq(V, vals, rcond=None)
    # rescale from the normalized variable back to s
    return np.array([coef[j] / S ** j for j in range(min(max_order, deg) + 1)])


def _kernel_basis(A, tol_rank):
    """Orthonormal basis of the numerical kernel of A (columns)."""
    U, sv, Vh = np.linalg.svd(A)
    smax = sv[0] if sv.size and sv[0] > 0 else 0.0
    k = int(np.sum(sv <= tol_rank * max(smax, 1e-300)))
    if smax == 0.0:
        k = A.shape[0]
    if k == 0:
        return np.zeros((A.shape[0], 0)), np.zeros((A.shape[0], 0))
    # right-singular vectors span Ker A, left ones span Ker A*
    return Vh[-k:].conj().T, U[:, -k:]


def principal_type_at(sym, w0, lambda0, dir_samples=None, tols=None):
    """Principal-type verdict at (w0, lambda0) by two criteria.

    Method A accepts when the kappa-th directional derivative of
    det(P - lambda0) is nonzero for some sampled direction (with the
    lower-order derivatives vanishing); method B when the bilinear form
    <dP u, v> on Ker x Ker* is nondegenerate for some direction.  When
    lambda0 is not an eigenvalue the point is elliptic and the verdict
    is vacuously positive.
    """
    tols = dict(tols or {})
    tol_rank = tols.get("tol_rank", DEFAULT_TOL_RANK)
    tol_cluster = tols.get("tol_cluster", DEFAULT_TOL_CLUSTER)
    thresh = tols.get("threshold", 1e-6)
    fd_span = tols.get("fd_span", None)
    if not isinstance(w0, PhasePoint):
        w0 = PhasePoint.from_w(w0)
    sp = spectral_at(sym, w0, lambda0, tol_rank=tol_rank, tol_cluster=tol_cluster)
    if sp.kappa == 0:
        return PrincipalTypeVerdict(True, None, 0, "elliptic", True, elliptic=True,
                                    det_is_pt=True, bilinear_is_pt=True)
    k = sp.kappa
    if dir_samples is None:
        dir_samples = _direction_samples(sym.n)
    if fd_span is None:
        fd_span = 0.05 * (1.0 + float(np.linalg.norm(w0.w)))
    I = np.eye(sym.N)
    lam = complex(lambda0)

    # method A: directional derivatives of the characteristic determinant
    best_det, best_dir, ref = 0.0, None, 0.0
    npts = max(11, k + 4)
    for d in dir_samples:
        g = lambda s: np.linalg.det(sym.eval(w0.shifted(s * d)) - lam * I)
        c = _poly_fit_derivatives(g, k, fd_span, npts=npts)
        contrib = np.abs(c) * fd_span ** np.arange(len(c))
        ref = max(ref, contrib.max())
        val = contrib[k]
        # require the lower-order pieces to be negligible at this direction
        low = contrib[:k].max() if k > 0 else 0.0
        if val > best_det and low <= np.sqrt(thresh) * max(val, 1e-300):
            best_det, best_dir = val, np.array(d)
    det_ok = bool(best_det > thresh * (1.0 + ref))

    # method B: nondegeneracy of the kernel/cokernel pairing
    P0 = sym.eval(w0) - lam * I
    U, V = _kernel_basis(P0, tol_rank)
    bil_ok, bil_dir = False, None
    best_sv, ref_sv = 0.0, 0.0
    for d in dir_samples:
        _, dP = eval_and_derive(sym, w0, d)
        B = V.conj().T @ dP @ U
        sv = sla.svdvals(B) if B.size else np.array([0.0])
        ref_sv = max(ref_sv, sv[0])
        if sv[-1] > best_sv:
            best_sv, bil_dir = sv[-1], np.array(d)
    bil_ok = bool(best_sv > thresh * (1.0 + ref_sv))

    agree = det_ok == bil_ok
    witness = best_dir if det_ok else (bil_dir if bil_ok else None)
    return PrincipalTypeVerdict(det_ok, witness, k, "determinant-derivative", agree,
                                det_is_pt=det_ok, bilinear_is_pt=bil_ok)


# --- brackets and plus/minus sets ----------------------------------------

@dataclass
class BracketVerdict:
    w: PhasePoint
    lam: complex
    bracket: float
    side: str     # "plus" | "minus" | "zero"


def poisson_bracket(germ, w, step=None):
    """{Re lam, Im lam}(w) of a tracked eigenvalue branch.

    Convention: {f, g} = sum_j (d_xi_j f d_x_j g - d_x_j f d_xi_j g).
    Partials along coordinates the germ patch does not resolve are
    taken as zero (the branch is constant along them by construction).
    """
    if not germ.valid:
        raise ValueError("germ is not valid at the requested point")
    if not isinstance(w, PhasePoint):
        w = PhasePoint.from_w(w)
    n = germ.symbol.n
    total = 0.0
    for j in range(n):
        axes = {c for c, _ in germ.grid.axes}
        dx = germ.partial(w, j, step=step) if j in axes else 0.0
        dxi = germ.partial(w, n + j, step=step) if (n + j) in axes else 0.0
        total += (np.real(dxi) * np.imag(dx) - np.real(dx) * np.imag(dxi))
    return float(total)


def bracket_verdict(germ, w, scale_tol=1e-8):
    b = poisson_bracket(germ, w)
    scale = 1.0 + abs(germ.anchor_lambda)
    side = "zero" if abs(b) <= scale_tol * scale else ("plus" if b > 0 else "minus")
    return BracketVerdict(w if isinstance(w, PhasePoint) else PhasePoint.from_w(w),
                          germ.eval(w), b, side)


def lambda_pm_scan(sym, z_grid, phase_grid, tols=None):
    """Witness-based scan for the plus/minus bracket sets.

    For each complex z, a phase-grid point w witnesses z in the minus
    (plus) set when z is within the matching tolerance of an eigenvalue
    at w, the pair is not flagged as a multiplicity jump, the local
    germ tracks cleanly, and the bracket of the germ has the
    corresponding sign.  Only witnesses are reported, never closures.
    """
    tols = dict(tols or {})
    tol_cluster = tols.get("tol_cluster", DEFAULT_TOL_CLUSTER)
    match_tol = tols.get("match_tol", 1e-3)
    patch_half = tols.get("patch_half", 3)
    z_list = np.asarray(z_grid, dtype=complex).ravel()
    cls = xi_classify(sym, phase_grid, tol_cluster=tol_cluster)
    flagged = {(tuple(np.round(w.w, 10)), np.round(lam, 10)) for w, lam in cls.xi_points}

    spacings = [phase_grid.spacing(a) or 1e-2 for a in range(len(phase_grid.axes))]
    out = {}
    for z in z_list:
        in_minus = in_plus = ws_flag = False
        for idx in phase_grid.indices():
            w = phase_grid.point(idx)
            eigs = np.linalg.eigvals(sym.eval(w))
            j = int(np.argmin(np.abs(eigs - z)))
            if abs(eigs[j] - z) > match_tol:
                continue
            key = (tuple(np.round(w.w, 10)), np.round(eigs[j], 10))
            if key in flagged:
                ws_flag = True
                continue
            # local patch centered at the witness for germ tracking
            axes = {}
            for a, (c, vals) in enumerate(phase_grid.axes):
                v0 = w.w[c]
                sp = spacings[a]
                axes[c] = v0 + sp * np.arange(-patch_half, patch_half + 1) / patch_half
            patch = PhaseGrid.build(sym.n, axes, base=w.w)
            germ = germ_track(sym, w, eigs[j], patch, tol_cluster=tol_cluster)
            if not germ.valid:
                continue
            b = poisson_bracket(germ, w)
            if b < 0:
                in_minus = True
            elif b > 0:
                in_plus = True
        out[complex(z)] = {"in_minus": in_minus, "in_plus": in_plus, "ws_flag": ws_flag}
    return out


def winding_index(sym, mu, radius, samples=2048, tol=1e-10):
    """Winding number of det(P - mu) along the circle |w| = radius (n = 1).

    The total continuous argument variation divided by 2 pi, rounded to
    the nearest integer; the rounding residue must be < 0.1.
    """
    if sym.n != 1:
        raise ValueError("winding index implemented for n = 1 only")
    th = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    I = np.eye(sym.N)
    vals = np.empty(samples, dtype=complex)
    for i, t in enumerate(th):
        w = PhasePoint((radius * np.cos(t),), (radius * np.sin(t),))
        vals[i] = np.linalg.det(sym.eval(w) - mu * I)
    if np.min(np.abs(vals)) <= tol:
        raise ContourError("determinant vanishes on the contour")
    dphase = np.angle(np.roll(vals, -1) / vals)
    total = float(np.sum(dphase) / (2 * np.pi))
    idx = int(np.round(total))
    if abs(total - idx) >= 0.1:
        raise ContourError(f"winding residue {abs(total - idx):.3f} too large")
    return idx


# --- quasi-symmetry -------------------------------------------------------

@dataclass
class QuasiSymVerdict:
    im_min: float
    kernel_c: float
    passes: bool
    region: list


def _herm(A):
    return 0.5 * (A + A.conj().T)


def quasi_symmetric_check(Q, V, region, c_min=1e-6, tols=None):
    """Verify quasi-symmetry of Q along the vector field V on a region.

    At every sample w: the smallest eigenvalue of Im Q(w) must be
    >= -tol, and on the numerical kernel of Q(w) the compressed
    Hermitian form Re <(dQ along V) u, u> must be >= c_min.  The kernel
    condition is vacuous at points where Q(w) is invertible.
    """
    tols = dict(tols or {})
    tol_rank = tols.get("tol_rank", DEFAULT_TOL_RANK)
    tol_psd = tols.get("tol_psd", 1e-8)
    region = [w if isinstance(w, PhasePoint) else PhasePoint.from_w(w) for w in region]
    if not region:
        raise ValueError("region must be non-empty")
    im_min = np.inf
    kernel_c = np.inf
    for w in region:
        v = np.asarray(V(w) if callable(V) else V, dtype=float)
        if not np.any(v):
            raise ValueError("vector field vanishes on the region")
        Qw = Q.eval(w)
        scale = 1.0 + np.linalg.norm(Qw, 2)
        im_min = min(im_min, float(np.min(np.linalg.eigvalsh(_herm(Qw / 1j))) / scale))
        U, _ = _kernel_basis(Qw, tol_rank)
        if U.shape[1] == 0:
            continue
        _, dQ = eval_and_derive(Q, w, v)
        H = _herm(U.conj().T @ dQ @ U)
        kernel_c = min(kernel_c, float(np.min(np.linalg.eigvalsh(H))))
    passes = bool(im_min >= -tol_psd and kernel_c >= c_min)
    return QuasiSymVerdict(float(im_min), float(kernel_c), passes, region)


def symmetrizer_verify(P, M, V, region, c_min=1e-6, C_max=100.0, tols=None, sphere=24, seed=3):
    """Verify that M is a symmetrizer for P along V on the region.

    Checks, on a unit-sphere sample supplemented by the exact
    kernel-compression test, that
    Re <M (VP) u, u> >= c_min |u|^2 - C_max |Pu|^2 and
    Im <M P u, u>   >= -C_max |Pu|^2.
    """
    tols = dict(tols or {})
    tol_rank = tols.get("tol_rank", DEFAULT_TOL_RANK)
    slack = tols.get("slack", 1e-9)
    region = [w if isinstance(w, PhasePoint) else PhasePoint.from_w(w) for w in region]
    rng = np.random.default_rng(seed)
    ok = True
    worst = {"re": np.inf, "im": np.inf}
    for w in region:
        v = np.asarray(V(w) if callable(V) else V, dtype=float)
        Pw = P.eval(w)
        Mw = M.eval(w) if isinstance(M, MatrixSymbol) else np.asarray(M, dtype=complex)
        _, dP = eval_and_derive(P, w, v)
        A1 = _herm(Mw @ dP)
        A2 = _herm((Mw @ Pw) / 1j)
        G = Pw.conj().T @ Pw
        us = rng.standard_normal((sphere, P.N)) + 1j * rng.standard_normal((sphere, P.N))
        us /= np.linalg.norm(us, axis=1)[:, None]
        # exact test on the kernel, where |Pu| = 0
        U, _ = _kernel_basis(Pw, tol_rank)
        for u in list(us) + [U[:, j] for j in range(U.shape[1])]:
            pu2 = float(np.real(u.conj() @ G @ u))
            re = float(np.real(u.conj() @ A1 @ u)) - c_min + C_max * pu2
            im = float(np.real(u.conj() @ A2 @ u)) + C_max * pu2
            worst["re"] = min(worst["re"], re)
            worst["im"] = min(worst["im"], im)
            if re < -slack or im < -slack:
                ok = False
    return {"passes": ok, "margin_re": worst["re"], "margin_im": worst["im"]}


# --- spectral projection and approximation property -----------------------

def spectral_projection(Q_matrix, eps, tol=1e-9):
    """Projection onto the (generalized) eigenspaces with |z| < eps.

    Computed by a sorted Schur decomposition: with Q = Z T Z* and the
    enclosed eigenvalues ordered first, the projector is
    Z [[I, S], [0, 0]] Z* where S solves the Sylvester equation
    T11 S - S T22 = T12.  Exact on defective blocks.
    """
    Q = np.asarray(Q_matrix, dtype=complex)
    eigs = np.linalg.eigvals(Q)
    if np.any(np.abs(np.abs(eigs) - eps) <= tol * max(1.0, float(np.max(np.abs(eigs))))):
        raise ContourError("eigenvalue on the circle |z| = eps; choose a different eps")
    T, Z, sdim = sla.schur(Q, output="complex", sort=lambda z: abs(z) < eps)
    k = int(sdim)
    N = Q.shape[0]
    if k == 0:
        return np.zeros_like(Q)
    if k == N:
        return np.eye(N, dtype=complex)
    T11, T12, T22 = T[:k, :k], T[:k, k:], T[k:, k:]
    S = sla.solve_sylvester(T11, -T22, T12)
    P = np.zeros((N, N), dtype=complex)
    P[:k, :k] = np.eye(k)
    P[:k, k:] = S
    return Z @ P @ Z.conj().T


@dataclass(frozen=True)
class SurfaceChart:
    """Hypersurface {w_c = level} with its tangent coordinate frame."""

    normal_coord: int
    level: float = 0.0

    def project(self, w):
        v = np.array(w.w if isinstance(w, PhasePoint) else w, dtype=float)
        v[self.normal_coord] = self.level
        return PhasePoint.from_w(v)

    def tangent_dirs(self, n):
        dirs = []
        for c in range(2 * n):
            if c == self.normal_coord:
                continue
            d = np.zeros(2 * n)
            d[c] = 1.0
            dirs.append(d)
        return dirs


def approximation_check(Q, chart, w0, eps, region, tol=1e-8, step=None):
    """Invariant-subbundle test on the hypersurface of the chart.

    Passes when the compression Pi* (Re Q) Pi of the real part onto the
    near-kernel spectral bundle vanishes on the surface region and has
    vanishing tangential derivative there.  The projection rank must be
    constant over the region.
    """
    if not isinstance(w0, PhasePoint):
        w0 = PhasePoint.from_w(w0)
    region = [chart.project(w) for w in region]
    if step is None:
        step = 1e-4

    def compressed(w):
        Pi = spectral_projection(Q.eval(w), eps)
        return Pi, Pi.conj().T @ _herm(Q.eval(w)) @ Pi

    Pi0, _ = compressed(w0)
    rank0 = int(round(np.real(np.trace(Pi0))))
    worst_val = 0.0
    worst_der = 0.0
    for w in region:
        Pi, A = compressed(w)
        if int(round(np.real(np.trace(Pi)))) != rank0:
            raise ValueError("projection rank jumps on the region; shrink it")
        worst_val = max(worst_val, float(np.linalg.norm(A, 2)))
        for d in chart.tangent_dirs(Q.n):
            _, Ap = compressed(w.shifted(step * d))
            _, Am = compressed(w.shifted(-step * d))
            worst_der = max(worst_der, float(np.linalg.norm((Ap - Am) / (2 * step), 2)))
    return bool(worst_val <= tol and worst_der <= tol)


# --- sublevel measures and finite type ------------------------------------

def _lambda_min_path(F, ts, herm_tol=1e-10):
    out = np.empty(len(ts))
    for i, t in enumerate(ts):
        A = np.atleast_2d(np.asarray(F(t), dtype=complex))
        if np.linalg.norm(A - A.conj().T, 2) > herm_tol * (1.0 + np.linalg.norm(A, 2)):
            raise ValueError(f"matrix path not Hermitian at t={t}")
        out[i] = np.min(np.linalg.eigvalsh(A)) if A.shape[0] > 1 else float(np.real(A[0, 0]))
    return out


def omega_delta(F, window, grid_m, delta):
    """Sublevel-set measure |{t : lambda_min(F(t)) <= delta}| on a window.

    Midpoint-sampled: (|window| / grid_m) x (number of cells at or
    below delta).
    """
    lo, hi = float(window[0]), float(window[1])
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    cell = (hi - lo) / grid_m
    ts = lo + (np.arange(grid_m) + 0.5) * cell
    lam = _lambda_min_path(F, ts)
    return float(cell * np.sum(lam <= delta))


@dataclass
class FiniteTypeReport:
    mu_fit: float
    k_order: object          # even int, 0 for elliptic, or None
    delta_range: tuple
    r2: float
    status: str = "ok"
    zero_orders: tuple = ()


def _loglog_fit(xs, ys):
    lx, ly = np.log(xs), np.log(ys)
    A = np.stack([lx, np.ones_like(lx)], axis=1)
    coef, *_ = np.linalg.lstsq(A, ly, rcond=None)
    pred = A @ coef
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - np.mean(ly)) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(coef[0]), float(coef[1]), r2


def finite_type_order(F, window, delta_sequence, grid_m, r2_min=0.95, fit_tol=0.1):
    """Finite-type order of a PSD matrix path from two estimators.

    Fits log|sublevel measure| against log delta over the geometric
    delta sequence and, independently, the vanishing order of
    lambda_min at each of its zeros; the even order k is reported only
    when the measure fit is clean (r2 >= r2_min) and both estimators
    round to the same k.  Elliptic paths report order 0; paths whose
    measure fills the window at every delta are flagged instead of
    fitted.
    """
    deltas = np.sort(np.asarray(delta_sequence, dtype=float))
    lo, hi = float(window[0]), float(window[1])
    width = hi - lo
    cell = width / grid_m
    ts = lo + (np.arange(grid_m) + 0.5) * cell
    lam = _lambda_min_path(F, ts)

    measures = np.array([float(cell * np.sum(lam <= d)) for d in deltas])
    rng = (float(deltas[0]), float(deltas[-1]))

    if np.all(measures == 0.0):
        return FiniteTypeReport(np.inf, 0, rng, 1.0, status="elliptic")
    if np.all(measures >= width - cell):
        return FiniteTypeReport(0.0, None, rng, 1.0, status="window-filling")

    # boundary-positivity proxy for "no degeneracy at infinity"
    edge = max(2, grid_m // 20)
    if min(lam[:edge].min(), lam[-edge:].min()) <= deltas[-1]:
        return FiniteTypeReport(np.nan, None, rng, 0.0, status="boundary-degenerate")

    keep = measures > 0
    if np.sum(keep) < 3:
        return FiniteTypeReport(np.nan, None, rng, 0.0, status="inconclusive")
    mu, _, r2 = _loglog_fit(deltas[keep], measures[keep])

    # corroborating estimator: vanishing order of lambda_min at each zero
    zero_orders = []
    thresh = deltas[0]
    mask = lam <= thresh
    if np.any(mask):
        # cluster consecutive runs of sub-threshold cells into zeros
        idx = np.flatnonzero(mask)
        groups = np.split(idx, np.flatnonzero(np.diff(idx) > 1) + 1)
        for grp in groups:
            i0 = grp[int(np.argmin(lam[grp]))]
            t0 = ts[i0]
            rad = np.abs(ts - t0)
            sel = (rad >= 5 * cell) & (rad <= width / 8) & (lam > 0)
            if np.sum(sel) < 8:
                continue
            slope, _, zr2 = _loglog_fit(rad[sel], lam[sel])
            if zr2 >= r2_min:
                zero_orders.append(slope)

    k_candidate = None
    if mu > 0:
        k_raw = 1.0 / mu
        k_candidate = int(2 * max(1, round(k_raw / 2)))
    k_order = None
    status = "ok"
    if r2 >= r2_min and k_candidate is not None and abs(mu - 1.0 / k_candidate) <= fit_tol:
        rounded = [int(2 * max(1, round(z / 2))) for z in zero_orders]
        if rounded and all(r == k_candidate for r in rounded):
            k_order = k_candidate
        else:
            status = "estimators-disagree" if rounded else "no-zero-fit"
    else:
        status = "measure-fit-poor"
    return FiniteTypeReport(float(mu), k_order, rng, float(r2), status=status,
                            zero_orders=tuple(float(z) for z in zero_orders))


@dataclass
class HessianBoundReport:
    holds: bool
    witness: object
    lhs_max: float
    c_required: float


def hessian_bound_check(F, t0, u_samples, C, window=None, fd_step=1e-4):
    """Check |<F'(t0) u, u>|^2 <= C |F''|_inf <F(t0) u, u> |u|^2 on samples.

    F is a PSD C^2 matrix path; the sup-norm of F'' is taken over a
    grid on the window (defaults to [t0 - 1, t0 + 1]).
    """
    if window is None:
        window = (t0 - 1.0, t0 + 1.0)

    def mat(t):
        return np.atleast_2d(np.asarray(F(t), dtype=complex))

    F0 = mat(t0)
    d1 = (mat(t0 - 2 * fd_step) - 8 * mat(t0 - fd_step)
          + 8 * mat(t0 + fd_step) - mat(t0 + 2 * fd_step)) / (12 * fd_step)
    ts = np.linspace(window[0], window[1], 41)
    d2max = 0.0
    for t in ts:
        d2 = (mat(t - fd_step) - 2 * mat(t) + mat(t + fd_step)) / fd_step ** 2
        d2max = max(d2max, float(np.linalg.norm(d2, 2)))
    holds = True
    witness = None
    lhs_max = 0.0
    c_req = 0.0
    for u in u_samples:
        u = np.asarray(u, dtype=complex)
        nu2 = float(np.real(u.conj() @ u))
        lhs = abs(complex(u.conj() @ d1 @ u)) ** 2
        f0 = float(np.real(u.conj() @ F0 @ u))
        rhs = C * d2max * f0 * nu2
        lhs_max = max(lhs_max, lhs)
        if f0 * nu2 > 0:
            c_req = max(c_req, lhs / (d2max * f0 * nu2)) if d2max > 0 else c_req
        if lhs > rhs + 1e-12 * (1.0 + rhs):
            holds = False
            witness = u if witness is None else witness
    return HessianBoundReport(holds, witness, lhs_max, c_req)
