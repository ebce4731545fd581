"""Explicit approximate null vectors certifying resolvent lower bounds.

Three constructions: self-similar bump quasimodes for hD + i f(t) with
f vanishing to finite even order (residual ~ h^{k/(k+1)}), complex
Gaussian-beam states concentrated at a phase point where the
eigenvalue germ has negative Poisson bracket (phase built to cubic
Taylor order, so the residual floor is h^{3/2} up to the exactness of
the eikonal), and exact-kernel states for the rank-degenerate
two-branch model.  Every state is measured through the quantizer, and
sigma_min(Op - z) <= residual ratio holds by construction.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BeamConstructionError, ResolutionError
from .quantize import GridSpec, quantize_fourier, quantize_poly
from .resolvent import build_operator, fit_sigma_curve, sigma_min_at
from .symbols import EigGerm, MatrixSymbol, PhasePoint

__all__ = ["Quasimode", "ResidualCurve", "mollifier", "scaling_quasimode",
           "gaussian_beam", "system_embed", "kernel_quasimode_52",
           "measure_residual", "residual_sweep"]


def mollifier(s):
    """Standard compactly supported bump on (-1, 1), unit mass."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        out[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    return out / 0.443993816168450876    # integral of exp(-1/(1-s^2)) over (-1, 1)


def plateau(s):
    """C-infinity cutoff: 1 on |s| <= 1/2, 0 for |s| >= 1.

    Flat at the center, so cutting a Gaussian-concentrated state only
    costs exponentially small residual mass.
    """
    from .symbols import smooth_step

    return smooth_step(2.0 * (1.0 - np.abs(np.asarray(s, dtype=float))))


@dataclass
class Quasimode:
    """A discretized approximate null vector of Op - z."""

    state: np.ndarray
    grid: GridSpec
    h: float
    target_z: complex
    builder: str
    residual_ratio: float = None
    meta: dict = field(default_factory=dict)

    @property
    def norm(self):
        return float(np.linalg.norm(self.state))


def _check_window_support(state, grid, N=1, tol=1e-12):
    u = np.abs(state.reshape(grid.M, N)) ** 2
    mass = float(u.sum())
    outside = float(u[np.abs(grid.points) > grid.L / 2].sum())
    if mass == 0.0:
        raise ValueError("quasimode state is identically zero")
    return outside / mass <= tol


def scaling_quasimode(f, t0, k, grid, width_scale=1.0, fixed_width=None):
    """Self-similar bump quasimode for hD_t + i f(t) at z = 0.

    ``f`` must vanish to (even) order k at t0 (vanishing to higher
    order is allowed, e.g. on a flat zero set); the state is the fixed
    mollifier rescaled to width h^{1/(k+1)}, giving residual ratio
    <= c h^{k/(k+1)} with c independent of h.  With ``fixed_width`` the
    bump width stays h-independent, the right choice on a flat zero
    where only the derivative term contributes (ratio O(h)).
    """
    if k <= 0 or k % 2:
        raise ValueError("k must be a positive even integer")
    # numeric verification that the low-order derivatives vanish
    s = 0.25
    stencil = np.arange(-4, 5)
    vals = np.array([f(t0 + s * j) for j in stencil], dtype=float)
    V = np.vander(stencil.astype(float), len(stencil), increasing=True)
    coef = np.linalg.solve(V, vals)     # coefficients in (t - t0)/s
    scale = max(np.abs(coef).max(), 1e-300)
    if max(abs(coef[j]) for j in range(k)) > 1e-6 * scale:
        raise ValueError(f"f does not vanish to order {k} at t0={t0}")

    h = grid.h
    width = fixed_width if fixed_width is not None else width_scale * h ** (1.0 / (k + 1))
    if 2 * width / grid.dx < 16:
        raise ResolutionError(
            f"bump of width {width:.3g} spans fewer than 16 grid cells (dx={grid.dx:.3g})")
    u = mollifier((grid.points - t0) / width).astype(complex)
    qm = Quasimode(u, grid, h, 0.0 + 0.0j, "scaling",
                   meta={"t0": float(t0), "k": int(k), "width": float(width)})
    if not _check_window_support(u, grid):
        raise ValueError("quasimode mass leaks outside |x| <= L/2; enlarge L")
    return qm


class _ScalarModel:
    """Scalar symbol model p(x, zeta) usable at complex frequency."""

    def __init__(self, germ, xi0):
        sym = germ.symbol
        if sym.N != 1:
            raise BeamConstructionError(
                "beam construction is scalar; reduce systems and embed afterwards")
        self.germ = germ
        self.sym = sym
        self.xi0 = float(xi0)
        self.exact = sym.xi_poly is not None

    def p(self, x, zeta):
        if self.exact:
            return complex(self.sym.eval_xi_complex(x, zeta)[0, 0])
        # quadratic Taylor extension off the real frequency axis
        d = 1e-4 * (1.0 + abs(self.xi0))
        lam0 = self.germ.eval(PhasePoint((x,), (self.xi0,)))
        lp = self.germ.eval(PhasePoint((x,), (self.xi0 + d,)))
        lm = self.germ.eval(PhasePoint((x,), (self.xi0 - d,)))
        lxi = (lp - lm) / (2 * d)
        lxixi = (lp - 2 * lam0 + lm) / d ** 2
        dz = zeta - self.xi0
        return lam0 + lxi * dz + 0.5 * lxixi * dz * dz

    def d_zeta(self, x, zeta, order=1):
        if self.exact and self.sym.xi_poly is not None:
            coeffs = [complex(np.asarray(a(x)).reshape(-1)[0]) for a in self.sym.xi_poly]
            for _ in range(order):
                coeffs = [j * coeffs[j] for j in range(1, len(coeffs))] or [0.0]
            return complex(sum(c * zeta ** j for j, c in enumerate(coeffs)))
        d = 1e-4 * (1.0 + abs(self.xi0))
        if order == 1:
            return (self.p(x, zeta + d) - self.p(x, zeta - d)) / (2 * d)
        return (self.p(x, zeta + d) - 2 * self.p(x, zeta) + self.p(x, zeta - d)) / d ** 2

    def d_x(self, x, zeta, order=1):
        d = 1e-4 * (1.0 + abs(x))
        if order == 1:
            return (self.p(x + d, zeta) - self.p(x - d, zeta)) / (2 * d)
        return (self.p(x + d, zeta) - 2 * self.p(x, zeta) + self.p(x - d, zeta)) / d ** 2

    def d_x_zeta(self, x, zeta):
        d = 1e-4 * (1.0 + abs(x))
        return (self.d_zeta(x + d, zeta) - self.d_zeta(x - d, zeta)) / (2 * d)

    def a2(self, x):
        if self.exact and self.sym.xi_poly and len(self.sym.xi_poly) >= 3:
            return complex(np.asarray(self.sym.xi_poly[2](x)).reshape(-1)[0])
        if self.exact:
            return 0.0 + 0.0j
        return 0.5 * self.d_zeta(x, self.xi0, order=2)

    @property
    def degree(self):
        if self.exact:
            return len(self.sym.xi_poly) - 1
        return 2


def gaussian_beam(germ, z, grid, amp_terms=1, support_radius=None, bracket=None):
    """Complex Gaussian-beam quasimode at the germ anchor.

    The phase is Taylor-built through cubic order (gradient = xi0,
    Hessian killing the first eikonal derivative, cubic coefficient the
    second), requiring a positive-definite imaginary Hessian, which is
    equivalent to a negative Poisson bracket at the anchor.  The
    leading amplitude solves the transport equation exactly; a second
    amplitude term (amp_terms = 2) cancels the next-order correction
    for symbols of frequency-degree <= 2.  The residual floor of the
    construction is O(h^{3/2}), set by the cubic phase truncation.
    """
    from .classify import poisson_bracket   # local import to avoid a cycle

    w0 = germ.anchor_w
    x0, xi0 = w0.x[0], w0.xi[0]
    if germ.symbol.n != 1:
        raise BeamConstructionError("beam quasimodes are built on 1-D grids")
    if not germ.valid:
        raise BeamConstructionError("eigenvalue germ is not valid near the anchor")
    if bracket is None:
        bracket = poisson_bracket(germ, w0)
    if bracket >= 0:
        raise BeamConstructionError(
            f"Poisson bracket {bracket:+.3g} at the anchor is not negative; "
            "apply the construction to the adjoint side instead")
    model = _ScalarModel(germ, xi0)
    z = complex(z)
    pz = model.p(x0, xi0) - z
    if abs(pz) > 1e-6 * (1.0 + abs(z)):
        raise BeamConstructionError("z does not match the germ value at the anchor")

    p_x = model.d_x(x0, xi0)
    p_xi = model.d_zeta(x0, xi0)
    if abs(p_xi) < 1e-12:
        raise BeamConstructionError("frequency derivative vanishes at the anchor")
    c2 = -p_x / p_xi
    if c2.imag <= 0:
        raise BeamConstructionError(
            f"imaginary part of the phase Hessian is {c2.imag:+.3g}; "
            "bracket sign or germ quality insufficient")
    p_xx = model.d_x(x0, xi0, order=2)
    p_xxi = model.d_x_zeta(x0, xi0)
    p_xixi = model.d_zeta(x0, xi0, order=2)
    c3 = -(p_xx + 2.0 * p_xxi * c2 + p_xixi * c2 * c2) / p_xi

    if support_radius is None:
        r_cubic = 1.5 * c2.imag / max(abs(c3.imag), 1e-12)
        support_radius = min(grid.L / 4.0, r_cubic)
    h = grid.h
    if support_radius / grid.dx < 8:
        raise ResolutionError("beam support spans fewer than 16 grid cells")
    if np.sqrt(h / c2.imag) > support_radius / 2.5:
        raise ResolutionError("beam width h^(1/2) too large for the support radius")
    xi_needed = abs(xi0) + 4.0 * np.sqrt(h * abs(c2))
    xi_max = float(np.max(np.abs(grid.dual_xi)))
    if xi_max < xi_needed:
        raise ResolutionError(
            f"dual grid covers |xi| <= {xi_max:.3g} but the beam needs {xi_needed:.3g}; "
            "increase M or L*h")

    xs = grid.points
    d = xs - x0
    phi = xi0 * d + 0.5 * c2 * d ** 2 + (c3 / 6.0) * d ** 3
    phase_prime = xi0 + c2 * d + 0.5 * c3 * d ** 2
    cut = plateau(d / support_radius)

    # leading amplitude: transport-parallel section p_xi^{-1/2}
    inside = cut > 0
    pxi_line = np.full(xs.shape, p_xi, dtype=complex)
    for i in np.flatnonzero(inside):
        pxi_line[i] = model.d_zeta(xs[i], phase_prime[i])
    A = np.zeros_like(xs, dtype=complex)
    ratio = np.where(inside, pxi_line / p_xi, 1.0)
    A[inside] = ratio[inside] ** (-0.5)

    if amp_terms >= 2:
        if model.degree > 2:
            raise BeamConstructionError(
                "second amplitude term supports frequency-degree <= 2 only")
        a2 = np.array([model.a2(x) for x in xs], dtype=complex)
        idx = np.flatnonzero(inside)
        if idx.size >= 5:
            xs_in = xs[idx]
            A0 = A[idx]
            dxg = xs_in[1] - xs_in[0]
            dA = np.gradient(A0, dxg)
            d2A = np.gradient(dA, dxg)
            da2 = np.gradient(a2[idx], dxg)
            d2a2 = np.gradient(da2, dxg)
            L2A0 = -(a2[idx] * d2A + da2 * dA + 0.25 * d2a2 * A0)
            integrand = (-1j) * L2A0 / (pxi_line[idx] * A0)
            i0 = int(np.argmin(np.abs(xs_in - x0)))
            prim = np.concatenate([[0.0], np.cumsum(
                0.5 * (integrand[1:] + integrand[:-1]) * np.diff(xs_in))])
            prim -= prim[i0]
            A1 = A0 * prim
            A = A.astype(complex)
            A[idx] = A0 + h * A1

    u = np.zeros_like(xs, dtype=complex)
    u[inside] = cut[inside] * A[inside] * np.exp(1j * phi[inside] / h)
    nrm = np.linalg.norm(u)
    if nrm == 0:
        raise BeamConstructionError("beam state vanished on the grid")
    u /= nrm
    qm = Quasimode(u, grid, h, z, f"beam-J{amp_terms}",
                   meta={"x0": float(x0), "xi0": float(xi0),
                         "phase_hessian": complex(c2), "phase_cubic": complex(c3),
                         "support_radius": float(support_radius),
                         "bracket": float(bracket)})
    _check_window_support(u, grid)
    return qm


def system_embed(scalar_qm, E, kernel_col, tol=1e-10):
    """Embed a scalar quasimode into a system through a base change.

    The scalar state is placed in the given kernel column and mapped
    through the (multiplication) quantization of E; the residual ratio
    against the conjugated system degrades by at most cond(E) (1 + Ch).
    """
    grid = scalar_qm.grid
    if not isinstance(E, MatrixSymbol):
        E = MatrixSymbol.constant(E)
    N = E.N
    u = scalar_qm.state
    xs = grid.points
    sup = np.abs(u) > 0
    out = np.zeros((grid.M, N), dtype=complex)
    for i in range(grid.M):
        if not sup[i]:
            continue
        Ei = E.eval(PhasePoint((xs[i],), (0.0,)))
        if abs(np.linalg.det(Ei)) < tol:
            raise ValueError(f"base change singular on the quasimode support at x={xs[i]:.4g}")
        out[i] = Ei[:, kernel_col] * u[i]
    state = out.reshape(-1)
    state = state / np.linalg.norm(state)
    return Quasimode(state, grid, scalar_qm.h, scalar_qm.target_z,
                     scalar_qm.builder + "-embedded",
                     meta={"kernel_col": int(kernel_col), **scalar_qm.meta})


def kernel_quasimode_52(grid, h=None, chi_width=1.0):
    """Exact-kernel quasimode for the rank-degenerate two-branch model.

    u(t) = chi(t) (t, -1) annihilates the imaginary part identically,
    so only h D_t acts: residual ratio <= C h at z = 0.
    """
    if h is not None:
        grid = grid.with_h(float(h))
    if 2 * chi_width / grid.dx < 16:
        raise ResolutionError("cutoff too narrow for the grid")
    ts = grid.points
    chi = mollifier(ts / chi_width)
    out = np.zeros((grid.M, 2), dtype=complex)
    out[:, 0] = chi * ts
    out[:, 1] = -chi
    state = out.reshape(-1)
    state = state / np.linalg.norm(state)
    qm = Quasimode(state, grid, grid.h, 0.0 + 0.0j, "kernel-52",
                   meta={"chi_width": float(chi_width)})
    _check_window_support(state, grid, N=2)
    return qm


def measure_residual(qm, sym, backend="poly", lower_terms=None, op=None):
    """Fill in the measured residual ratio |(Op - z) u| / |u|.

    Uses the matrix-free FFT action when the symbol has a coefficient
    table (identical to the dense poly assembly), otherwise quantizes.
    """
    from .quantize import apply_xi_poly

    if op is not None:
        r = op.shifted(qm.target_z) @ qm.state
    elif backend == "poly" and sym.xi_poly is not None:
        r = apply_xi_poly(sym, qm.grid, qm.state)
        if lower_terms:
            for order, symj in lower_terms:
                r = r + qm.grid.h ** order * apply_xi_poly(symj, qm.grid, qm.state)
        r = r - complex(qm.target_z) * qm.state
    else:
        op = build_operator(sym, qm.grid, backend=backend, lower_terms=lower_terms)
        r = op.shifted(qm.target_z) @ qm.state
    qm.residual_ratio = float(np.linalg.norm(r) / np.linalg.norm(qm.state))
    return qm.residual_ratio


@dataclass
class ResidualCurve:
    h_list: tuple
    ratios: tuple
    fitted_exponent: float
    r2: float


def residual_sweep(builder, h_list, sym, grid_template, z, backend="poly",
                   lower_terms=None):
    """Measure a quasimode family across a geometric h sweep.

    ``builder(grid)`` constructs the quasimode on the grid (whose ``h``
    is set per sweep point); ratios are measured through quantize +
    apply and fitted with the power model.
    """
    hs = sorted(float(v) for v in h_list)
    ratios = []
    for h in hs:
        grid = grid_template.with_h(h)
        qm = builder(grid)
        if qm.target_z != complex(z):
            raise ValueError("builder target does not match the sweep target")
        ratios.append(measure_residual(qm, sym, backend=backend, lower_terms=lower_terms))
    fit = fit_sigma_curve(hs, ratios, model="power")
    return ResidualCurve(tuple(hs), tuple(ratios), fit.mu_hat, fit.r2_power)
