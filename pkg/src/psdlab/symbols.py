"""Matrix-valued phase-space symbols and their pointwise spectral analysis.

A symbol is an N x N complex-matrix-valued function on phase space
T*R^n with coordinates w = (x, xi).  This module holds the symbol
representation plus the pointwise machinery: eigenvalue clouds,
geometric/algebraic multiplicities, the singular-set taxonomy
(multiplicity-jump points and their eigenvalue projections), smooth
local eigenvalue branches ("germs"), the eigenvalue perturbation bound
used to control clustering, and the Moebius reduction that turns an
unbounded symbol into a bounded one.
"""

from dataclasses import dataclass, field, replace
import itertools
import math

import numpy as np
import scipy.linalg as sla

from .errors import ConditioningError, EvaluationDomainError

__all__ = [
    "PhasePoint",
    "PhaseGrid",
    "MatrixSymbol",
    "SpectralPoint",
    "EigGerm",
    "XiClassification",
    "eval_and_derive",
    "spectral_at",
    "sigma_sample",
    "sigma_infinity_probe",
    "xi_classify",
    "germ_track",
    "elsner_check",
    "moebius_reduce",
    "moebius_identity_defect",
    "smooth_step",
    "saturating_coordinate",
]

DEFAULT_TOL_RANK = 1e-8
DEFAULT_TOL_CLUSTER = 1e-6


@dataclass(frozen=True)
class PhasePoint:
    """A point w = (x, xi) in phase space, n = 1 or 2."""

    x: tuple
    xi: tuple

    def __post_init__(self):
        x = tuple(float(v) for v in np.atleast_1d(self.x))
        xi = tuple(float(v) for v in np.atleast_1d(self.xi))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "xi", xi)
        if len(x) != len(xi):
            raise ValueError("x and xi must have the same length")
        if len(x) not in (1, 2):
            raise ValueError("phase dimension must be 1 or 2")
        if not all(math.isfinite(v) for v in x + xi):
            raise ValueError("phase point has non-finite components")

    @property
    def n(self):
        return len(self.x)

    @property
    def w(self):
        """Concatenated coordinate vector (x_1..x_n, xi_1..xi_n)."""
        return np.array(self.x + self.xi, dtype=float)

    @classmethod
    def from_w(cls, w):
        w = np.asarray(w, dtype=float)
        n = w.size // 2
        return cls(tuple(w[:n]), tuple(w[n:]))

    def shifted(self, dw):
        return PhasePoint.from_w(self.w + np.asarray(dw, dtype=float))


@dataclass(frozen=True)
class PhaseGrid:
    """Rectangular grid of phase points.

    Only a subset of the 2n coordinates need to carry an axis; the
    remaining coordinates are frozen at ``base``.  Points are ordered
    grid-major (C order over the axes in the order given), which fixes
    a deterministic output order for every scan built on top.
    """

    n: int
    axes: tuple          # tuple of (coord_index, tuple_of_values)
    base: tuple          # length 2n

    @classmethod
    def build(cls, n, axes, base=None):
        """axes: dict or sequence of (coord_index, values)."""
        if base is None:
            base = (0.0,) * (2 * n)
        base = tuple(float(v) for v in base)
        if len(base) != 2 * n:
            raise ValueError("base must have length 2n")
        if isinstance(axes, dict):
            items = sorted(axes.items())
        else:
            items = list(axes)
        ax = []
        for c, vals in items:
            c = int(c)
            if not 0 <= c < 2 * n:
                raise ValueError("axis coordinate index out of range")
            ax.append((c, tuple(float(v) for v in np.asarray(vals).ravel())))
        return cls(n, tuple(ax), base)

    @property
    def shape(self):
        return tuple(len(vals) for _, vals in self.axes)

    @property
    def size(self):
        return int(np.prod(self.shape)) if self.axes else 1

    def w_at(self, idx):
        w = np.array(self.base, dtype=float)
        for (c, vals), i in zip(self.axes, idx):
            w[c] = vals[i]
        return w

    def point(self, idx):
        return PhasePoint.from_w(self.w_at(idx))

    def indices(self):
        return itertools.product(*(range(len(v)) for _, v in self.axes))

    def points(self):
        for idx in self.indices():
            yield self.point(idx)

    def neighbors(self, idx):
        """Axis-aligned neighbors, clipped at the grid boundary."""
        out = []
        for a in range(len(self.axes)):
            for step in (-1, 1):
                j = idx[a] + step
                if 0 <= j < len(self.axes[a][1]):
                    out.append(idx[:a] + (j,) + idx[a + 1:])
        return out

    def spacing(self, a):
        vals = self.axes[a][1]
        if len(vals) < 2:
            return 0.0
        return abs(vals[1] - vals[0])

    def nearest_index(self, w):
        w = np.asarray(w, dtype=float)
        idx = []
        for c, vals in self.axes:
            idx.append(int(np.argmin(np.abs(np.asarray(vals) - w[c]))))
        return tuple(idx)


@dataclass
class MatrixSymbol:
    """Evaluatable N x N matrix symbol on T*R^n.

    Parameters
    ----------
    n, N : int
        Phase dimension (1 or 2) and matrix size.
    func : callable
        ``func(PhasePoint) -> (N, N) complex array``.
    deriv : callable, optional
        Analytic first-derivative oracle ``deriv(w, direction) ->
        (N, N) array`` giving the directional derivative along the
        (not necessarily unit) 2n-direction.
    xi_poly : list of callables, optional
        For n = 1 symbols polynomial in xi: coefficient functions
        ``a_k(x) -> (N, N) array`` with P(x, xi) = sum_k a_k(x) xi^k.
    hermitian, bounded : bool
        Declared structure flags; `hermitian` enables self-adjointness
        checks downstream.
    xi_support : float, optional
        Declared essential xi-support radius (used for cutoff warnings
        by the kernel-quadrature quantizer).
    known_sigma_inf : tuple, optional
        Declared eigenvalues at infinity, when available, so tests can
        compare shell probes with exact limits.
    """

    n: int
    N: int
    func: object
    deriv: object = None
    xi_poly: object = None
    hermitian: bool = False
    bounded: bool = True
    xi_support: object = None
    known_sigma_inf: object = None
    name: str = ""

    def eval(self, w):
        """Evaluate at a PhasePoint (or raw coordinate vector)."""
        if not isinstance(w, PhasePoint):
            w = PhasePoint.from_w(w)
        P = np.asarray(self.func(w), dtype=complex)
        if P.shape != (self.N, self.N):
            raise ValueError(f"symbol returned shape {P.shape}, expected {(self.N, self.N)}")
        if not np.all(np.isfinite(P.view(float))):
            raise EvaluationDomainError(f"symbol {self.name or ''} non-finite at w={w.w}")
        return P

    def eval_xi_complex(self, x, zeta):
        """Evaluate P(x, zeta) for complex zeta via the xi-polynomial form."""
        if self.xi_poly is None:
            raise ValueError("symbol has no xi-polynomial form")
        x = float(np.atleast_1d(x)[0])
        out = np.zeros((self.N, self.N), dtype=complex)
        zp = 1.0 + 0.0j
        for a in self.xi_poly:
            out += np.asarray(a(x), dtype=complex) * zp
            zp *= zeta
        return out

    @classmethod
    def from_xi_poly(cls, coeffs, N=None, **kw):
        """Build an n = 1 symbol from xi-coefficient functions a_k(x)."""
        probe = np.asarray(coeffs[0](0.0), dtype=complex)
        if N is None:
            N = 1 if probe.ndim == 0 else probe.shape[0]

        def as_mat(v):
            v = np.asarray(v, dtype=complex)
            return v.reshape(1, 1) if v.ndim == 0 else v

        def f(w):
            out = np.zeros((N, N), dtype=complex)
            xi = w.xi[0]
            p = 1.0
            for a in coeffs:
                out += as_mat(a(w.x[0])) * p
                p *= xi
            return out

        return cls(n=1, N=N, func=f, xi_poly=[lambda x, a=a: as_mat(a(x)) for a in coeffs], **kw)

    @classmethod
    def constant(cls, A, n=1, **kw):
        A = np.atleast_2d(np.asarray(A, dtype=complex))
        return cls(n=n, N=A.shape[0], func=lambda w: A, deriv=lambda w, d: np.zeros_like(A), **kw)

    def adjoint(self):
        """Pointwise adjoint symbol P*(w)."""
        der = None
        if self.deriv is not None:
            der = lambda w, d: np.conj(self.deriv(w, d)).T
        return MatrixSymbol(
            n=self.n, N=self.N,
            func=lambda w: np.conj(self.eval(w)).T,
            deriv=der, hermitian=self.hermitian, bounded=self.bounded,
            name=self.name + "*" if self.name else "")


@dataclass(frozen=True)
class SpectralPoint:
    """Multiplicity data of one eigenvalue of the symbol at one point."""

    w: PhasePoint
    lam: complex
    kappa: int     # geometric multiplicity
    bigK: int      # algebraic multiplicity (characteristic-root order)


def _fd_directional(sym, w, direction, step, order=4):
    d = np.asarray(direction, dtype=float)
    if order == 4:
        stencil = [(-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)]
        denom = 12.0 * step
    else:
        stencil = [(-1, -1.0), (1, 1.0)]
        denom = 2.0 * step
    acc = np.zeros((sym.N, sym.N), dtype=complex)
    for k, c in stencil:
        acc += c * sym.eval(w.shifted(k * step * d))
    return acc / denom


def eval_and_derive(sym, w, direction, step=None):
    """Evaluate P(w) and its directional derivative along ``direction``.

    Uses the analytic derivative oracle when the symbol carries one,
    otherwise a 4th-order central difference with the given step
    (default ``1e-4 * (1 + |w|)``).
    """
    if not isinstance(w, PhasePoint):
        w = PhasePoint.from_w(w)
    d = np.asarray(direction, dtype=float)
    if d.shape != (2 * sym.n,) or not np.any(d):
        raise ValueError("direction must be a non-zero 2n-vector")
    if step is None:
        step = 1e-4 * (1.0 + float(np.linalg.norm(w.w)))
    if step <= 0:
        raise ValueError("step must be positive")
    P = sym.eval(w)
    if sym.deriv is not None:
        dP = np.asarray(sym.deriv(w, d), dtype=complex)
    else:
        dP = _fd_directional(sym, w, d, step)
    if not np.all(np.isfinite(dP.view(float))):
        raise EvaluationDomainError("derivative evaluation non-finite")
    return P, dP


def _cluster_count(eigs, lam, tol_abs):
    return int(np.sum(np.abs(eigs - lam) <= tol_abs))


def spectral_at(sym, w, lam, tol_rank=DEFAULT_TOL_RANK, tol_cluster=DEFAULT_TOL_CLUSTER):
    """Geometric and algebraic multiplicity of ``lam`` at ``w``.

    kappa counts singular values of P(w) - lam below the relative rank
    cutoff; bigK counts eigenvalues of P(w) within the clustering
    radius of lam.  A lam away from every eigenvalue yields
    kappa = bigK = 0.
    """
    if not (0 < tol_rank < 1 and 0 < tol_cluster < 1):
        raise ValueError("tolerances must lie in (0, 1)")
    P = sym.eval(w)
    scale = 1.0 + np.linalg.norm(P, 2)
    tol_abs = tol_cluster * scale
    eigs = np.linalg.eigvals(P)
    bigK = _cluster_count(eigs, lam, tol_abs)
    if bigK == 0:
        return SpectralPoint(w if isinstance(w, PhasePoint) else PhasePoint.from_w(w),
                             complex(lam), 0, 0)
    A = P - complex(lam) * np.eye(sym.N)
    sv = sla.svdvals(A)
    smax = sv[0] if sv[0] > 0 else 0.0
    cutoff = max(tol_rank * smax, tol_abs)
    kappa = int(np.sum(sv <= cutoff))
    kappa = max(1, min(kappa, bigK))
    return SpectralPoint(w if isinstance(w, PhasePoint) else PhasePoint.from_w(w),
                         complex(lam), kappa, bigK)


def _sorted_eigs(P):
    e = np.linalg.eigvals(P)
    return e[np.lexsort((e.imag, e.real))]


def sigma_sample(sym, grid):
    """All eigenvalues of P(w) over the grid, deterministically ordered.

    Order is grid-major, then by (real, imaginary) part within each
    point, so repeated runs produce identical clouds.
    """
    pts = list(grid.points()) if isinstance(grid, PhaseGrid) else list(grid)
    if not pts:
        raise ValueError("empty grid")
    out = np.empty(len(pts) * sym.N, dtype=complex)
    for i, w in enumerate(pts):
        out[i * sym.N:(i + 1) * sym.N] = _sorted_eigs(sym.eval(w))
    return out


def _sphere_dirs(n2, count, seed=7):
    """Deterministic direction sample on the unit sphere in R^{n2}."""
    if n2 == 2:
        th = np.linspace(0.0, 2 * np.pi, count, endpoint=False)
        return np.stack([np.cos(th), np.sin(th)], axis=1)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((count, n2))
    v /= np.linalg.norm(v, axis=1)[:, None]
    return v


def sigma_infinity_probe(sym, lam, radii, dirs=64, bound_C=1e3):
    """Shell test for ``lam`` being an eigenvalue at infinity.

    Samples sigma_min(P(w) - lam) on spheres |w| = r for increasing
    radii.  ``lam`` is declared attained at infinity when the defect on
    the outermost shells fails to stay above 1/bound_C, i.e. when the
    uniform-resolvent criterion at infinity is violated on the sample.
    """
    radii = [float(r) for r in radii]
    if not radii or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be a non-empty increasing list")
    D = dirs if isinstance(dirs, np.ndarray) else _sphere_dirs(2 * sym.n, int(dirs))
    if D.size == 0:
        raise ValueError("empty shell sample")
    I = np.eye(sym.N)
    shell_min = []
    for r in radii:
        best = np.inf
        for d in D:
            P = sym.eval(PhasePoint.from_w(r * d))
            best = min(best, sla.svdvals(P - lam * I)[-1])
        shell_min.append(best)
    outer = shell_min[-2:] if len(shell_min) >= 2 else shell_min
    in_inf = bool(min(outer) < 1.0 / bound_C)
    return {"in_sigma_inf": in_inf, "min_defect": float(min(shell_min)),
            "shell_min": [float(v) for v in shell_min]}


def _point_clusters(eigs, tol_abs):
    """Group eigenvalues into clusters of mutual distance <= tol_abs.

    Returns list of (center, multiplicity), sorted by (re, im).
    """
    order = np.lexsort((eigs.imag, eigs.real))
    clusters = []
    for j in order:
        lam = eigs[j]
        for c in clusters:
            if abs(lam - c[0] / c[1]) <= tol_abs:
                c[0] += lam
                c[1] += 1
                break
        else:
            clusters.append([lam, 1])
    out = [(c[0] / c[1], c[1]) for c in clusters]
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


@dataclass
class XiClassification:
    """Output of ``xi_classify``: flagged variety points and projections."""

    xi_points: list           # list of (PhasePoint, complex) flagged into Xi
    sigma_ws: np.ndarray      # eigenvalue projection of the flagged set
    sigma_ss: np.ndarray      # values whose whole grid fiber is flagged
    indeterminate: list       # (PhasePoint, complex) with ambiguous tracking


def xi_classify(sym, grid, tol_cluster=DEFAULT_TOL_CLUSTER, tol_rank=DEFAULT_TOL_RANK):
    """Flag multiplicity-jump points of the eigenvalue variety on a grid.

    A variety point (w, lam) is flagged when its algebraic multiplicity
    differs from that of the tracked eigenvalue at a grid neighbor; the
    heuristic assumes the grid is fine enough that the multiplicity is
    constant between adjacent unflagged points.  ``sigma_ws`` collects
    the eigenvalues of flagged points; ``sigma_ss`` the values whose
    entire sampled fiber is flagged (a per-window verdict only).
    """
    grid_pts = {}
    for idx in grid.indices():
        w = grid.point(idx)
        P = sym.eval(w)
        scale = 1.0 + np.linalg.norm(P, 2)
        eigs = np.linalg.eigvals(P)
        grid_pts[idx] = (w, eigs, _point_clusters(eigs, tol_cluster * scale),
                         tol_cluster * scale)

    flagged, indet = [], []
    flags = {}
    for idx, (w, eigs, clusters, tol_abs) in grid_pts.items():
        for ci, (lam, mult) in enumerate(clusters):
            is_flagged = False
            ambiguous = False
            for nb in grid.neighbors(idx):
                _, _, nb_clusters, nb_tol = grid_pts[nb]
                d = np.array([abs(lam - c[0]) for c in nb_clusters])
                reach = d.min() + max(tol_abs, nb_tol)
                tied_mults = {nb_clusters[j][1] for j in range(len(d)) if d[j] <= reach}
                if len(tied_mults) > 1:
                    # the tracked eigenvalue could continue into branches
                    # of different multiplicity: genuinely ambiguous
                    ambiguous = True
                    continue
                if tied_mults.pop() != mult:
                    is_flagged = True
            flags[(idx, ci)] = is_flagged
            if is_flagged:
                flagged.append((w, lam))
            if ambiguous and not is_flagged:
                indet.append((w, lam))

    sigma_ws = np.array([lam for _, lam in flagged], dtype=complex)
    # strongly singular candidates: flagged values whose whole sampled
    # fiber Sigma_lam consists of flagged points
    ss = []
    for _, lam0 in flagged:
        all_flagged = True
        for idx, (w, eigs, clusters, tol_abs) in grid_pts.items():
            for ci, (lam, mult) in enumerate(clusters):
                if abs(lam - lam0) <= tol_abs and not flags[(idx, ci)]:
                    all_flagged = False
                    break
            if not all_flagged:
                break
        if all_flagged:
            ss.append(lam0)
    sigma_ss = np.array(sorted(set(np.round(np.array(ss, dtype=complex), 12)),
                               key=lambda z: (z.real, z.imag)), dtype=complex)
    return XiClassification(flagged, sigma_ws, sigma_ss, indet)


@dataclass
class EigGerm:
    """A tracked local eigenvalue branch lam(w) on a grid patch."""

    symbol: MatrixSymbol
    anchor_w: PhasePoint
    anchor_lambda: complex
    grid: PhaseGrid
    values: np.ndarray        # complex, shape grid.shape, NaN where not tracked
    valid: bool
    failure_at: object = None   # offending PhasePoint when invalid

    def value_at(self, idx):
        return self.values[idx]

    def eval(self, w, steps=8):
        """Continue the branch from the nearest tracked sample to ``w``."""
        idx = self.grid.nearest_index(np.asarray(w.w if isinstance(w, PhasePoint) else w))
        lam = self.values[idx]
        w0 = self.grid.w_at(idx)
        w1 = np.asarray(w.w if isinstance(w, PhasePoint) else w, dtype=float)
        for k in range(1, steps + 1):
            wk = w0 + (w1 - w0) * (k / steps)
            eigs = np.linalg.eigvals(self.symbol.eval(PhasePoint.from_w(wk)))
            lam = eigs[np.argmin(np.abs(eigs - lam))]
        return complex(lam)

    def partial(self, w, coord, step=None):
        """Central-difference partial derivative of the branch."""
        if step is None:
            step = 1e-4 * (1.0 + float(np.linalg.norm(np.asarray(w.w))))
        d = np.zeros(2 * self.symbol.n)
        d[coord] = 1.0
        wp = w.shifted(step * d)
        wm = w.shifted(-step * d)
        return (self.eval(wp) - self.eval(wm)) / (2 * step)


def germ_track(sym, w0, lambda0, patch, tol_cluster=DEFAULT_TOL_CLUSTER, order="ring"):
    """Track the eigenvalue branch through a grid patch.

    Starts from the patch point nearest ``w0`` and continues outward by
    nearest-eigenvalue matching in grid-adjacency order.  Any step at
    which the two nearest eigenvalues are within the clustering
    tolerance of each other marks the germ invalid, with the offending
    point recorded.

    ``order`` selects the sweep: "ring" (breadth-first from the
    anchor), "rows" or "cols" (lexicographic passes); all orders agree
    away from the singular set, which is a tested property.
    """
    if not isinstance(w0, PhasePoint):
        w0 = PhasePoint.from_w(w0)
    shape = patch.shape
    values = np.full(shape, np.nan + 0j, dtype=complex)
    start = patch.nearest_index(w0.w)

    eigcache = {}

    def eigs_at(idx):
        if idx not in eigcache:
            P = sym.eval(patch.point(idx))
            eigcache[idx] = (np.linalg.eigvals(P), 1.0 + np.linalg.norm(P, 2))
        return eigcache[idx]

    eigs, scale = eigs_at(start)
    j = int(np.argmin(np.abs(eigs - lambda0)))
    values[start] = eigs[j]
    valid = True
    failure_at = None

    if order == "ring":
        seq = sorted(patch.indices(),
                     key=lambda idx: (max(abs(a - b) for a, b in zip(idx, start)), idx))
    elif order == "rows":
        seq = sorted(patch.indices())
    elif order == "cols":
        seq = sorted(patch.indices(), key=lambda idx: tuple(reversed(idx)))
    else:
        raise ValueError("order must be 'ring', 'rows' or 'cols'")

    for idx in seq:
        if idx == start:
            continue
        refs = [values[nb] for nb in patch.neighbors(idx) if not np.isnan(values[nb])]
        if not refs:
            refs = [values[start]]
        ref = refs[0]
        eigs, scale = eigs_at(idx)
        d = np.abs(eigs - ref)
        o = np.argsort(d)
        lam = eigs[o[0]]
        if len(o) > 1:
            second = eigs[o[1]]
            if abs(second - lam) > 1e-14 * scale and d[o[1]] - d[o[0]] <= tol_cluster * scale:
                valid = False
                failure_at = failure_at or patch.point(idx)
        values[idx] = lam

    germ = EigGerm(sym, w0, complex(values[start]), patch, values, valid, failure_at)
    return germ


def elsner_check(A, B, slack=1e-9):
    """Eigenvalue matching distance against the perturbation bound.

    dist is the minimum over permutations of the max eigenvalue
    mismatch; bound is N (2 max(|A|,|B|))^{1-1/N} |A-B|^{1/N} in the
    spectral norm.  Brute-force matching, so N <= 6.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A and B must be square matrices of equal size")
    N = A.shape[0]
    if N > 6:
        raise ValueError("permutation matching limited to N <= 6")
    a = np.linalg.eigvals(A)
    b = np.linalg.eigvals(B)
    dist = min(max(abs(a[i] - b[p[i]]) for i in range(N))
               for p in itertools.permutations(range(N)))
    na, nb = np.linalg.norm(A, 2), np.linalg.norm(B, 2)
    diff = np.linalg.norm(A - B, 2)
    bound = N * (2.0 * max(na, nb)) ** (1.0 - 1.0 / N) * diff ** (1.0 / N)
    return {"dist": float(dist), "bound": float(bound), "holds": bool(dist <= bound + slack)}


def moebius_reduce(sym, z1, z2, tol=1e-12):
    """Bounded reduction Q(w) = (P(w) - z1)^{-1} (P(w) - z2).

    Returns the reduced symbol together with the Moebius map
    ``zeta -> (zeta z1 - z2) / (zeta - 1)`` relating the two resolvent
    families.  Evaluation raises a conditioning error when P(w) - z1
    is numerically singular.
    """
    z1, z2 = complex(z1), complex(z2)
    I = np.eye(sym.N)

    def f(w):
        P = sym.eval(w)
        A = P - z1 * I
        sv = sla.svdvals(A)
        if sv[-1] <= tol * max(1.0, sv[0]):
            raise ConditioningError(f"P(w) - z1 numerically singular at w={w.w}", where=w)
        return np.linalg.solve(A, P - z2 * I)

    def zeta_map(zeta):
        zeta = complex(zeta)
        if zeta == 1.0:
            raise ZeroDivisionError("Moebius map degenerate at zeta = 1")
        return (zeta * z1 - z2) / (zeta - 1.0)

    Q = MatrixSymbol(n=sym.n, N=sym.N, func=f, bounded=True,
                     name=(sym.name + "~moebius") if sym.name else "moebius")
    return Q, zeta_map


def moebius_identity_defect(sym, z1, z2, zeta, w):
    """Relative defect of the resolvent identity linking P and Q at w."""
    Q, zmap = moebius_reduce(sym, z1, z2)
    zeta = complex(zeta)
    I = np.eye(sym.N)
    P = sym.eval(w)
    lhs = np.linalg.inv(Q.eval(w) - zeta * I)
    rhs = (P - z1 * I) @ np.linalg.inv(P - zmap(zeta) * I) / (1.0 - zeta)
    return float(np.linalg.norm(lhs - rhs, 2) / max(1.0, np.linalg.norm(lhs, 2)))


# --- smooth windowing helpers -------------------------------------------

def smooth_step(u):
    """C-infinity monotone step: 0 for u <= 0, 1 for u >= 1."""
    u = np.asarray(u, dtype=float)

    def g(t):
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            return np.where(t > 0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)

    gu, gv = g(u), g(1.0 - u)
    return gu / (gu + gv)


def saturating_coordinate(L, free_frac=0.5, flat_frac=0.875, sat_frac=0.75):
    """Smooth odd map equal to x on |x| <= free_frac*L and constant
    (= sat_frac*L) for |x| >= flat_frac*L.

    Composing an unbounded coefficient with this map flattens it near
    the torus seam while leaving the dynamics inside the window
    untouched; doubling L is the standard inertness check.
    """
    x0, x1, xs = free_frac * L, flat_frac * L, sat_frac * L

    def c(x):
        x = np.asarray(x, dtype=float)
        a = np.abs(x)
        s = smooth_step((a - x0) / (x1 - x0))
        inner = np.minimum(a, x1)
        val = inner * (1 - s) + xs * s
        # keep the map monotone by blending toward the saturation value
        return np.sign(x) * np.where(a <= x0, a, val)

    return c
