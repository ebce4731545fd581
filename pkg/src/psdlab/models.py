"""Built-in model symbols used by the scenario registry, tests and demos.

Each builder returns a ``MatrixSymbol`` (plus lower-order terms where
the model is genuinely an h-expansion).  Unbounded coefficients are
composed with the smooth saturating coordinate for the window
half-length ``L``, so the quantized operators live on a torus with an
inert seam; doubling L is the standard inertness check.
"""

import numpy as np

from .symbols import MatrixSymbol, saturating_coordinate, smooth_step

__all__ = [
    "windowed", "jordan_block_symbol", "symmetric_three_param",
    "symmetric_two_param", "triangular_pair", "degenerate_crossing",
    "davies_symbol", "davies_power_symbol", "oscillator_pair_symbol",
    "shear_pair_terms", "index_defect_terms", "crossed_multiplier_model",
    "schrodinger_symbol", "flat_damping_symbol", "two_branch_kernel_path",
    "two_branch_split_path", "two_branch_kernel_symbol",
    "two_branch_split_symbol", "drift_pair_symbol",
]


def windowed(f, L):
    """Compose a scalar coefficient with the saturating coordinate."""
    c = saturating_coordinate(L)
    return lambda x: f(float(c(x)))


def jordan_block_symbol():
    """Nilpotent frequency shear: eigenvalues identically zero, yet
    every complex number is attained in the limit along large |xi|."""
    return MatrixSymbol(
        n=1, N=2,
        func=lambda w: np.array([[0.0, w.xi[0]], [0.0, 0.0]], dtype=complex),
        known_sigma_inf=("C",), bounded=False, name="jordan-shear")


def symmetric_three_param():
    """Symmetric pencil in three parameters (coords x1, x2, xi1);
    eigenvalues w1 +/- sqrt(w2^2 + w3^2) coincide on the w1-axis."""
    def f(w):
        w1, w2, w3 = w.x[0], w.x[1], w.xi[0]
        return np.array([[w1 + w2, w3], [w3, w1 - w2]], dtype=complex)
    return MatrixSymbol(n=2, N=2, func=f, hermitian=True, bounded=False,
                        name="symmetric-3param")


def symmetric_two_param():
    """Planar restriction of the symmetric pencil: eigenvalues +/- |w|."""
    def f(w):
        w1, w2 = w.x[0], w.xi[0]
        return np.array([[w1, w2], [w2, -w1]], dtype=complex)
    return MatrixSymbol(n=1, N=2, func=f, hermitian=True, bounded=False,
                        name="symmetric-2param")


def triangular_pair():
    """Upper-triangular pair with eigenvalues x and xi; the Jordan
    coupling makes every coincidence point non-principal-type."""
    def f(w):
        return np.array([[w.x[0], 1.0], [0.0, w.xi[0]]], dtype=complex)
    return MatrixSymbol(n=1, N=2, func=f, bounded=False, name="triangular-pair")


def degenerate_crossing():
    """Symmetric symbol of principal type exactly at the origin and
    not on the rest of the w2-axis."""
    def f(w):
        w1, w2 = w.x[0], w.xi[0]
        return np.array([[w1 - w2, w2], [w2, -w1 - w2]], dtype=complex)
    return MatrixSymbol(n=1, N=2, func=f, hermitian=True, bounded=False,
                        name="degenerate-crossing")


def davies_symbol(L=8.0, power=2):
    """Scalar shifted-derivative-plus-damping model xi + i t^power."""
    f = windowed(lambda t: t ** power, L)
    return MatrixSymbol.from_xi_poly(
        [lambda x: 1j * f(x), lambda x: 1.0],
        name=f"davies-t{power}")


def davies_power_symbol(L=8.0, power=6):
    return davies_symbol(L, power=power)


def oscillator_pair_symbol(L=8.0, a1=None, a2=None):
    """Self-adjoint oscillator pair [[xi + a1, a2 - i a1], [a2 + i a1, -xi + a1]].

    With a1 = 0, a2 = t it carries an exact zero mode, so the shifted
    inverse at 0 exceeds any desk-scale bound even though the
    eigenvalue family is real.
    """
    a1 = a1 or (lambda t: 0.0)
    a2 = a2 or (lambda t: t)
    a1w, a2w = windowed(a1, L), windowed(a2, L)

    def a0(x):
        v1, v2 = a1w(x), a2w(x)
        return np.array([[v1, v2 - 1j * v1], [v2 + 1j * v1, v1]], dtype=complex)

    return MatrixSymbol.from_xi_poly(
        [a0, lambda x: np.diag([1.0, -1.0]).astype(complex)],
        hermitian=True, name="oscillator-pair")


def shear_pair_terms(L=8.0, a=None):
    """Nilpotent shear with an order-h return coupling:
    principal [[xi, a(t)], [0, xi]], lower term [[0, 0], [-a(t), 0]]."""
    a = a or (lambda t: t)
    aw = windowed(a, L)
    main = MatrixSymbol.from_xi_poly(
        [lambda x: np.array([[0.0, aw(x)], [0.0, 0.0]], dtype=complex),
         lambda x: np.eye(2, dtype=complex)],
        name="shear-pair")
    lower = MatrixSymbol.from_xi_poly(
        [lambda x: np.array([[0.0, 0.0], [-aw(x), 0.0]], dtype=complex)],
        name="shear-pair-lower")
    return main, [(1, lower)]


def index_defect_terms(L=8.0, a=None):
    """Rank-degenerate pencil [[1, hD], [h, i h a(t)]]: eigenvalues of
    the principal symbol are 0 and 1, yet the inverse blows up."""
    a = a or (lambda t: t)
    aw = windowed(a, L)
    main = MatrixSymbol.from_xi_poly(
        [lambda x: np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex),
         lambda x: np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)],
        name="index-defect")
    lower = MatrixSymbol.from_xi_poly(
        [lambda x: np.array([[0.0, 0.0], [1.0, 1j * aw(x)]], dtype=complex)],
        name="index-defect-lower")
    return main, [(1, lower)]


def crossed_multiplier_model():
    """Three-parameter symbol quasi-symmetrizable with the off-diagonal
    swap as multiplier: Q = M P has dQ/dw1 = Id and Im Q = 0."""
    def f(w):
        w1, w2, w3 = w.x[0], w.x[1], w.xi[0]
        return np.array([[w2 + 1j * w3, w1], [w1, w2 - 1j * w3]], dtype=complex)
    P = MatrixSymbol(n=2, N=2, func=f, bounded=False, name="crossed-multiplier")
    M = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    return P, M


def kappa_saturating(x):
    """Damping profile x^2/(1+x^2): order-2 zero at the origin, level 1
    at infinity."""
    return x * x / (1.0 + x * x)


def schrodinger_symbol(L=4.0, kappa=None):
    """Semiclassical Schroedinger pair (hD)^2 Id2 + i kappa(x) Id2."""
    kap = windowed(kappa or kappa_saturating, L)
    return MatrixSymbol.from_xi_poly(
        [lambda x: 1j * kap(x) * np.eye(2),
         lambda x: np.zeros((2, 2)),
         lambda x: np.eye(2, dtype=complex)],
        name="schrodinger-pair")


def flat_damping_symbol(L=4.0, level=0.8):
    """Schroedinger pair whose damping vanishes on a whole interval:
    the inverse at real z > 0 then saturates the 1/h rate."""
    c = saturating_coordinate(L)

    def kap(x):
        return float(smooth_step(abs(float(c(x))) - 1.0)) * level

    return MatrixSymbol.from_xi_poly(
        [lambda x: 1j * kap(x) * np.eye(2),
         lambda x: np.zeros((2, 2)),
         lambda x: np.eye(2, dtype=complex)],
        name="flat-damping-pair")


def two_branch_kernel_path(t):
    """Rank-one PSD path [[t^2, t^3], [t^3, t^4]]: a smooth section of
    its kernel exists, so sublevel sets fill every window."""
    return np.array([[t ** 2, t ** 3], [t ** 3, t ** 4]], dtype=complex)


def two_branch_split_path(t):
    """Element-wise higher-order perturbation of the rank-one path,
    congruent to diag(t^2, t^6): genuinely finite type of order 1/6."""
    B = np.array([[1.0, t], [-t, 1.0]])
    return (B.T @ np.diag([t ** 2, t ** 6]) @ B).astype(complex)


def two_branch_kernel_symbol(L=8.0):
    c = saturating_coordinate(L)
    return MatrixSymbol.from_xi_poly(
        [lambda x: 1j * two_branch_kernel_path(float(c(x))),
         lambda x: np.eye(2, dtype=complex)],
        name="two-branch-kernel")


def two_branch_split_symbol(L=8.0):
    c = saturating_coordinate(L)
    return MatrixSymbol.from_xi_poly(
        [lambda x: 1j * two_branch_split_path(float(c(x))),
         lambda x: np.eye(2, dtype=complex)],
        name="two-branch-split")


def drift_pair_symbol(alpha, beta):
    """Two decoupled drifts with a squared-distance damping:
    tau Id2 + alpha diag(xi, -xi) + i (t - beta x)^2 Id2 on n = 2.

    Coordinates: (t, x; tau, xi).  The invariant-subbundle test on
    {tau = 0} passes exactly when alpha = 0.
    """
    def f(w):
        t, x = w.x
        tau, xi = w.xi
        base = tau * np.eye(2) + alpha * np.diag([xi, -xi])
        return base.astype(complex) + 1j * (t - beta * x) ** 2 * np.eye(2)
    return MatrixSymbol(n=2, N=2, func=f, bounded=False,
                        name=f"drift-pair-a{alpha}-b{beta}")
