"""Standard-form transform, center manifold, and first Lyapunov coefficient.

The pipeline: eigenbasis change to the real block form, quadratic center
manifold from the homological system, then the classical 16-term planar
formula for sigma.  An independent projection-method oracle (complex
eigenvector, multilinear forms, two bordered solves) cross-checks the
sign and magnitude; the two algorithms share nothing but the Taylor
coefficients of the field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._series import TriPoly, apply_basis, linear_basis
from .errors import IllConditioned, ResonanceError
from .model import ExpansionCoeffs, ModelParams, asymmetry, expand_at_equilibrium
from .spectral import SpectralReport, jacobian_positive, solve_cubic, spectral_report

__all__ = [
    "StandardForm",
    "CenterManifold",
    "HopfCase",
    "HopfReport",
    "to_standard_form",
    "center_manifold",
    "first_lyapunov",
    "lyapunov_oracle",
    "classify_hopf",
    "analyze_hopf",
]

DEGENERACY_FLOOR = 1e-14
COND_LIMIT = 1e8
ORACLE_LOCUS_RATIO = 0.5


class HopfCase(Enum):
    CASE1_SUPERCRITICAL_STABLE3RD = "case-1"
    CASE2 = "case-2"
    CASE3_SUBCRITICAL = "case-3"
    CASE4 = "case-4"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class StandardForm:
    """Block coordinates at the equilibrium.

    M1 columns are (Re v, -Im v, u) where v belongs to the +i*omega0
    pair member and u to the real eigenvalue a0; both eigenvectors carry
    their largest-magnitude component normalized to exactly 1 (this
    choice fixes sigma's magnitude, never its sign).  mu_re is the real
    part of the complex pair, exactly 0 only on the bifurcation locus;
    f, g, h are the nonlinear parts of the transformed field.
    """

    M1: np.ndarray
    omega0: float
    a0: float
    mu_re: float
    f: TriPoly
    g: TriPoly
    h: TriPoly

    @property
    def fgh(self) -> tuple[TriPoly, TriPoly, TriPoly]:
        return self.f, self.g, self.h


@dataclass(frozen=True)
class CenterManifold:
    """w = theta u^2 + kappa u v + iota v^2 locally at the equilibrium."""

    theta: float
    kappa: float
    iota: float


@dataclass(frozen=True)
class HopfReport:
    sigma: float
    lambda3: float
    case: HopfCase
    omega0: float | None
    eta_yz: float
    eta_zy: float


def _nonlinear_rows(coeffs: ExpansionCoeffs) -> tuple[TriPoly, TriPoly, TriPoly]:
    """Quadratic-and-up part of the shifted field as coefficient cubes.

    Exponent map mirrors the expansion layout; the two degree-5 source
    monomials (x^4 y, x^4 z) cannot reach degree 4 after a linear change
    of variables and are dropped by the truncation.
    """
    b, c, d = coeffs.b_vec, coeffs.c_vec, coeffs.d_vec
    n1 = TriPoly.from_terms(
        [
            ((2, 0, 0), b[1]), ((3, 0, 0), b[2]), ((4, 0, 0), b[3]),
            ((1, 1, 0), b[6]), ((2, 1, 0), b[7]), ((3, 1, 0), b[8]),
            ((1, 0, 1), b[10]), ((2, 0, 1), b[11]), ((3, 0, 1), b[12]),
        ]
    )
    n2 = TriPoly.from_terms(
        [
            ((2, 0, 0), c[2]), ((3, 0, 0), c[3]), ((4, 0, 0), c[4]),
            ((1, 1, 0), c[5]), ((2, 1, 0), c[6]), ((3, 1, 0), c[7]),
            ((0, 1, 1), c[10]),
        ]
    )
    n3 = TriPoly.from_terms(
        [
            ((2, 0, 0), d[2]), ((3, 0, 0), d[3]), ((4, 0, 0), d[4]),
            ((1, 0, 1), d[6]), ((2, 0, 1), d[7]), ((3, 0, 1), d[8]),
            ((0, 1, 1), d[10]),
        ]
    )
    return n1, n2, n3


def _null_vector(A: np.ndarray) -> np.ndarray:
    """Best cross-product null vector of a (near) rank-2 3x3 matrix."""
    candidates = [
        np.cross(A[0], A[1]),
        np.cross(A[0], A[2]),
        np.cross(A[1], A[2]),
    ]
    norms = [np.linalg.norm(v) for v in candidates]
    best = int(np.argmax(norms))
    if norms[best] == 0.0:
        raise IllConditioned("eigenvector extraction failed: all row crosses vanish")
    return candidates[best]


def _normalize_leading(v: np.ndarray) -> np.ndarray:
    idx = int(np.argmax(np.abs(v)))
    return v / v[idx]


def to_standard_form(
    coeffs: ExpansionCoeffs, spec: SpectralReport
) -> StandardForm:
    """Change variables so the linear part is the rotation/real block matrix.

    Requires a complex-conjugate eigenvalue pair in the report.  On the
    bifurcation locus the block is exactly ((0,-w,0),(w,0,0),(0,0,a0));
    off the locus the rotation block picks up the pair's real part on
    its diagonal, which the downstream center-manifold solve accounts
    for.
    """
    if spec.omega0 is None:
        raise ValueError("standard form needs a complex eigenvalue pair")
    lam = complex(spec.roots[0])
    a0 = float(spec.lambda3)
    J = jacobian_positive(coeffs)

    v = _normalize_leading(_null_vector(J.astype(complex) - lam * np.eye(3)))
    u = _normalize_leading(_null_vector(J - a0 * np.eye(3)))

    M1 = np.column_stack([v.real, -v.imag, u.real])
    cond = np.linalg.cond(M1)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise IllConditioned(
            f"eigenbasis condition number {cond:.3e} exceeds {COND_LIMIT:.0e}"
        )

    f, g, h = _transformed_field(coeffs, M1)
    return StandardForm(
        M1=M1, omega0=float(spec.omega0), a0=a0, mu_re=lam.real, f=f, g=g, h=h
    )


def _transformed_field(
    coeffs: ExpansionCoeffs, M1: np.ndarray
) -> tuple[TriPoly, TriPoly, TriPoly]:
    """Nonlinear rows pushed through x = M1 (u, v, w), then M1^-1-combined."""
    n1, n2, n3 = _nonlinear_rows(coeffs)
    basis = linear_basis(M1)
    t1, t2, t3 = (apply_basis(p, basis) for p in (n1, n2, n3))
    Minv = np.linalg.inv(M1)
    f = t1.scale(Minv[0, 0]) + t2.scale(Minv[0, 1]) + t3.scale(Minv[0, 2])
    g = t1.scale(Minv[1, 0]) + t2.scale(Minv[1, 1]) + t3.scale(Minv[1, 2])
    h = t1.scale(Minv[2, 0]) + t2.scale(Minv[2, 1]) + t3.scale(Minv[2, 2])
    return f, g, h


def center_manifold(sf: StandardForm) -> CenterManifold:
    """Quadratic graph coefficients from the homological 3x3 system.

    Matching u^2, uv, v^2 in
    H_u (mu u - w v + f) + H_v (w u + mu v + g) = a0 H + h
    gives a linear system with determinant s (s^2 + 4 w^2), s = 2 mu - a0;
    it degenerates only when a0 = 2 mu (on-locus: a0 = 0).
    """
    w = sf.omega0
    s = 2.0 * sf.mu_re - sf.a0
    det = s * (s * s + 4.0 * w * w)
    # the matrix entries live on the w scale, so singularity is relative
    # to w^3; a near-zero-Hopf point (|s| << w) stays solvable in floats
    if abs(det) <= 1e-12 * w ** 3:
        raise ResonanceError(
            f"center-manifold system is singular (s={s:.3e}, omega0={w:.3e})"
        )
    A = np.array(
        [
            [s, w, 0.0],
            [-2.0 * w, s, 2.0 * w],
            [0.0, -w, s],
        ]
    )
    rhs = np.array([sf.h.coeff(2, 0, 0), sf.h.coeff(1, 1, 0), sf.h.coeff(0, 2, 0)])
    theta, kappa, iota = np.linalg.solve(A, rhs)
    return CenterManifold(theta=float(theta), kappa=float(kappa), iota=float(iota))


def first_lyapunov(sf: StandardForm, cm: CenterManifold) -> float:
    """Sixteen-term planar Hopf coefficient on the center manifold.

    The restriction F(u,v) = f(u, v, H(u, v)) (and likewise G) is formed
    by exact polynomial substitution; the partial derivatives below are
    coefficient reads, so the only rounding is in the arithmetic itself.
    """
    H = TriPoly.from_terms(
        [((2, 0, 0), cm.theta), ((1, 1, 0), cm.kappa), ((0, 2, 0), cm.iota)]
    )
    F = sf.f.substitute_w(H)
    G = sf.g.substitute_w(H)

    f_uu = 2.0 * F.coeff(2, 0, 0)
    f_uv = F.coeff(1, 1, 0)
    f_vv = 2.0 * F.coeff(0, 2, 0)
    g_uu = 2.0 * G.coeff(2, 0, 0)
    g_uv = G.coeff(1, 1, 0)
    g_vv = 2.0 * G.coeff(0, 2, 0)
    f_uuu = 6.0 * F.coeff(3, 0, 0)
    f_uvv = 2.0 * F.coeff(1, 2, 0)
    g_uuv = 2.0 * G.coeff(2, 1, 0)
    g_vvv = 6.0 * G.coeff(0, 3, 0)

    quad = (
        f_uv * (f_uu + f_vv)
        - f_uu * g_uu
        + f_vv * g_vv
        - g_uv * (g_uu + g_vv)
    )
    cubic = f_uuu + f_uvv + g_uuv + g_vvv
    return quad / (16.0 * sf.omega0) + cubic / 16.0


def _bilinear(coeffs: ExpansionCoeffs):
    """Hessian form B(x, y) of the shifted field, one component per row."""
    b, c, d = coeffs.b_vec, coeffs.c_vec, coeffs.d_vec

    def B(x, y):
        return np.array(
            [
                2.0 * b[1] * x[0] * y[0]
                + b[6] * (x[0] * y[1] + x[1] * y[0])
                + b[10] * (x[0] * y[2] + x[2] * y[0]),
                2.0 * c[2] * x[0] * y[0]
                + c[5] * (x[0] * y[1] + x[1] * y[0])
                + c[10] * (x[1] * y[2] + x[2] * y[1]),
                2.0 * d[2] * x[0] * y[0]
                + d[6] * (x[0] * y[2] + x[2] * y[0])
                + d[10] * (x[1] * y[2] + x[2] * y[1]),
            ]
        )

    return B


def _trilinear(coeffs: ExpansionCoeffs):
    """Third-derivative form C(x, y, z) of the shifted field."""
    b, c, d = coeffs.b_vec, coeffs.c_vec, coeffs.d_vec

    def C(x, y, z):
        sxxy = x[0] * y[0] * z[1] + x[0] * y[1] * z[0] + x[1] * y[0] * z[0]
        sxxz = x[0] * y[0] * z[2] + x[0] * y[2] * z[0] + x[2] * y[0] * z[0]
        xxx = x[0] * y[0] * z[0]
        return np.array(
            [
                6.0 * b[2] * xxx + 2.0 * b[7] * sxxy + 2.0 * b[11] * sxxz,
                6.0 * c[3] * xxx + 2.0 * c[6] * sxxy,
                6.0 * d[3] * xxx + 2.0 * d[7] * sxxz,
            ]
        )

    return C


def _l1_projection(A: np.ndarray, lam: complex, q: np.ndarray, B, C) -> float:
    """Projection-method first Lyapunov quantity for eigenpair (lam, q).

    q must already carry the leading-component normalization; p is the
    adjoint eigenvector scaled so <p, q> = 1.  The quadratic corrections
    are resolvent solves at 2 Re(lam) and 2 lam; with lam = i w0 these
    reduce to the classical bordered solves, and a nonzero real part
    keeps the formula continuous across the locus.
    """
    omega0 = lam.imag
    p = _null_vector(A.T.astype(complex) - np.conj(lam) * np.eye(3))
    p = p / np.vdot(p, q).conjugate()

    try:
        h11 = np.linalg.solve(
            2.0 * lam.real * np.eye(3) - A, B(q, np.conj(q))
        )
        h20 = np.linalg.solve(2.0 * lam * np.eye(3) - A, B(q, q))
    except np.linalg.LinAlgError as exc:
        raise ResonanceError("resolvent solve singular at 2 Re(lam)") from exc

    inner = (
        np.vdot(p, C(q, q, np.conj(q)))
        + 2.0 * np.vdot(p, B(q, h11))
        + np.vdot(p, B(np.conj(q), h20))
    )
    return inner.real / (2.0 * omega0)


def lyapunov_oracle(phi: ModelParams) -> float:
    """Independent sigma via eigenvector projection on the full 3-D field.

    Exact on the bifurcation locus and continuous across it; a pair real
    part beyond half the angular frequency means the point is nowhere
    near a Hopf crossing and is rejected.
    """
    coeffs = expand_at_equilibrium(phi)
    A = jacobian_positive(coeffs)
    rep = spectral_report(A)
    if rep.omega0 is None:
        raise ValueError("no complex eigenvalue pair at the equilibrium")
    lam = complex(rep.roots[0])
    if abs(lam.real) > ORACLE_LOCUS_RATIO * lam.imag:
        raise ValueError(
            f"pair real part {lam.real:.3e} is not small against the "
            f"frequency {lam.imag:.3e}: not a near-Hopf point"
        )
    q = _normalize_leading(
        _null_vector(A.astype(complex) - lam * np.eye(3))
    )
    l1 = _l1_projection(A, lam, q, _bilinear(coeffs), _trilinear(coeffs))
    return float(rep.omega0) * l1 / 4.0


def classify_hopf(
    sigma: float, lambda3: float, phi: ModelParams, omega0: float | None = None
) -> HopfReport:
    """Sign-pair case table with the competition asymmetry attached."""
    eta_yz, eta_zy = asymmetry(phi)
    if abs(sigma) <= DEGENERACY_FLOOR:
        case = HopfCase.DEGENERATE
    elif sigma < 0:
        case = (
            HopfCase.CASE1_SUPERCRITICAL_STABLE3RD
            if lambda3 < 0
            else HopfCase.CASE2
        )
    else:
        case = HopfCase.CASE3_SUBCRITICAL if lambda3 > 0 else HopfCase.CASE4
    return HopfReport(
        sigma=sigma,
        lambda3=lambda3,
        case=case,
        omega0=omega0,
        eta_yz=eta_yz,
        eta_zy=eta_zy,
    )


def analyze_hopf(phi: ModelParams) -> HopfReport:
    """Full pipeline at the interior equilibrium of phi."""
    coeffs = expand_at_equilibrium(phi)
    rep = spectral_report(jacobian_positive(coeffs))
    sf = to_standard_form(coeffs, rep)
    cm = center_manifold(sf)
    sigma = first_lyapunov(sf, cm)
    return classify_hopf(sigma, float(rep.lambda3), phi, omega0=sf.omega0)
