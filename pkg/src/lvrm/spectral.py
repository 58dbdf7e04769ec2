"""Linearization and spectral classification at the equilibria.

The characteristic polynomial is assembled from matrix invariants
(trace, principal minors, determinant); root extraction goes through
the shared backward-stable cubic solver.  Oscillatory and zero-root
loci are detected through residuals on the coefficients and refined by
one-parameter bracketing along a ray in parameter space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._cubic import solve_monic_cubic
from .errors import IllConditioned, NotBracketed
from .model import (
    ExpansionCoeffs,
    ModelParams,
    expand_at_equilibrium,
)

__all__ = [
    "CharPoly",
    "Classification",
    "SpectralReport",
    "jacobian_origin",
    "jacobian_positive",
    "charpoly",
    "solve_cubic",
    "hopf_residuals",
    "classify",
    "spectral_report",
    "spectral_report_at",
    "hopf_locate",
]

TOL_HOPF = 1e-8
TOL_ZERO = 1e-8
LOCATE_TOL = 1e-10


class Classification(Enum):
    SADDLE_INDEX_1 = "saddle-index-1"
    STABLE_FOCUS_NODE = "stable-focus-node"
    UNSTABLE_FOCUS_NODE = "unstable-focus-node"
    HOPF_CANDIDATE = "hopf-candidate"
    ZERO_HOPF_CANDIDATE = "zero-hopf-candidate"
    OTHER = "other"


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial  L^3 + p_a L^2 + p_b L + p_c."""

    p_a: float
    p_b: float
    p_c: float

    def __call__(self, lam: complex) -> complex:
        return ((lam + self.p_a) * lam + self.p_b) * lam + self.p_c


@dataclass(frozen=True)
class SpectralReport:
    """Roots come complex-pair first (positive imaginary part leading),
    then real roots in ascending order.  omega0 and lambda3 are filled
    whenever the spectrum has a complex pair; omega0 is its imaginary
    part and lambda3 the lone real root."""

    roots: tuple[complex, complex, complex]
    classification: Classification
    omega0: float | None
    lambda3: float | None
    charpoly: CharPoly
    r_hopf: float


def jacobian_origin(phi: ModelParams) -> np.ndarray:
    """Jacobian at the washout state: diag(1, -mu, -nu)."""
    return np.diag([1.0, -phi.mu, -phi.nu])


def jacobian_positive(coeffs: ExpansionCoeffs) -> np.ndarray:
    """Jacobian at the interior equilibrium, assembled from the linear entries."""
    b1, b5, b6, c1, c2, c10, d1, d2, d6 = coeffs.delta
    return np.array(
        [
            [b1, b5, b6],
            [c2, c1, c10],
            [d2, d6, d1],
        ]
    )


def charpoly(J: np.ndarray) -> CharPoly:
    """Coefficients of det(L I - J) for a real 3x3 matrix.

    p_a = -trace, p_b = sum of principal 2x2 minors, p_c = -det.
    """
    J = np.asarray(J, dtype=float)
    if J.shape != (3, 3) or not np.all(np.isfinite(J)):
        raise ValueError("charpoly expects a finite 3x3 matrix")
    p_a = -(J[0, 0] + J[1, 1] + J[2, 2])
    m01 = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
    m02 = J[0, 0] * J[2, 2] - J[0, 2] * J[2, 0]
    m12 = J[1, 1] * J[2, 2] - J[1, 2] * J[2, 1]
    p_b = m01 + m02 + m12
    det = (
        J[0, 0] * m12
        - J[0, 1] * (J[1, 0] * J[2, 2] - J[1, 2] * J[2, 0])
        + J[0, 2] * (J[1, 0] * J[2, 1] - J[1, 1] * J[2, 0])
    )
    return CharPoly(p_a=p_a, p_b=p_b, p_c=-det)


def _root_order_key(lam: complex):
    # complex pair first, positive imaginary member leading; reals ascending
    return (0 if lam.imag > 0 else (1 if lam.imag < 0 else 2), lam.real, -lam.imag)


def solve_cubic(poly: CharPoly) -> tuple[complex, complex, complex]:
    """Roots of the characteristic polynomial in deterministic order."""
    roots = solve_monic_cubic(poly.p_a, poly.p_b, poly.p_c)
    return tuple(sorted(roots, key=_root_order_key))


def hopf_residuals(poly: CharPoly) -> tuple[float, tuple[float, float]]:
    """(r_hopf, (p_a, p_c)): distances to the two bifurcation loci.

    r_hopf = p_c - p_a p_b vanishes exactly when two roots sum to zero;
    with p_b > 0 those roots are +-i sqrt(p_b) and the third is -p_a.
    The pair (p_a, p_c) vanishes jointly, still with p_b > 0, when the
    spectrum is {0, +-i sqrt(p_b)}.
    """
    return poly.p_c - poly.p_a * poly.p_b, (poly.p_a, poly.p_c)


def _split_pair(roots) -> tuple[complex | None, float | None]:
    """(complex pair member with Im > 0, lone real root), if the spectrum
    has a conjugate pair; (None, None) for three real roots."""
    complexes = [r for r in roots if r.imag != 0]
    reals = [r for r in roots if r.imag == 0]
    if len(complexes) == 2 and len(reals) == 1:
        lead = complexes[0] if complexes[0].imag > 0 else complexes[1]
        return lead, reals[0].real
    return None, None


def classify(roots) -> Classification:
    """Root-based phase-portrait class of a hyperbolic or near-critical point."""
    pair, lam3 = _split_pair(roots)
    if pair is not None:
        if abs(pair.real) <= TOL_HOPF:
            if abs(lam3) <= TOL_ZERO:
                return Classification.ZERO_HOPF_CANDIDATE
            return Classification.HOPF_CANDIDATE

    reals = [r.real for r in roots]
    n_pos = sum(1 for v in reals if v > 0)
    n_neg = sum(1 for v in reals if v < 0)
    if n_neg == 3:
        return Classification.STABLE_FOCUS_NODE
    if n_pos == 3:
        return Classification.UNSTABLE_FOCUS_NODE
    if n_pos == 1 and n_neg == 2:
        return Classification.SADDLE_INDEX_1
    return Classification.OTHER


def spectral_report(J: np.ndarray) -> SpectralReport:
    """Full spectral summary of a 3x3 Jacobian."""
    poly = charpoly(J)
    roots = solve_cubic(poly)
    pair, lam3 = _split_pair(roots)
    r_hopf, _ = hopf_residuals(poly)
    return SpectralReport(
        roots=roots,
        classification=classify(roots),
        omega0=pair.imag if pair is not None else None,
        lambda3=lam3,
        charpoly=poly,
        r_hopf=r_hopf,
    )


def spectral_report_at(phi: ModelParams) -> SpectralReport:
    """Spectral summary at the interior equilibrium of phi."""
    return spectral_report(jacobian_positive(expand_at_equilibrium(phi)))


def _phi_on_ray(phi0: ModelParams, direction: np.ndarray, t: float) -> ModelParams:
    return ModelParams.from_array(phi0.as_array() + t * direction)


def _r_hopf_on_ray(phi0: ModelParams, direction: np.ndarray, t: float) -> float:
    poly = charpoly(jacobian_positive(expand_at_equilibrium(_phi_on_ray(phi0, direction, t))))
    return poly.p_c - poly.p_a * poly.p_b


def hopf_locate(
    phi0: ModelParams,
    direction,
    bracket: tuple[float, float],
    *,
    tol: float = LOCATE_TOL,
    max_iter: int = 200,
) -> tuple[ModelParams, float]:
    """Refine an oscillatory-instability crossing along phi0 + t * direction.

    r_hopf must change sign over the bracket and p_b must stay positive
    at both ends, otherwise NotBracketed is raised.  The root is
    polished by secant steps safeguarded by bisection until
    |r_hopf| <= tol.  Returns the located parameter point together with
    the transversality estimate: the central-difference derivative of
    the complex-pair real part with respect to t, which must be nonzero.
    """
    direction = np.asarray(direction, dtype=float)
    if direction.shape != (8,) or not np.all(np.isfinite(direction)):
        raise ValueError("direction must be a finite 8-vector")
    if not np.any(direction != 0):
        raise ValueError("direction must be nonzero")
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"bad bracket [{lo}, {hi}]")

    def poly_at(t: float) -> CharPoly:
        return charpoly(jacobian_positive(expand_at_equilibrium(_phi_on_ray(phi0, direction, t))))

    po_lo, po_hi = poly_at(lo), poly_at(hi)
    if po_lo.p_b <= 0 or po_hi.p_b <= 0:
        raise NotBracketed("p_b not positive at the bracket endpoints")
    f_lo = po_lo.p_c - po_lo.p_a * po_lo.p_b
    f_hi = po_hi.p_c - po_hi.p_a * po_hi.p_b

    if f_lo == 0.0:
        t_root = lo
    elif f_hi == 0.0:
        t_root = hi
    elif f_lo * f_hi > 0:
        raise NotBracketed(
            f"r_hopf does not change sign over [{lo}, {hi}] "
            f"(endpoint values {f_lo:g}, {f_hi:g})"
        )
    else:
        ta, tb, fa, fb = lo, hi, f_lo, f_hi
        t_root = 0.5 * (ta + tb)
        for _ in range(max_iter):
            # secant step when it lands strictly inside, bisection otherwise
            if fb != fa:
                cand = tb - fb * (tb - ta) / (fb - fa)
            else:
                cand = 0.5 * (ta + tb)
            if not (min(ta, tb) < cand < max(ta, tb)):
                cand = 0.5 * (ta + tb)
            fc = _r_hopf_on_ray(phi0, direction, cand)
            t_root = cand
            if abs(fc) <= tol:
                break
            if abs(tb - ta) <= 4.0 * math.ulp(max(abs(ta), abs(tb), 1e-300)):
                break
            if fa * fc < 0:
                tb, fb = cand, fc
            else:
                ta, fa = cand, fc
        if abs(_r_hopf_on_ray(phi0, direction, t_root)) > tol:
            raise NotBracketed(
                f"failed to drive |r_hopf| below {tol:g} over [{lo}, {hi}]"
            )

    located = _phi_on_ray(phi0, direction, t_root)
    if charpoly(jacobian_positive(expand_at_equilibrium(located))).p_b <= 0:
        raise NotBracketed("p_b nonpositive at the located point")

    h = 1e-6 * (hi - lo)

    def pair_real(t: float) -> float:
        roots = solve_cubic(poly_at(t))
        return roots[0].real

    slope = (pair_real(t_root + h) - pair_real(t_root - h)) / (2.0 * h)
    if slope == 0.0:
        raise IllConditioned("transversality estimate vanished at the located point")
    return located, slope
