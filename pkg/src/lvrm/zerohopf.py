"""Zero-Hopf reduction to the planar radial normal form and its catalog.

At a spectrum {0, +-i w}, averaging the standard-form field over the
rotation angle leaves dr/dt = a1 r z, dz/dt = c1 r^2 + c3 z^2 at
quadratic order.  The rescale rbar = -sqrt(|c1 c3|) r, zbar = -c3 z puts
this into the two-parameter family classified by (nf_a, nf_b); when
c1 c3 < 0 the radicand sign moves into nf_b.  a1, c1, c3 are coefficient
reads off the transformed field; the angular-averaging oracle recovers
them with no shared algebra past the basis change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    AnalysisError,
    BoundaryCase,
    DegenerateReduction,
    NotBracketed,
    NotConverged,
    WrongBranch,
)
from .hopf import StandardForm, to_standard_form
from .model import ExpansionCoeffs, ModelParams, expand_at_equilibrium
from .spectral import SpectralReport, charpoly, jacobian_positive, spectral_report

__all__ = [
    "CatalogType",
    "ZeroHopfNormalForm",
    "normal_form_coefficients",
    "catalog_classify",
    "zero_hopf_reduce",
    "zero_hopf_locate",
    "averaging_oracle",
    "analyze_zero_hopf",
]

DEGENERACY_FLOOR = 1e-10
BOUNDARY_TOL = 1e-9
LOCATE_TOL = 1e-9
LOCATE_MAX_ITER = 50


class CatalogType(Enum):
    TYPE_I = "I"
    TYPE_IIA = "IIa"
    TYPE_IIB = "IIb"
    TYPE_III = "III"
    TYPE_IVA = "IVa"
    TYPE_IVB = "IVb"


@dataclass(frozen=True)
class ZeroHopfNormalForm:
    """Planar reduction data: nf_a = -a1/c3, nf_b = -sign(c1) sign(c3)."""

    a1: float
    c1: float
    c3: float
    nf_a: float
    nf_b: int
    catalog: CatalogType


def normal_form_coefficients(sf: StandardForm) -> tuple[float, float, float]:
    """Resonant quadratic coefficients surviving the angular average.

    a1 multiplies r z in the radial equation: the u w part of f enters
    through cos^2 and the v w part of g through sin^2, each averaging to
    one half.  c1 is the r^2 and c3 the z^2 coefficient in the axial
    equation; uv and mixed u w / v w terms in h average away.
    """
    a1 = 0.5 * (sf.f.coeff(1, 0, 1) + sf.g.coeff(0, 1, 1))
    c1 = 0.5 * (sf.h.coeff(2, 0, 0) + sf.h.coeff(0, 2, 0))
    c3 = sf.h.coeff(0, 0, 2)
    return a1, c1, c3


def catalog_classify(nf_a: float, nf_b: int) -> CatalogType:
    if nf_b not in (1, -1):
        raise ValueError(f"nf_b must be +1 or -1, got {nf_b!r}")
    if abs(nf_a) <= BOUNDARY_TOL or abs(nf_a + 1.0) <= BOUNDARY_TOL:
        raise BoundaryCase(
            f"nf_a={nf_a:.3e} sits on a catalog boundary (0 or -1)"
        )
    if nf_b == 1:
        if nf_a > 0:
            return CatalogType.TYPE_I
        return CatalogType.TYPE_IIA if nf_a > -1.0 else CatalogType.TYPE_IIB
    if nf_a > 0:
        return CatalogType.TYPE_III
    return CatalogType.TYPE_IVA if nf_a > -1.0 else CatalogType.TYPE_IVB


def zero_hopf_reduce(
    coeffs: ExpansionCoeffs, spec: SpectralReport
) -> ZeroHopfNormalForm:
    """Reduce at (or near) a zero-Hopf spectrum and classify.

    The quadratic reads depend only on the eigenbasis, not on how close
    the real eigenvalue and the pair's real part sit to zero, so the
    reduction degrades gracefully slightly off the locus; exactness
    holds on it.
    """
    sf = to_standard_form(coeffs, spec)
    a1, c1, c3 = normal_form_coefficients(sf)
    if abs(c1) < DEGENERACY_FLOOR or abs(c3) < DEGENERACY_FLOOR:
        raise DegenerateReduction(
            f"reduction needs c1, c3 bounded away from zero, got "
            f"c1={c1:.3e}, c3={c3:.3e}"
        )
    nf_a = -a1 / c3
    nf_b = -int(math.copysign(1.0, c1) * math.copysign(1.0, c3))
    return ZeroHopfNormalForm(
        a1=a1, c1=c1, c3=c3, nf_a=nf_a, nf_b=nf_b,
        catalog=catalog_classify(nf_a, nf_b),
    )


def _pa_pc(phi: ModelParams) -> tuple[float, float, float]:
    poly = charpoly(jacobian_positive(expand_at_equilibrium(phi)))
    return poly.p_a, poly.p_c, poly.p_b


def zero_hopf_locate(
    phi0: ModelParams,
    plane: tuple[np.ndarray, np.ndarray],
    bracket2d: tuple[tuple[float, float], tuple[float, float]],
    tol: float = LOCATE_TOL,
) -> ModelParams:
    """Solve (p_a, p_c) = (0, 0) on a 2-D parameter plane through phi0.

    plane holds two direction vectors in parameter order; bracket2d is
    the search rectangle in the plane coordinates.  Both components must
    change sign over a coarse sample of the rectangle, otherwise the
    rectangle cannot enclose a crossing.  Newton with a forward-difference
    Jacobian runs from the rectangle center, steps clipped to stay inside.
    """
    d1 = np.asarray(plane[0], dtype=float)
    d2 = np.asarray(plane[1], dtype=float)
    (s_lo, s_hi), (t_lo, t_hi) = bracket2d
    base = phi0.as_array()

    def at(s: float, t: float) -> ModelParams:
        return ModelParams.from_array(base + s * d1 + t * d2)

    def residual(s: float, t: float) -> np.ndarray:
        pa, pc, _ = _pa_pc(at(s, t))
        return np.array([pa, pc])

    grid_s = np.linspace(s_lo, s_hi, 5)
    grid_t = np.linspace(t_lo, t_hi, 5)
    samples = []
    for s in grid_s:
        for t in grid_t:
            try:
                samples.append(residual(s, t))
            except (ValueError, AnalysisError):
                continue
    if not samples:
        raise NotBracketed("no admissible equilibrium anywhere on the rectangle")
    samples_arr = np.array(samples)
    for k, name in ((0, "p_a"), (1, "p_c")):
        col = samples_arr[:, k]
        if col.min() > 0 or col.max() < 0:
            raise NotBracketed(f"{name} does not change sign over the rectangle")

    s = 0.5 * (s_lo + s_hi)
    t = 0.5 * (t_lo + t_hi)
    h_s = 1e-7 * max(abs(s_hi - s_lo), 1e-12)
    h_t = 1e-7 * max(abs(t_hi - t_lo), 1e-12)
    for _ in range(LOCATE_MAX_ITER):
        r0 = residual(s, t)
        if max(abs(r0[0]), abs(r0[1])) <= tol:
            phi = at(s, t)
            if _pa_pc(phi)[2] <= 0.0:
                raise WrongBranch("p_b nonpositive at the located point")
            return phi
        J = np.column_stack(
            [
                (residual(s + h_s, t) - r0) / h_s,
                (residual(s, t + h_t) - r0) / h_t,
            ]
        )
        try:
            step = np.linalg.solve(J, -r0)
        except np.linalg.LinAlgError as exc:
            raise NotConverged("singular Jacobian in the 2-D Newton") from exc
        s_new = min(max(s + step[0], s_lo), s_hi)
        t_new = min(max(t + step[1], t_lo), t_hi)
        if s_new == s and t_new == t:
            raise NotConverged("Newton stalled on the rectangle boundary")
        s, t = s_new, t_new
    raise NotConverged(
        f"no (p_a, p_c) zero within {LOCATE_MAX_ITER} iterations"
    )


def averaging_oracle(
    sf: StandardForm,
    r0: float = 1e-3,
    z0: float = 1e-3,
    n_theta: int = 32,
) -> tuple[float, float, float]:
    """Recover (a1, c1, c3) by angular quadrature on the transformed field.

    Uniform theta samples integrate trigonometric polynomials of degree
    below n_theta exactly, so for the quartic truncation the quadrature
    itself is error-free; the only contamination is from higher even
    monomials at the probe radii, suppressed by r0^2 and z0^2.
    """
    theta = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)
    cos_t, sin_t = np.cos(theta), np.sin(theta)

    def mean_rdot(r: float, z: float) -> float:
        acc = 0.0
        for ct, st in zip(cos_t, sin_t):
            u, v = r * ct, r * st
            acc += ct * sf.f.evaluate(u, v, z) + st * sf.g.evaluate(u, v, z)
        return acc / n_theta

    def mean_zdot(r: float, z: float) -> float:
        acc = 0.0
        for ct, st in zip(cos_t, sin_t):
            acc += sf.h.evaluate(r * ct, r * st, z)
        return acc / n_theta

    a1 = (mean_rdot(r0, z0) - mean_rdot(r0, -z0)) / (2.0 * r0 * z0)
    c1 = mean_zdot(r0, 0.0) / (r0 * r0)
    c3 = (sf.h.evaluate(0.0, 0.0, z0) + sf.h.evaluate(0.0, 0.0, -z0)) / (
        2.0 * z0 * z0
    )
    return a1, c1, c3


def analyze_zero_hopf(phi: ModelParams) -> ZeroHopfNormalForm:
    """Reduction at the interior equilibrium of phi."""
    coeffs = expand_at_equilibrium(phi)
    return zero_hopf_reduce(coeffs, spectral_report(jacobian_positive(coeffs)))
