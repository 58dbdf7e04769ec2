"""Dimensionless three-species resource–consumer model.

One shared resource with logistic growth is consumed by two competitors,
each through a saturating (handling-time limited) uptake term, and the
competitors suppress each other bilinearly.  Everything downstream
(spectral analysis, bifurcation classification, simulation) is built on
the types and closed-form algebra collected here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._cubic import solve_monic_cubic
from .errors import FrrIndeterminate

__all__ = [
    "DimensionalParams",
    "ModelParams",
    "SuccessState",
    "EquilibriumSet",
    "ExpansionCoeffs",
    "Region",
    "PositivityRegion",
    "nondimensionalize",
    "vector_field",
    "xstar_cubic",
    "xstar_closed_form",
    "positive_equilibrium",
    "region_predicates",
    "expand_at_equilibrium",
    "frr",
    "asymmetry",
]

RESIDUAL_TOL = 1e-9


def _require_positive(obj, fields):
    for name in fields:
        value = getattr(obj, name)
        if not (isinstance(value, (int, float)) and math.isfinite(value)):
            raise ValueError(f"{name} must be a finite number, got {value!r}")
        if value <= 0:
            raise ValueError(f"{name} must be strictly positive, got {value}")


@dataclass(frozen=True)
class DimensionalParams:
    """Raw model rates before rescaling.

    rho: intrinsic resource growth rate; K: carrying capacity;
    gamma_y/gamma_z: attack rates; mu_y/mu_z: handling times;
    m_y/m_z: death rates; alpha_yz/alpha_zy: cross-competition effects.
    """

    rho: float
    K: float
    gamma_y: float
    gamma_z: float
    mu_y: float
    mu_z: float
    m_y: float
    m_z: float
    alpha_yz: float
    alpha_zy: float

    def __post_init__(self):
        _require_positive(
            self,
            (
                "rho",
                "K",
                "gamma_y",
                "gamma_z",
                "mu_y",
                "mu_z",
                "m_y",
                "m_z",
                "alpha_yz",
                "alpha_zy",
            ),
        )


@dataclass(frozen=True)
class ModelParams:
    """The eight dimensionless parameters.

    a, b are handling-time products, c, d consumption coefficients,
    mu, nu death rates, alpha, beta competition coefficients.  All must
    be strictly positive; alpha and beta are routinely tiny (1e-12 range)
    but never zero.
    """

    a: float
    b: float
    c: float
    d: float
    mu: float
    nu: float
    alpha: float
    beta: float

    def __post_init__(self):
        _require_positive(self, ("a", "b", "c", "d", "mu", "nu", "alpha", "beta"))

    def replace(self, **changes) -> "ModelParams":
        fields = dict(
            a=self.a, b=self.b, c=self.c, d=self.d,
            mu=self.mu, nu=self.nu, alpha=self.alpha, beta=self.beta,
        )
        fields.update(changes)
        return ModelParams(**fields)

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.a, self.b, self.c, self.d, self.mu, self.nu, self.alpha, self.beta]
        )

    @staticmethod
    def from_array(values) -> "ModelParams":
        a, b, c, d, mu, nu, alpha, beta = (float(v) for v in values)
        return ModelParams(a, b, c, d, mu, nu, alpha, beta)


PARAM_NAMES = ("a", "b", "c", "d", "mu", "nu", "alpha", "beta")


@dataclass(frozen=True)
class SuccessState:
    """Phase point: resource escape success and the two predation successes."""

    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @staticmethod
    def from_array(values) -> "SuccessState":
        x, y, z = (float(v) for v in values)
        return SuccessState(x, y, z)


class Region(Enum):
    """Outcome of the closed-form positivity predicates."""

    REGION_I = "I"
    REGION_II = "II"
    OTHER = "other"


class PositivityRegion(Enum):
    REGION_I = "I"
    REGION_II = "II"
    OTHER_POSITIVE = "other-positive"
    NOT_POSITIVE = "not-positive"


@dataclass(frozen=True)
class EquilibriumSet:
    """All interior equilibria plus the trivial one at the origin.

    ``candidates`` holds every admissible interior root ordered by
    ascending resource coordinate; ``positive`` is the one with the
    smallest vector-field residual (None when no interior equilibrium
    exists).  ``residual`` is the max-norm of the field at ``positive``
    and is NaN when ``positive`` is None.
    """

    origin: SuccessState
    positive: SuccessState | None
    candidates: tuple[SuccessState, ...]
    positivity_region: PositivityRegion
    residual: float


@dataclass(frozen=True)
class ExpansionCoeffs:
    """Taylor coefficients of the field shifted to the interior equilibrium.

    b_vec[i] is the coefficient written b_{i+1} in the resource row, and
    likewise c_vec / d_vec for the two consumer rows.  The monomial map is

        row 1:  b1 x, b2 x^2, b3 x^3, b4 x^4, b5 y, b6 z,
                b7 xy, b8 x^2 y, b9 x^3 y, b10 x^4 y,
                b11 xz, b12 x^2 z, b13 x^3 z, b14 x^4 z
        row 2:  c1 y, c2 x, c3 x^2, c4 x^3, c5 x^4,
                c6 xy, c7 x^2 y, c8 x^3 y, c9 x^4 y, c10 z, c11 yz
        row 3:  d1 z, d2 x, d3 x^2, d4 x^3, d5 x^4,
                d6 y, d7 xz, d8 x^2 z, d9 x^3 z, d10 x^4 z, d11 yz
    """

    b_vec: np.ndarray
    c_vec: np.ndarray
    d_vec: np.ndarray

    @property
    def delta(self) -> tuple[float, ...]:
        """Projection onto the linear-part entries (b1,b5,b6,c1,c2,c10,d1,d2,d6)."""
        b, c, d = self.b_vec, self.c_vec, self.d_vec
        return (b[0], b[4], b[5], c[0], c[1], c[9], d[0], d[1], d[5])


def nondimensionalize(p: DimensionalParams) -> ModelParams:
    """Collapse the ten raw rates into the eight dimensionless parameters."""
    return ModelParams(
        a=p.gamma_y * p.mu_y * p.K,
        b=p.gamma_z * p.mu_z * p.K,
        c=p.K * p.gamma_y / p.rho,
        d=p.K * p.gamma_z / p.rho,
        mu=p.m_y / p.rho,
        nu=p.m_z / p.rho,
        alpha=p.alpha_yz / p.gamma_z,
        beta=p.alpha_zy / p.gamma_y,
    )


def vector_field(s: SuccessState, phi: ModelParams) -> SuccessState:
    """Time derivative of the success state."""
    x, y, z = s.x, s.y, s.z
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
        raise ValueError(f"state must be finite, got ({x}, {y}, {z})")
    ha = 1.0 + phi.a * x
    hb = 1.0 + phi.b * x
    dx = x * (1.0 - x) - x * y / ha - x * z / hb
    dy = phi.c * x * y / ha - phi.mu * y - phi.alpha * y * z
    dz = phi.d * x * z / hb - phi.nu * z - phi.beta * z * y
    return SuccessState(dx, dy, dz)


def xstar_cubic(phi: ModelParams) -> tuple[float, float, float, float]:
    """Coefficients (k3, k2, k1, k0) of the resource-coordinate cubic.

    Eliminating the consumer coordinates from the interior equilibrium
    conditions leaves k3 X^3 + k2 X^2 + k1 X + k0 = 0 with k3 < 0 and
    k0 > 0, so a positive real root always exists.
    """
    a, b, c, d = phi.a, phi.b, phi.c, phi.d
    mu, nu, al, be = phi.mu, phi.nu, phi.alpha, phi.beta
    ab = al * be
    k3 = -a * b * ab
    k2 = ab * (a * b - a - b)
    k1 = ab * (a + b - 1.0) - al * (d - nu * b) - be * (c - mu * a)
    k0 = ab + al * nu + be * mu
    return k3, k2, k1, k0


def xstar_closed_form(phi: ModelParams) -> float:
    """Printed single-radical form of the resource equilibrium coordinate.

    This is the Cardano expression over the cubic from ``xstar_cubic``;
    it is kept as a cross-check only, because it returns one fixed root
    branch and suffers cancellation when the competition coefficients are
    very small.  Returns NaN when the branch comes out non-real.
    """
    k3, k2, k1, k0 = xstar_cubic(phi)
    b_ups = -k3  # b * upsilon in the printed grouping; always > 0
    P = 3.0 * k3 * k1 - k2 * k2
    Q = 2.0 * k2 ** 3 - 9.0 * k3 * k2 * k1 + 27.0 * k3 * k3 * k0
    inner = cmath.sqrt(4.0 * P ** 3 + Q * Q) + Q
    croot = inner ** (1.0 / 3.0)
    if croot == 0:
        return float("nan")
    x = (
        k2 / (3.0 * b_ups)
        + croot / (3.0 * 2.0 ** (1.0 / 3.0) * b_ups)
        - 2.0 ** (1.0 / 3.0) * P / (3.0 * b_ups * croot)
    )
    if abs(x.imag) > 1e-9 * max(1.0, abs(x.real)):
        return float("nan")
    return x.real


def _consumer_coordinates(phi: ModelParams, xs: float) -> tuple[float, float]:
    """Consumer coordinates at resource level xs, by the best-conditioned route.

    The direct formulas divide a near-cancellation by alpha (resp. beta);
    for tiny competition coefficients that costs up to six digits.  The
    resource row provides an alternative expression for whichever
    coordinate is worse conditioned, accurate to roundoff.
    """
    ha = 1.0 + phi.a * xs
    hb = 1.0 + phi.b * xs
    ys = (phi.d * xs / hb - phi.nu) / phi.beta
    zs = (phi.c * xs / ha - phi.mu) / phi.alpha
    eps = math.ulp(1.0)
    err_z = eps * (phi.mu + phi.alpha * abs(zs)) / phi.alpha
    err_y = eps * (phi.nu + phi.beta * abs(ys)) / phi.beta
    err_x = eps * 4.0 * (1.0 + max(phi.a, phi.b) * xs)
    if err_z >= err_y and err_z > 10.0 * err_x:
        zs = hb * (1.0 - xs - ys / ha)
    elif err_y > err_z and err_y > 10.0 * err_x:
        ys = ha * (1.0 - xs - zs / hb)
    return ys, zs


def _field_residual(s: SuccessState, phi: ModelParams) -> float:
    v = vector_field(s, phi)
    return max(abs(v.x), abs(v.y), abs(v.z))


def positive_equilibrium(phi: ModelParams) -> EquilibriumSet:
    """Locate the interior equilibrium (or equilibria) and classify positivity.

    The resource cubic is solved directly; each real positive root with
    nonnegative consumer coordinates becomes a candidate, and the
    residual-minimizing candidate is reported as ``positive``.  The
    printed closed form is not used here (see ``xstar_closed_form``).
    """
    k3, k2, k1, k0 = xstar_cubic(phi)
    roots = solve_monic_cubic(k2 / k3, k1 / k3, k0 / k3)

    candidates = []
    for r in roots:
        if abs(r.imag) > 1e-9 * max(1.0, abs(r.real)):
            continue
        xs = r.real
        if xs <= 0.0:
            continue
        ys, zs = _consumer_coordinates(phi, xs)
        # forgive only roundoff-level negativity
        if ys < 0.0:
            if ys < -1e-13 * max(1.0, abs(xs)):
                continue
            ys = 0.0
        if zs < 0.0:
            if zs < -1e-13 * max(1.0, abs(xs)):
                continue
            zs = 0.0
        candidates.append(SuccessState(xs, ys, zs))
    candidates.sort(key=lambda s: s.x)

    origin = SuccessState(0.0, 0.0, 0.0)
    if not candidates:
        return EquilibriumSet(
            origin=origin,
            positive=None,
            candidates=(),
            positivity_region=PositivityRegion.NOT_POSITIVE,
            residual=float("nan"),
        )

    best = min(candidates, key=lambda s: _field_residual(s, phi))
    region = region_predicates(phi, best.x)
    mapped = {
        Region.REGION_I: PositivityRegion.REGION_I,
        Region.REGION_II: PositivityRegion.REGION_II,
        Region.OTHER: PositivityRegion.OTHER_POSITIVE,
    }[region]
    return EquilibriumSet(
        origin=origin,
        positive=best,
        candidates=tuple(candidates),
        positivity_region=mapped,
        residual=_field_residual(best, phi),
    )


def region_predicates(phi: ModelParams, xstar: float) -> Region:
    """Test the two printed sufficient positivity regions.

    Both are four-part conjunctions: an ordering on the handling
    parameters, a death-rate bound, and a closed-form bound on the
    resource coordinate.  Any unsatisfiable intermediate (nonpositive
    bound, negative radicand) simply fails the predicate.
    """
    if not math.isfinite(xstar):
        raise ValueError(f"xstar must be finite, got {xstar}")
    a, b, c, d = phi.a, phi.b, phi.c, phi.d
    mu, nu, al, be = phi.mu, phi.nu, phi.alpha, phi.beta

    def region_one() -> bool:
        if not (a > 1.0 and b >= a):
            return False
        den = a * mu - b * mu - c
        if den == 0.0:
            return False
        nu_bound = (-al * d - d * mu) / den
        if not (0.0 < nu <= nu_bound):
            return False
        rad = (
            al * a * a * d
            + 4.0 * a * a * mu * nu
            - 4.0 * a * b * mu * nu
            - 4.0 * a * c * nu
            + 2.0 * al * a * d
            + 4.0 * a * d * mu
            + al * d
        ) / (a * a * al * d)
        if rad < 0.0:
            return False
        x_bound = 0.5 * math.sqrt(rad) + (a - 1.0) / (2.0 * a)
        return 0.0 < xstar <= x_bound

    def region_two() -> bool:
        if not (b > 1.0 and a >= b):
            return False
        den = a * nu - b * nu + d
        if den == 0.0:
            return False
        mu_bound = (be * c + c * nu) / den
        if not (0.0 < mu <= mu_bound):
            return False
        rad = (
            -4.0 * a * b * mu * nu
            + be * b * b * c
            + 4.0 * b * b * mu * nu
            + 2.0 * be * b * c
            + 4.0 * b * c * nu
            - 4.0 * b * d * mu
            + be * c
        ) / (b * b * be * c)
        if rad < 0.0:
            return False
        x_bound = 0.5 * math.sqrt(rad) + (b - 1.0) / (2.0 * b)
        return 0.0 < xstar <= x_bound

    if region_one():
        return Region.REGION_I
    if region_two():
        return Region.REGION_II
    return Region.OTHER


def _holling_taylor(g: float, x: float) -> tuple[float, float, float, float, float]:
    """Value and Taylor coefficients (orders 1..4) of X/(1+gX) at x."""
    h = 1.0 + g * x
    val = x / h
    t1 = 1.0 / h ** 2
    t2 = -g / h ** 3
    t3 = g * g / h ** 4
    t4 = -(g ** 3) / h ** 5
    return val, t1, t2, t3, t4


def expand_at_equilibrium(phi: ModelParams) -> ExpansionCoeffs:
    """Exact fourth-order Taylor data of the field shifted to the equilibrium.

    The only non-polynomial ingredients are the two saturating uptake
    terms, whose derivatives have closed forms, so every coefficient is
    exact (no numerical differentiation).
    """
    eq = positive_equilibrium(phi)
    if eq.positive is None:
        raise ValueError("no interior equilibrium: expansion undefined")
    xs, ys, zs = eq.positive.x, eq.positive.y, eq.positive.z

    ga, ta1, ta2, ta3, ta4 = _holling_taylor(phi.a, xs)
    gb, tb1, tb2, tb3, tb4 = _holling_taylor(phi.b, xs)
    c, d = phi.c, phi.d

    b_vec = np.array(
        [
            1.0 - 2.0 * xs - ta1 * ys - tb1 * zs,   # x
            -1.0 - ta2 * ys - tb2 * zs,             # x^2
            -ta3 * ys - tb3 * zs,                   # x^3
            -ta4 * ys - tb4 * zs,                   # x^4
            -ga,                                    # y
            -gb,                                    # z
            -ta1,                                   # xy
            -ta2,                                   # x^2 y
            -ta3,                                   # x^3 y
            -ta4,                                   # x^4 y
            -tb1,                                   # xz
            -tb2,                                   # x^2 z
            -tb3,                                   # x^3 z
            -tb4,                                   # x^4 z
        ]
    )
    c_vec = np.array(
        [
            c * ga - phi.mu - phi.alpha * zs,       # y (vanishes at the equilibrium)
            c * ta1 * ys,                           # x
            c * ta2 * ys,                           # x^2
            c * ta3 * ys,                           # x^3
            c * ta4 * ys,                           # x^4
            c * ta1,                                # xy
            c * ta2,                                # x^2 y
            c * ta3,                                # x^3 y
            c * ta4,                                # x^4 y
            -phi.alpha * ys,                        # z
            -phi.alpha,                             # yz
        ]
    )
    d_vec = np.array(
        [
            d * gb - phi.nu - phi.beta * ys,        # z (vanishes at the equilibrium)
            d * tb1 * zs,                           # x
            d * tb2 * zs,                           # x^2
            d * tb3 * zs,                           # x^3
            d * tb4 * zs,                           # x^4
            -phi.beta * zs,                         # y
            d * tb1,                                # xz
            d * tb2,                                # x^2 z
            d * tb3,                                # x^3 z
            d * tb4,                                # x^4 z
            -phi.beta,                              # yz
        ]
    )
    return ExpansionCoeffs(b_vec=b_vec, c_vec=c_vec, d_vec=d_vec)


def evaluate_expansion(coeffs: ExpansionCoeffs, x: float, y: float, z: float):
    """Evaluate the truncated shifted field at (x, y, z)."""
    b, c, d = coeffs.b_vec, coeffs.c_vec, coeffs.d_vec
    row1 = (
        b[0] * x + b[1] * x**2 + b[2] * x**3 + b[3] * x**4
        + b[4] * y + b[5] * z
        + (b[6] * x + b[7] * x**2 + b[8] * x**3 + b[9] * x**4) * y
        + (b[10] * x + b[11] * x**2 + b[12] * x**3 + b[13] * x**4) * z
    )
    row2 = (
        c[0] * y + c[1] * x + c[2] * x**2 + c[3] * x**3 + c[4] * x**4
        + (c[5] * x + c[6] * x**2 + c[7] * x**3 + c[8] * x**4) * y
        + c[9] * z + c[10] * y * z
    )
    row3 = (
        d[0] * z + d[1] * x + d[2] * x**2 + d[3] * x**3 + d[4] * x**4
        + d[5] * y
        + (d[6] * x + d[7] * x**2 + d[8] * x**3 + d[9] * x**4) * z
        + d[10] * y * z
    )
    return row1, row2, row3


def frr(s: SuccessState, phi: ModelParams) -> float:
    """Functional response ratio of consumer 1 over consumer 2."""
    denom = phi.d * s.x * s.z / (1.0 + phi.b * s.x)
    if denom == 0.0:
        raise FrrIndeterminate(
            "functional response ratio undefined: consumer 2 uptake is zero"
        )
    numer = phi.c * s.x * s.y / (1.0 + phi.a * s.x)
    return numer / denom


def asymmetry(phi: ModelParams) -> tuple[float, float]:
    """Competition asymmetry ratios (alpha/beta, beta/alpha)."""
    return phi.alpha / phi.beta, phi.beta / phi.alpha
