"""Dense truncated trivariate polynomials.

Coefficient cubes of shape (5, 5, 5) indexed by exponent, with every
term of total degree above 4 discarded.  All transforms in the
bifurcation pipeline (linear change of variables, center-manifold
substitution, reading partial derivatives at the origin) are coefficient
algebra on these cubes; nothing is differentiated numerically.
"""

from __future__ import annotations

import numpy as np

__all__ = ["TriPoly", "MAX_DEGREE", "linear_basis", "apply_basis"]

MAX_DEGREE = 4
_N = MAX_DEGREE + 1

_I, _J, _K = np.indices((_N, _N, _N))
_DEGREE_MASK = (_I + _J + _K) <= MAX_DEGREE


class TriPoly:
    """Polynomial in three variables, truncated at total degree 4."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.c = np.zeros((_N, _N, _N))
        else:
            c = np.asarray(coeffs, dtype=float)
            if c.shape != (_N, _N, _N):
                raise ValueError(f"coefficient cube must be {(_N, _N, _N)}, got {c.shape}")
            self.c = np.where(_DEGREE_MASK, c, 0.0)

    @staticmethod
    def from_terms(terms) -> "TriPoly":
        """Build from an iterable of ((i, j, k), coefficient)."""
        p = TriPoly()
        for (i, j, k), value in terms:
            if i + j + k <= MAX_DEGREE:
                p.c[i, j, k] += value
        return p

    def coeff(self, i: int, j: int, k: int) -> float:
        return float(self.c[i, j, k])

    def __add__(self, other: "TriPoly") -> "TriPoly":
        return TriPoly(self.c + other.c)

    def __sub__(self, other: "TriPoly") -> "TriPoly":
        return TriPoly(self.c - other.c)

    def __neg__(self) -> "TriPoly":
        return TriPoly(-self.c)

    def scale(self, s: float) -> "TriPoly":
        return TriPoly(self.c * s)

    def __mul__(self, other: "TriPoly") -> "TriPoly":
        out = np.zeros((_N, _N, _N))
        for i, j, k in np.argwhere(self.c):
            v = self.c[i, j, k]
            out[i:, j:, k:] += v * other.c[: _N - i, : _N - j, : _N - k]
        return TriPoly(out)

    def shift_mul(self, i: int, j: int, k: int, s: float = 1.0) -> "TriPoly":
        """Multiply by s * x^i y^j z^k."""
        out = np.zeros((_N, _N, _N))
        out[i:, j:, k:] = s * self.c[: _N - i, : _N - j, : _N - k]
        return TriPoly(out)

    def substitute_w(self, H: "TriPoly") -> "TriPoly":
        """Replace the third variable by H(u, v); H must not involve it."""
        if np.any(H.c[:, :, 1:]):
            raise ValueError("substitution polynomial must not involve the third variable")
        h_pow = [TriPoly.from_terms([((0, 0, 0), 1.0)])]
        for _ in range(MAX_DEGREE):
            h_pow.append(h_pow[-1] * H)
        out = TriPoly()
        for i, j, k in np.argwhere(self.c):
            out = out + h_pow[k].shift_mul(i, j, 0, self.c[i, j, k])
        return out

    def evaluate(self, u: float, v: float, w: float) -> float:
        up = u ** np.arange(_N)
        vp = v ** np.arange(_N)
        wp = w ** np.arange(_N)
        return float(np.einsum("ijk,i,j,k->", self.c, up, vp, wp))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.c)))

    def degree_slice(self, degree: int) -> "TriPoly":
        """Terms of exactly this total degree."""
        mask = (_I + _J + _K) == degree
        return TriPoly(np.where(mask, self.c, 0.0))


def linear_basis(M) -> list:
    """Monomial images x^i y^j z^k |-> products of rows of (x,y,z) = M (u,v,w).

    Returns a (5,5,5) object array holding a TriPoly for each retained
    exponent triple, shared across the three field rows.
    """
    M = np.asarray(M, dtype=float)
    X = TriPoly.from_terms([((1, 0, 0), M[0, 0]), ((0, 1, 0), M[0, 1]), ((0, 0, 1), M[0, 2])])
    Y = TriPoly.from_terms([((1, 0, 0), M[1, 0]), ((0, 1, 0), M[1, 1]), ((0, 0, 1), M[1, 2])])
    Z = TriPoly.from_terms([((1, 0, 0), M[2, 0]), ((0, 1, 0), M[2, 1]), ((0, 0, 1), M[2, 2])])

    def powers(p):
        acc = [TriPoly.from_terms([((0, 0, 0), 1.0)])]
        for _ in range(MAX_DEGREE):
            acc.append(acc[-1] * p)
        return acc

    xp, yp, zp = powers(X), powers(Y), powers(Z)
    basis = np.empty((_N, _N, _N), dtype=object)
    for i in range(_N):
        for j in range(_N - i):
            for k in range(_N - i - j):
                basis[i, j, k] = xp[i] * yp[j] * zp[k]
    return basis


def apply_basis(p: TriPoly, basis) -> TriPoly:
    """Evaluate p after the variable change whose monomial images are in basis."""
    out = TriPoly()
    for i, j, k in np.argwhere(p.c):
        out = out + basis[i, j, k].scale(p.c[i, j, k])
    return out
