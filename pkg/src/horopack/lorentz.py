"""Projective model of hyperbolic n-space over the Lorentz form of signature (1, n).

Points are homogeneous vectors ``(x0, x1, ..., xn)``. Interior (proper)
points satisfy ``<x, x> < 0``, points on the absolute satisfy ``<x, x> = 0``
and outer points satisfy ``<x, x> > 0``. A hyperplane is represented by its
pole, an outer vector ``u``; a point ``x`` lies on the hyperplane when
``<x, u> = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

ABSOLUTE_TOL = 1e-10
CLAMP_TOL = 1e-12


class GeometryError(ValueError):
    """Raised when an input violates a geometric precondition."""


class PointClass(Enum):
    INTERIOR = "interior"
    ABSOLUTE = "absolute"
    OUTER = "outer"


@dataclass(frozen=True, eq=False)
class LorentzVector:
    """Homogeneous coordinates of a point (or pole) in projective n-space.

    ``coords`` has ``dim + 1`` entries and is stored as a read-only float array.
    """

    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=float).reshape(-1)
        if c.size < 3:
            raise GeometryError(f"need at least 3 coordinates (n >= 2), got {c.size}")
        if not np.all(np.isfinite(c)):
            raise GeometryError("coordinates must be finite")
        if not np.any(c):
            raise GeometryError("the zero vector does not represent a point")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @classmethod
    def of(cls, *coords: float) -> "LorentzVector":
        return cls(np.array(coords, dtype=float))

    @property
    def dim(self) -> int:
        return self.coords.size - 1

    def scaled(self, factor: float) -> "LorentzVector":
        return LorentzVector(factor * self.coords)

    def normalized(self) -> "LorentzVector":
        """Representative with ``x0 = 1`` when possible, unit Euclidean norm otherwise."""
        c = self.coords
        if abs(c[0]) > CLAMP_TOL * np.linalg.norm(c):
            return LorentzVector(c / c[0])
        return LorentzVector(c / np.linalg.norm(c))

    def __repr__(self):
        return f"LorentzVector({np.array2string(self.coords, precision=6, separator=', ')})"


def _vec(x) -> LorentzVector:
    return x if isinstance(x, LorentzVector) else LorentzVector(np.asarray(x, dtype=float))


def _check_dims(*vs: LorentzVector) -> None:
    dims = {v.dim for v in vs}
    if len(dims) != 1:
        raise GeometryError(f"dimension mismatch: {sorted(dims)}")


def bilinear_form(x, y) -> float:
    """Lorentz form ``-x0*y0 + x1*y1 + ... + xn*yn``."""
    x, y = _vec(x), _vec(y)
    _check_dims(x, y)
    a, b = x.coords, y.coords
    return float(-a[0] * b[0] + a[1:] @ b[1:])


def classify_point(x, tol: float = ABSOLUTE_TOL) -> PointClass:
    """Sign of ``<x, x>``, with ``|<x, x>| <= tol * |x|^2`` counted as absolute."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    x = _vec(x)
    q = bilinear_form(x, x)
    if abs(q) <= tol * float(x.coords @ x.coords):
        return PointClass.ABSOLUTE
    return PointClass.INTERIOR if q < 0 else PointClass.OUTER


def _require(x: LorentzVector, kind: PointClass, what: str, tol: float = ABSOLUTE_TOL):
    got = classify_point(x, tol)
    if got is not kind:
        raise GeometryError(f"{what} must be {kind.value}, got {got.value} point {x!r}")


def _clamped(value: float, lower: float, what: str) -> float:
    if value < lower:
        if value >= lower - CLAMP_TOL:
            return lower
        raise GeometryError(f"{what} argument {value!r} below {lower}")
    return value


def distance(x, y) -> float:
    """Hyperbolic distance between two interior points.

    ``cosh s = -<x, y> / sqrt(<x, x> <y, y>)``, invariant under rescaling of
    either argument.
    """
    x, y = _vec(x), _vec(y)
    _check_dims(x, y)
    _require(x, PointClass.INTERIOR, "x")
    _require(y, PointClass.INTERIOR, "y")
    x, y = x.normalized(), y.normalized()
    c = -bilinear_form(x, y) / math.sqrt(bilinear_form(x, x) * bilinear_form(y, y))
    return math.acosh(_clamped(c, 1.0, "cosh"))


def polar_form(x) -> LorentzVector:
    """Coefficients of the polar hyperplane of ``x``.

    The returned covector ``a`` satisfies ``y . a = 0`` (ordinary dot product)
    exactly when ``<x, y> = 0``. The polarity is an involution.
    """
    x = _vec(x)
    a = x.coords.copy()
    a[0] = -a[0]
    return LorentzVector(a)


def incident(x, form) -> float:
    """Value of the linear form ``form`` at the point ``x``; zero means incident."""
    x, form = _vec(x), _vec(form)
    _check_dims(x, form)
    return float(x.coords @ form.coords)


def _require_proper_pole(u: LorentzVector) -> float:
    uu = bilinear_form(u, u)
    if uu <= ABSOLUTE_TOL * float(u.coords @ u.coords):
        raise GeometryError(f"pole {u!r} has <u,u> = {uu!r}; not a proper hyperplane")
    return uu


def foot_of_perpendicular(x, u) -> LorentzVector:
    """Foot of the perpendicular from interior ``x`` to the hyperplane with pole ``u``."""
    x, u = _vec(x), _vec(u)
    _check_dims(x, u)
    _require(x, PointClass.INTERIOR, "x")
    uu = _require_proper_pole(u)
    y = x.coords - (bilinear_form(x, u) / uu) * u.coords
    return LorentzVector(y)


def distance_to_hyperplane(x, u) -> float:
    """Distance from interior ``x`` to the hyperplane with pole ``u``.

    ``sinh s = |<x, u>| / sqrt(-<x, x> <u, u>)``.
    """
    x, u = _vec(x), _vec(u)
    _check_dims(x, u)
    _require(x, PointClass.INTERIOR, "x")
    uu = _require_proper_pole(u)
    x = x.normalized()
    u = LorentzVector(u.coords / np.linalg.norm(u.coords))
    uu = bilinear_form(u, u)
    return math.asinh(abs(bilinear_form(x, u)) / math.sqrt(-bilinear_form(x, x) * uu))


def _lorentz_null_vector(rows: np.ndarray) -> np.ndarray:
    """A vector ``u`` with ``<r, u> = 0`` for every row ``r`` (rows of full rank ``n``)."""
    g = rows.copy()
    g[:, 0] = -g[:, 0]
    _, s, vt = np.linalg.svd(g)
    if s.size and s[-1] <= 1e-12 * s[0]:
        raise GeometryError("points do not span a hyperplane")
    return vt[-1]


def pole_of_hyperplane(points: Sequence) -> LorentzVector:
    """Pole of the hyperplane through ``n`` points in general position."""
    vs = [_vec(p) for p in points]
    _check_dims(*vs)
    n = vs[0].dim
    if len(vs) != n:
        raise GeometryError(f"a hyperplane of {n}-space needs {n} points, got {len(vs)}")
    return LorentzVector(_lorentz_null_vector(np.array([v.coords for v in vs])))


def line_pole_in_plane(a, b, c) -> LorentzVector:
    """Pole of the line ``ab`` under the polarity restricted to the plane ``abc``.

    The result lies in the span of ``a, b, c`` and is conjugate to ``a`` and ``b``;
    for a point in that plane its distance to the line follows from
    :func:`distance_to_hyperplane`.
    """
    a, b, c = _vec(a), _vec(b), _vec(c)
    _check_dims(a, b, c)
    basis = np.array([a.coords, b.coords, c.coords])
    gram = np.array([[bilinear_form(p, q) for q in basis] for p in basis[:2]])
    coef = np.cross(gram[0], gram[1])
    if np.linalg.norm(coef) <= 1e-12 * np.abs(gram).max():
        raise GeometryError("degenerate plane")
    return LorentzVector(coef @ basis)


def dihedral_angle_between(u, w, interior) -> float:
    """Interior dihedral angle between two hyperplanes (given by poles) at a cell.

    ``interior`` is any interior point of the cell; it fixes the orientation
    of the two normals.
    """
    u, w, p = _vec(u), _vec(w), _vec(interior)
    _check_dims(u, w, p)
    uc = u.coords * np.sign(bilinear_form(p, u))
    wc = w.coords * np.sign(bilinear_form(p, w))
    u, w = LorentzVector(uc), LorentzVector(wc)
    c = -bilinear_form(u, w) / math.sqrt(bilinear_form(u, u) * bilinear_form(w, w))
    return math.acos(max(-1.0, min(1.0, c)))


@dataclass(frozen=True, eq=False)
class IdealSimplexFrame:
    """Regular ideal n-simplex in the standard frame.

    The facet ``E0 ... E(n-1)`` lies in the hyperplane ``xn = 0`` with its centre
    at the model centre ``O = (1, 0, ..., 0)``, ``E0 ~ (1, 0, ..., 1, 0)`` and
    ``En = (1, 0, ..., 0, 1)``. Vertices are scaled so all pairwise form values
    coincide.
    """

    dim: int
    vertices: tuple[LorentzVector, ...]
    incenter: LorentzVector

    @property
    def center(self) -> LorentzVector:
        return LorentzVector(np.eye(self.dim + 1)[0])

    def facet_pole(self, j: int) -> LorentzVector:
        """Pole of the facet opposite vertex ``j``, oriented towards the incenter."""
        others = [v for i, v in enumerate(self.vertices) if i != j]
        u = pole_of_hyperplane(others)
        if bilinear_form(self.incenter, u) < 0:
            u = u.scaled(-1.0)
        return u

    def edge_pole(self) -> LorentzVector:
        """Pole of the edge ``E0 En`` within the plane ``E0 En O``."""
        return line_pole_in_plane(self.vertices[0], self.vertices[-1], self.center)


def _regular_sphere_simplex(m: int) -> np.ndarray:
    """``m + 1`` unit vectors in R^m forming a regular simplex, the first along the last axis."""
    if m == 1:
        return np.array([[1.0], [-1.0]])
    pts = np.eye(m + 1) - 1.0 / (m + 1)
    # orthonormal basis of the sum-zero hyperplane whose last axis is pts[0]
    cols = np.column_stack([pts[0]] + [pts[i] for i in range(1, m)])
    q, _ = np.linalg.qr(cols)
    q = q[:, ::-1]
    if q[:, -1] @ pts[0] < 0:
        q[:, -1] = -q[:, -1]
    coords = pts @ q
    return coords / np.linalg.norm(coords, axis=1, keepdims=True)


def build_regular_ideal_simplex(n: int) -> IdealSimplexFrame:
    """Regular ideal n-simplex with ``En = (1, 0, ..., 0, 1)`` and incenter ``(1, 0, ..., 0, 1/n)``."""
    if int(n) != n or n < 2:
        raise GeometryError(f"dimension must be an integer >= 2, got {n!r}")
    n = int(n)
    sphere = _regular_sphere_simplex(n - 1)
    scale = (n - 1) / n  # makes <Ei, En> equal to <Ei, Ej>
    verts = []
    for e in sphere:
        c = np.zeros(n + 1)
        c[0] = 1.0
        c[1:n] = e
        verts.append(LorentzVector(scale * c))
    top = np.zeros(n + 1)
    top[0] = top[n] = 1.0
    verts.append(LorentzVector(top))
    inc = np.zeros(n + 1)
    inc[0] = 1.0
    inc[n] = 1.0 / n
    return IdealSimplexFrame(n, tuple(verts), LorentzVector(inc))
