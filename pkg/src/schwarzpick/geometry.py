"""Unit-ball geometry: the invariant metric, ball automorphisms, and the
closed-form map families that attain (or asymptotically attain) the
derivative bounds."""
from __future__ import annotations

import cmath
import math

import numpy as np

from . import multiindex as mi
from .holomap import (
    HoloMap,
    MapDomainError,
    PolyMap,
    hermitian_inner,
    mobius_point,
    sq_norm,
)


def as_ball_point(z, n: int | None = None) -> np.ndarray:
    z = np.asarray(z, dtype=complex).reshape(-1)
    if n is not None and z.shape[0] != n:
        raise MapDomainError(f"expected a point in C^{n}, got dimension {z.shape[0]}")
    if sq_norm(z) >= 1.0:
        raise MapDomainError(f"point must lie strictly inside the unit ball (|z| = {math.sqrt(sq_norm(z)):.6f})")
    return z


def as_direction(beta, n: int | None = None, nonzero: bool = True) -> np.ndarray:
    beta = np.asarray(beta, dtype=complex).reshape(-1)
    if n is not None and beta.shape[0] != n:
        raise MapDomainError(f"expected a direction in C^{n}, got dimension {beta.shape[0]}")
    if not np.all(np.isfinite(beta.view(float))):
        raise MapDomainError("direction entries must be finite")
    if nonzero and sq_norm(beta) == 0.0:
        raise MapDomainError("direction must be non-zero")
    return beta


def bergman_metric(z, beta) -> float:
    """H_z(beta, beta) = [(1-|z|^2)|beta|^2 + |<beta,z>|^2] / (1-|z|^2)^2.

    Invariant under ball automorphisms; the common (n+1)/2 normalisation
    factor is deliberately omitted.
    """
    z = as_ball_point(z)
    beta = as_direction(beta, z.shape[0], nonzero=False)
    z2 = float(sq_norm(z))
    b2 = float(sq_norm(beta))
    ip = abs(complex(hermitian_inner(beta, z)))
    return ((1.0 - z2) * b2 + ip * ip) / (1.0 - z2) ** 2


def moebius_apply(a, w) -> np.ndarray:
    """phi_a(w): the involutive automorphism exchanging 0 and a."""
    a = as_ball_point(a)
    w = as_ball_point(w, a.shape[0])
    return mobius_point(a, w)


def _projection_matrices(a: np.ndarray):
    m = a.shape[0]
    eye = np.eye(m, dtype=complex)
    a2 = float(sq_norm(a))
    if a2 == 0.0:
        return np.zeros((m, m), dtype=complex), eye
    proj = np.outer(a, np.conj(a)) / a2
    return proj, eye - proj


def moebius_jacobian(a, at: str = "origin") -> np.ndarray:
    """Holomorphic Jacobian of phi_a at the origin or at a, as an m x m matrix.

    phi_a'(0) = -(1-|a|^2) P_a - sqrt(1-|a|^2) Q_a
    phi_a'(a) = -P_a/(1-|a|^2) - Q_a/sqrt(1-|a|^2)

    The two matrices multiply to the identity (chain rule on the involution).
    """
    a = as_ball_point(a)
    proj, comp = _projection_matrices(a)
    a2 = float(sq_norm(a))
    s = math.sqrt(1.0 - a2)
    if at == "origin":
        return -(1.0 - a2) * proj - s * comp
    if at == "a":
        return -proj / (1.0 - a2) - comp / s
    raise ValueError("at must be 'origin' or 'a'")


class AutomorphismMap(HoloMap):
    """phi_a as a holomorphic self-map of the ball (n = m)."""

    kind = "automorphism"

    def __init__(self, a):
        self.a = as_ball_point(a)
        self.n = self.m = self.a.shape[0]

    def _eval(self, z):
        return mobius_point(self.a, z)

    def describe(self) -> str:
        return f"automorphism(|a|={math.sqrt(sq_norm(self.a)):.3f}, n={self.n})"


def origin_equality_gap(a0, av, v) -> float:
    """Signed gap of the origin coefficient bound:
    |<a_v,a_0>|^2 + (1-|a_0|^2)|a_v|^2 - (|v|^|v|/v^v)(1-|a_0|^2)^2."""
    a0 = np.asarray(a0, dtype=complex).reshape(-1)
    av = np.asarray(av, dtype=complex).reshape(-1)
    a02 = float(sq_norm(a0))
    ip = abs(complex(hermitian_inner(av, a0)))
    lhs = ip * ip + (1.0 - a02) * float(sq_norm(av))
    rhs = mi.sharpness_factor(v) * (1.0 - a02) ** 2
    return lhs - rhs


class ExtremalOriginMap(HoloMap):
    """f(z) = a0 + a_v z^v / (1 + <a_v,a0> z^v / (1-|a0|^2)).

    The unique shape attaining equality in the origin coefficient bound when
    every v_j is non-zero; its Taylor support is exactly the lattice
    {j*v : j >= 0}.
    """

    kind = "extremal-origin"

    def __init__(self, a0, av, v):
        self.a0 = np.asarray(a0, dtype=complex).reshape(-1)
        self.av = np.asarray(av, dtype=complex).reshape(-1)
        if self.a0.shape != self.av.shape:
            raise MapDomainError("a0 and a_v must live in the same codomain")
        self.v = mi.as_multiindex(v)
        self.n = len(self.v)
        self.m = self.a0.shape[0]
        self._c = complex(hermitian_inner(self.av, self.a0)) / (1.0 - float(sq_norm(self.a0)))
        self._vexp = np.array(self.v)

    def _eval(self, z):
        zv = np.prod(z ** self._vexp, axis=-1)
        return self.a0 + self.av * (zv / (1.0 + self._c * zv))[..., None]

    def describe(self) -> str:
        return f"extremal-origin(v={self.v}, |a0|={math.sqrt(sq_norm(self.a0)):.3f})"


def extremal_origin_map(a0, av, v, tol: float = 1e-12) -> ExtremalOriginMap:
    """Construct the origin-extremal map, requiring the equality condition
    |<a_v,a0>|^2 + (1-|a0|^2)|a_v|^2 = (|v|^|v|/v^v)(1-|a0|^2)^2 within tol."""
    v = mi.as_multiindex(v)
    if sum(v) == 0:
        raise MapDomainError("v must be a non-zero multi-index")
    a0 = np.asarray(a0, dtype=complex).reshape(-1)
    if sq_norm(a0) >= 1.0:
        raise MapDomainError("a0 must lie inside the unit ball")
    gap = origin_equality_gap(a0, av, v)
    scale = max(1.0, mi.sharpness_factor(v) * (1.0 - float(sq_norm(a0))) ** 2)
    if abs(gap) > tol * scale:
        raise MapDomainError(f"(a0, a_v, v) do not satisfy the equality condition (gap {gap:.3e})")
    return ExtremalOriginMap(a0, av, v)


def extremal_origin_from_direction(a0, direction, v) -> ExtremalOriginMap:
    """Scale a codomain direction to the exact equality locus and construct the map."""
    a0 = np.asarray(a0, dtype=complex).reshape(-1)
    u = np.asarray(direction, dtype=complex).reshape(-1)
    u = u / np.linalg.norm(u)
    a02 = float(sq_norm(a0))
    ip = abs(complex(hermitian_inner(u, a0)))
    t = (1.0 - a02) * math.sqrt(mi.sharpness_factor(v) / (ip * ip + 1.0 - a02))
    return extremal_origin_map(a0, t * u, v)


class ExtremalK1Map(HoloMap):
    """First-order extremal map with value w0 and Jacobian J at xi:

    f(z) = w0 + [ (1-<z,xi>)/(1-|xi|^2) + <J(z-xi), w0>/(1-|w0|^2) ]^(-1) J(z-xi)

    Valid when phi'_{w0}(w0) J phi'_xi(0) is a linear isometry of C^n into
    C^m; the metric pullback is then an exact equality at xi for every
    direction.
    """

    kind = "extremal-k1"

    _DENOM_GUARD = 1e-12

    def __init__(self, xi, w0, jac):
        self.xi = np.asarray(xi, dtype=complex).reshape(-1)
        self.w0 = np.asarray(w0, dtype=complex).reshape(-1)
        self.jac = np.asarray(jac, dtype=complex)
        self.n = self.xi.shape[0]
        self.m = self.w0.shape[0]
        if self.jac.shape != (self.m, self.n):
            raise MapDomainError(f"Jacobian must have shape ({self.m}, {self.n})")
        self._xi2 = float(sq_norm(self.xi))
        self._w02 = float(sq_norm(self.w0))

    def _eval(self, z):
        dz = z - self.xi
        jdz = dz @ self.jac.T
        denom = (1.0 - hermitian_inner(z, self.xi)) / (1.0 - self._xi2)
        denom = denom + hermitian_inner(jdz, self.w0) / (1.0 - self._w02)
        if np.min(np.abs(denom)) <= self._DENOM_GUARD:
            raise MapDomainError("extremal map denominator vanished inside the ball")
        return self.w0 + jdz / denom[..., None]

    def describe(self) -> str:
        return f"extremal-k1(n={self.n}, m={self.m}, |xi|={math.sqrt(self._xi2):.3f})"


def normalized_frame(xi, w0, jac) -> np.ndarray:
    """phi'_{w0}(w0) . J . phi'_xi(0): the derivative of the map renormalised
    to fix the origin. An isometry exactly when the first-order bound is
    attained at xi in every direction."""
    xi = as_ball_point(xi)
    w0 = as_ball_point(w0)
    jac = np.asarray(jac, dtype=complex)
    return moebius_jacobian(w0, at="a") @ jac @ moebius_jacobian(xi, at="origin")


def jacobian_from_frame(xi, w0, frame) -> np.ndarray:
    """Inverse of `normalized_frame`: the Jacobian whose renormalised frame is
    the given m x n matrix (use an isometry to hit the equality case)."""
    xi = as_ball_point(xi)
    w0 = as_ball_point(w0)
    frame = np.asarray(frame, dtype=complex)
    return moebius_jacobian(w0, at="origin") @ frame @ moebius_jacobian(xi, at="a")


def extremal_k1_map(xi, w0, jac, tol: float = 1e-10) -> ExtremalK1Map:
    """Construct the first-order extremal map, checking n <= m and the
    isometry condition frame^H frame = I within tol."""
    xi = as_ball_point(xi)
    w0 = as_ball_point(w0)
    jac = np.asarray(jac, dtype=complex)
    n, m = xi.shape[0], w0.shape[0]
    if n > m:
        raise MapDomainError("first-order extremal maps require n <= m")
    frame = normalized_frame(xi, w0, jac)
    gram = np.conj(frame.T) @ frame
    if np.max(np.abs(gram - np.eye(n))) > tol:
        raise MapDomainError("renormalised derivative is not an isometry")
    return ExtremalK1Map(xi, w0, jac)


class Remark2Map(HoloMap):
    """Disk-to-ball family f_w pinned to f_w(xi) = w whose derivative bound
    ratio tends to 1 as |w| -> 1.

    f_w(z) = g_w(-e^{-i theta} (xi - z)/(1 - conj(xi) z)) with theta = arg xi
    and g_w(u) = (w/|w|) (|w| - u)/(1 - |w| u).
    """

    kind = "remark2"

    def __init__(self, xi, w):
        xi = complex(xi)
        if xi == 0:
            raise MapDomainError("the pinned point must be non-zero (its argument sets the phase)")
        if abs(xi) >= 1.0:
            raise MapDomainError("the pinned point must lie inside the unit disk")
        self.xi = xi
        self.w = np.asarray(w, dtype=complex).reshape(-1)
        wnorm = math.sqrt(float(sq_norm(self.w)))
        if wnorm == 0.0 or wnorm >= 1.0:
            raise MapDomainError("w must lie in the punctured unit ball")
        self._wnorm = wnorm
        self._phase = cmath.exp(-1j * cmath.phase(xi))
        self.n = 1
        self.m = self.w.shape[0]

    def _eval(self, z):
        z0 = z[..., 0]
        u = -self._phase * (self.xi - z0) / (1.0 - np.conj(self.xi) * z0)
        scalar = (self._wnorm - u) / (1.0 - self._wnorm * u)
        return (self.w / self._wnorm) * scalar[..., None]

    def describe(self) -> str:
        return f"remark2(|xi|={abs(self.xi):.3f}, |w|={self._wnorm:.6f}, m={self.m})"


class Remark3Map(HoloMap):
    """Ball-to-disk family pinned to f(xi) = w on the z1-axis whose order-v
    partial at xi attains the radial bound up to the truncated binomial factor.

    f = g o phi_xi with g(y) = (w - s y^v)/(1 - conj(w) s y^v), s = sqrt(|v|^|v|/v^v).
    """

    kind = "remark3"

    def __init__(self, xi1, w, v):
        self.v = mi.as_multiindex(v)
        if sum(self.v) == 0:
            raise MapDomainError("v must be a non-zero multi-index")
        self.n = len(self.v)
        self.m = 1
        xi1 = complex(xi1)
        if abs(xi1) >= 1.0:
            raise MapDomainError("xi must lie inside the unit ball")
        self.xi1 = xi1
        w = complex(w)
        if abs(w) >= 1.0:
            raise MapDomainError("w must lie inside the unit disk")
        self.w = w
        self._s = math.sqrt(mi.sharpness_factor(self.v))
        xi = np.zeros(self.n, dtype=complex)
        xi[0] = xi1
        self._auto = AutomorphismMap(xi) if xi1 != 0 else None
        self._vexp = np.array(self.v)

    def _eval(self, z):
        y = self._auto._eval(z) if self._auto is not None else -z
        u = self._s * np.prod(y ** self._vexp, axis=-1)
        return ((self.w - u) / (1.0 - np.conj(self.w) * u))[..., None]

    def describe(self) -> str:
        return f"remark3(v={self.v}, |xi|={abs(self.xi1):.3f}, |w|={abs(self.w):.3f})"


class Remark4Map(HoloMap):
    """Ball-to-disk family pinned to f(xi) = w on the z1-axis whose k-th
    z1-derivative bound ratio tends to 1 as |w| -> 1.

    f(z) = (w + e^{-i theta} y1)/(1 + conj(w) e^{-i theta} y1) with
    y1 = (xi1 - z1)/(1 - conj(xi1) z1) and theta = arg xi1 - arg w.
    """

    kind = "remark4"

    def __init__(self, xi1, w, n=1):
        xi1 = complex(xi1)
        w = complex(w)
        if xi1 == 0:
            raise MapDomainError("the pinned point must be non-zero (its argument sets the phase)")
        if abs(xi1) >= 1.0:
            raise MapDomainError("xi must lie inside the unit ball")
        if w == 0 or abs(w) >= 1.0:
            raise MapDomainError("w must lie in the punctured unit disk")
        self.xi1 = xi1
        self.w = w
        self.n = int(n)
        self.m = 1
        self._phase = cmath.exp(-1j * (cmath.phase(xi1) - cmath.phase(w)))

    def _eval(self, z):
        y1 = (self.xi1 - z[..., 0]) / (1.0 - np.conj(self.xi1) * z[..., 0])
        u = self._phase * y1
        return ((self.w + u) / (1.0 + np.conj(self.w) * u))[..., None]

    def describe(self) -> str:
        return f"remark4(|xi|={abs(self.xi1):.3f}, |w|={abs(self.w):.6f}, n={self.n})"


def remark_family(kind: str, **params) -> HoloMap:
    """Build one of the asymptotic-sharpness families: remark2 | remark3 | remark4."""
    if kind == "remark2":
        return Remark2Map(params["xi"], params["w"])
    if kind == "remark3":
        return Remark3Map(params["xi"], params["w"], params["v"])
    if kind == "remark4":
        return Remark4Map(params["xi"], params["w"], params.get("n", 1))
    raise ValueError(f"unknown family kind {kind!r}")


def remark2_derivative(xi, w, k: int) -> np.ndarray:
    """Closed form of the k-th derivative of the remark2 family at its pinned point:

    f_w^(k)(xi) = -e^{-ik arg xi} k! (1-|w|^2) (|w|+|xi|)^(k-1) / (1-|xi|^2)^k * w/|w|.
    """
    xi = complex(xi)
    w = np.asarray(w, dtype=complex).reshape(-1)
    wn = float(np.linalg.norm(w))
    phase = cmath.exp(-1j * k * cmath.phase(xi))
    mag = math.factorial(k) * (1.0 - wn * wn) * (wn + abs(xi)) ** (k - 1) / (1.0 - abs(xi) ** 2) ** k
    return -phase * mag * w / wn


def remark3_derivative(xi1, w, v) -> complex:
    """Closed form of the order-v partial of the remark3 family at its pinned point:

    (-1)^(|v|+1) sqrt(|v|^|v|/v^v) v! (1-|w|^2) / (1-|xi|^2)^((v1+|v|)/2).
    """
    v = mi.as_multiindex(v)
    k = sum(v)
    s = math.sqrt(mi.sharpness_factor(v))
    mag = s * mi.multiindex_factorial(v) * (1.0 - abs(complex(w)) ** 2)
    mag /= (1.0 - abs(complex(xi1)) ** 2) ** ((v[0] + k) / 2.0)
    return (-1.0) ** (k + 1) * mag


def remark4_derivative(xi1, w, k: int) -> complex:
    """Closed form of the k-th z1-derivative of the remark4 family at its pinned point:

    -k! (1-|w|^2) (|w|+|xi|)^(k-1) / (1-|xi|^2)^k * (w/|w|) e^{-ik arg xi}.
    """
    xi1 = complex(xi1)
    w = complex(w)
    mag = math.factorial(k) * (1.0 - abs(w) ** 2) * (abs(w) + abs(xi1)) ** (k - 1) / (1.0 - abs(xi1) ** 2) ** k
    return -mag * (w / abs(w)) * cmath.exp(-1j * k * cmath.phase(xi1))


def linear_plus_square_map() -> PolyMap:
    """The two-variable scalar map z1 + z2^2/3: attains the origin coefficient
    bound at v = (1,0) while carrying a coefficient outside the extremal shape."""
    return PolyMap(2, 1, {(1, 0): [1.0], (0, 2): [1.0 / 3.0]})
