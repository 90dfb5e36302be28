"""Zonal harmonic analysis on spheres.

Scale-n harmonic subspaces enter every other module only through two
numbers and one function: the subspace dimension, the Laplace-Beltrami
eigenvalue, and the zonal reproducing kernel.  The kernel of scale n at
points x, y equals dim / volume times the degree-n Jacobi polynomial,
normalized to one at the north pole, evaluated at the geodesic cosine.
On the 2-sphere the Jacobi indices vanish and the kernel collapses to a
scaled Legendre polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError

UNIT_NORM_TOL = 1e-12


def sphere_surface_area(d: int) -> float:
    """Surface area of the unit sphere embedded in R^(d+1)."""
    return 2.0 * math.pi ** ((d + 1) / 2.0) / math.gamma((d + 1) / 2.0)


def subspace_dimension(n: int, alpha: float, beta: float) -> float:
    """Dimension of the scale-n harmonic subspace from its Jacobi indices.

    Evaluated through log-gamma for stability at large n.  Integral for
    every genuine two-point homogeneous space.
    """
    if n == 0:
        return 1.0
    num = (
        math.log(2 * n + alpha + beta + 1)
        + math.lgamma(beta + 1)
        + math.lgamma(n + alpha + beta + 1)
        + math.lgamma(n + alpha + 1)
    )
    den = (
        math.lgamma(alpha + 1)
        + math.lgamma(alpha + beta + 2)
        + math.lgamma(n + 1)
        + math.lgamma(n + beta + 1)
    )
    return math.exp(num - den)


@dataclass(frozen=True)
class HarmonicScale:
    """One harmonic scale: index, ambient dimension, and derived constants.

    Defaults describe the sphere S^d, where both Jacobi indices equal
    (d - 2) / 2.  Explicit alpha/beta may be passed for other two-point
    homogeneous spaces together with the eigenvalue multiplier epsilon.
    The Laplace-Beltrami eigenvalue is carried for bookkeeping only.
    """

    n: int
    d: int = 2
    alpha: float = field(default=None)  # type: ignore[assignment]
    beta: float = field(default=None)  # type: ignore[assignment]
    epsilon: int = 1
    volume: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameterError("scale index must be nonnegative")
        if self.d < 2:
            raise InvalidParameterError("ambient dimension must be at least 2")
        alpha = (self.d - 2) / 2.0 if self.alpha is None else float(self.alpha)
        beta = alpha if self.beta is None else float(self.beta)
        if beta < -0.5 or alpha < beta or alpha + beta <= -1.0:
            raise InvalidParameterError(
                "Jacobi indices must satisfy alpha >= beta >= -1/2, alpha + beta > -1"
            )
        volume = sphere_surface_area(self.d) if self.volume is None else float(self.volume)
        if volume <= 0:
            raise InvalidParameterError("volume must be positive")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "volume", volume)

    @property
    def delta(self) -> float:
        """Dimension of the scale-n subspace."""
        return subspace_dimension(self.n, self.alpha, self.beta)

    @property
    def lambda_lb(self) -> float:
        """Laplace-Beltrami eigenvalue (bookkeeping, unused numerically)."""
        ne = self.n * self.epsilon
        return -float(ne * (ne + self.alpha + self.beta + 1))


def legendre(n: int, x):
    """Legendre polynomial of degree n via the upward three-term recurrence.

    Accepts scalars or arrays in [-1, 1]; stable on the whole interval.
    """
    if n < 0:
        raise InvalidParameterError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = x.copy()
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def legendre_table(nmax: int, x: np.ndarray) -> np.ndarray:
    """All Legendre polynomials of degree 0..nmax at once, shape (nmax+1, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((nmax + 1, x.size))
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x
    for k in range(1, nmax):
        out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1)
    return out


def _jacobi_raw(n: int, alpha: float, beta: float, x: np.ndarray) -> np.ndarray:
    """Unnormalized Jacobi polynomial by the standard three-term recurrence."""
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 0.5 * ((alpha + beta + 2) * x + (alpha - beta))
    for k in range(2, n + 1):
        a1 = 2 * k * (k + alpha + beta) * (2 * k + alpha + beta - 2)
        a2 = (2 * k + alpha + beta - 1) * (alpha**2 - beta**2)
        a3 = (2 * k + alpha + beta - 1) * (2 * k + alpha + beta) * (2 * k + alpha + beta - 2)
        a4 = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + alpha + beta)
        prev, cur = cur, ((a2 + a3 * x) * cur - a4 * prev) / a1
    return cur


def jacobi_normalized(n: int, alpha: float, beta: float, x):
    """Jacobi polynomial normalized to one at x = 1.

    The normalizing constant is the recurrence value at 1, so the result
    is exactly 1.0 there regardless of rounding in the constant itself.
    """
    if n < 0:
        raise InvalidParameterError("degree must be nonnegative")
    if alpha <= -1 or beta <= -1:
        raise InvalidParameterError("Jacobi indices must exceed -1")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    at_one = _jacobi_raw(n, alpha, beta, np.ones(1))[0]
    vals = _jacobi_raw(n, alpha, beta, x) / at_one
    return float(vals[0]) if scalar else vals


def zonal_kernel(scale: HarmonicScale, cosdist):
    """Zonal reproducing kernel of one scale as a function of geodesic cosine.

    Equals delta / volume at cosdist = 1 and reduces to
    (2n + 1) / (4 pi) * P_n on the 2-sphere.
    """
    cosdist = np.asarray(cosdist, dtype=float)
    if np.any(np.abs(cosdist) > 1 + 1e-12):
        raise InvalidParameterError("geodesic cosine must lie in [-1, 1]")
    cosdist = np.clip(cosdist, -1.0, 1.0)
    if scale.alpha == 0.0 and scale.beta == 0.0:
        base = legendre(scale.n, cosdist)
    else:
        base = jacobi_normalized(scale.n, scale.alpha, scale.beta, cosdist)
    return (scale.delta / scale.volume) * base


def sphere_point(colatitude: float, longitude: float) -> np.ndarray:
    """Unit 3-vector from colatitude in [0, pi] and longitude in [0, 2 pi)."""
    if not 0.0 <= colatitude <= math.pi:
        raise InvalidParameterError("colatitude must lie in [0, pi]")
    s = math.sin(colatitude)
    return np.array(
        [s * math.cos(longitude), s * math.sin(longitude), math.cos(colatitude)]
    )


def point_angles(x: np.ndarray) -> tuple[float, float]:
    """Colatitude and longitude of a unit 3-vector, longitude in [0, 2 pi)."""
    x = validate_unit(x)
    colat = math.acos(min(1.0, max(-1.0, float(x[2]))))
    lon = math.atan2(float(x[1]), float(x[0])) % (2 * math.pi)
    return colat, lon


def validate_unit(x) -> np.ndarray:
    """Check that a 3-vector is unit length to tight tolerance; return it."""
    x = np.asarray(x, dtype=float)
    if x.shape != (3,):
        raise InvalidParameterError("sphere points are 3-vectors")
    if abs(float(x @ x) - 1.0) > 2 * UNIT_NORM_TOL:
        raise InvalidParameterError("sphere point is not unit length")
    return x


def random_pole(rng: np.random.Generator) -> np.ndarray:
    """Uniform random point on the 2-sphere."""
    z = rng.uniform(-1.0, 1.0)
    lon = rng.uniform(0.0, 2 * math.pi)
    s = math.sqrt(max(0.0, 1.0 - z * z))
    return np.array([s * math.cos(lon), s * math.sin(lon), z])


def geodesic_cos(x, y) -> float:
    """Cosine of the geodesic distance between two unit vectors.

    Rounding excursions beyond [-1, 1] up to 1e-10 are clamped; larger
    ones indicate non-unit input and raise.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    c = float(x @ y)
    if abs(c) > 1.0 + 1e-10:
        raise InvalidParameterError("inputs to geodesic_cos must be unit vectors")
    return min(1.0, max(-1.0, c))


def equiangular_grid(n_colat: int = 60, n_lon: int = 120):
    """Cell-centered equiangular grid on the 2-sphere.

    Returns
    -------
    points : ndarray, shape (n_colat * n_lon, 3)
    colatitudes : ndarray, shape (n_colat,)
    longitudes : ndarray, shape (n_lon,)

    Points are ordered colatitude-major, longitude fastest.
    """
    if n_colat < 1 or n_lon < 1:
        raise InvalidParameterError("grid needs at least one cell per axis")
    colat = (np.arange(n_colat) + 0.5) * math.pi / n_colat
    lon = (np.arange(n_lon) + 0.5) * 2 * math.pi / n_lon
    cg, lg = np.meshgrid(colat, lon, indexing="ij")
    s = np.sin(cg)
    points = np.column_stack(
        [(s * np.cos(lg)).ravel(), (s * np.sin(lg)).ravel(), np.cos(cg).ravel()]
    )
    return points, colat, lon


@dataclass(frozen=True)
class ZonalField:
    """Axially symmetric field on the 2-sphere: scale coefficients about a pole.

    The field value at x is the coefficient-weighted sum of zonal kernels,
    sum over n = 1..M of coeff[n-1] * kernel_n(<x, pole>).
    """

    pole: np.ndarray
    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pole", validate_unit(self.pole))
        coeffs = np.asarray(self.coefficients, dtype=float)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise InvalidParameterError("coefficients must be a nonempty 1-d array")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def truncation(self) -> int:
        return int(self.coefficients.size)


def reconstruct_field(field: ZonalField, points: np.ndarray) -> np.ndarray:
    """Evaluate a zonal field at an array of unit points, shape (G, 3)."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 3:
        raise InvalidParameterError("points must have shape (G, 3)")
    cosd = np.clip(points @ field.pole, -1.0, 1.0)
    m = field.truncation
    table = legendre_table(m, cosd)  # (m+1, G)
    n = np.arange(1, m + 1)
    weights = field.coefficients * (2 * n + 1) / (4 * math.pi)
    return weights @ table[1:]
