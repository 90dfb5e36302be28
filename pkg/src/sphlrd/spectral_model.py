"""Per-scale spectral model for isotropic functional time series on the 2-sphere.

Each harmonic scale n carries a scalar spectral density

    f_n(omega) = b_eta0[n] * M_n(omega) * (4 sin^2(omega/2)) ** (-alpha_n / 2)

where M_n is a short-range ARMA factor with per-scale coefficients and
alpha_n in [0, 1/2) is the memory exponent.  alpha_n > 0 makes the
density blow up like |omega|^(-alpha_n) at the origin (long-range
dependence); alpha_n = 0 scales are short-range.  A model bundles the
ARMA part, the true memory profile, the set of short-range scales, the
base levels b_eta0, and the axis pole used for field reconstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import streams
from ._quad import half_line_nodes
from .errors import InvalidModelError, InvalidParameterError, SingularFrequencyError
from .harmonics import validate_unit

ALPHA_MAX = 0.5
ROOT_MARGIN = 1e-9
ROOT_SEPARATION = 1e-6
CANDIDATE_CLIP = 1e-4


@dataclass(frozen=True)
class LrdProfile:
    """Memory exponents alpha_n for scales n = 1..M.

    Exponents live in [0, 1/2); zeros are allowed exactly on the declared
    short-range scales and required to be strictly positive elsewhere.
    """

    alphas: np.ndarray
    label: str = ""
    srd_scales: frozenset = frozenset()

    def __post_init__(self):
        alphas = np.asarray(self.alphas, dtype=float)
        if alphas.ndim != 1 or alphas.size == 0:
            raise InvalidParameterError("alphas must be a nonempty 1-d array")
        if np.any(alphas < 0) or np.any(alphas >= ALPHA_MAX):
            raise InvalidModelError("memory exponents must lie in [0, 1/2)")
        srd = frozenset(int(s) for s in self.srd_scales)
        for s in srd:
            if not 1 <= s <= alphas.size:
                raise InvalidParameterError("short-range scale index out of range")
        lrd_mask = np.ones(alphas.size, dtype=bool)
        for s in srd:
            lrd_mask[s - 1] = False
        if np.any(alphas[lrd_mask] == 0.0):
            raise InvalidModelError(
                "memory exponent is zero outside the declared short-range set"
            )
        if np.any(alphas[~lrd_mask] != 0.0):
            raise InvalidModelError("memory exponent is nonzero on a short-range scale")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "srd_scales", srd)

    @property
    def truncation(self) -> int:
        return int(self.alphas.size)

    def alpha(self, n: int) -> float:
        if not 1 <= n <= self.truncation:
            raise InvalidParameterError(f"scale {n} outside 1..{self.truncation}")
        return float(self.alphas[n - 1])


def compact_profile(truncation: int, srd_scales=()):
    """Default decaying memory profile, largest at the lowest scale."""
    n = np.arange(1, truncation + 1)
    alphas = 0.45 / (1.0 + 0.15 * n)
    for s in srd_scales:
        alphas[s - 1] = 0.0
    return LrdProfile(alphas=alphas, label="compact", srd_scales=frozenset(srd_scales))


def noncompact_profile(truncation: int, srd_scales=()):
    """Default increasing memory profile, bounded away from zero and 1/2."""
    n = np.arange(1, truncation + 1)
    alphas = 0.2 + 0.25 * n / (n + 5.0)
    for s in srd_scales:
        alphas[s - 1] = 0.0
    return LrdProfile(alphas=alphas, label="noncompact", srd_scales=frozenset(srd_scales))


def _poly_roots(coeffs_increasing) -> np.ndarray:
    """Roots of a polynomial given coefficients in increasing degree order."""
    c = np.asarray(coeffs_increasing, dtype=float)
    nz = np.nonzero(c)[0]
    if nz.size == 0 or nz[-1] == 0:
        return np.empty(0, dtype=complex)
    return np.polynomial.polynomial.polyroots(c[: nz[-1] + 1])


@dataclass(frozen=True)
class SphArmaSpec:
    """Per-scale ARMA coefficients and innovation variances.

    phi has shape (M, p) and psi shape (M, q); row n-1 holds the scale-n
    autoregressive and moving-average eigenvalues.  Validation requires,
    for every scale, that 1 - sum_k phi[k] z^k and 1 + sum_l psi[l] z^l
    have all roots strictly outside the unit circle and that the AR
    polynomial shares no root with sum_l psi[l] z^l.
    """

    phi: np.ndarray
    psi: np.ndarray
    sigma2: np.ndarray

    def __post_init__(self):
        phi = np.atleast_2d(np.asarray(self.phi, dtype=float))
        psi = np.atleast_2d(np.asarray(self.psi, dtype=float))
        sigma2 = np.asarray(self.sigma2, dtype=float)
        m = sigma2.size
        if sigma2.ndim != 1 or m == 0:
            raise InvalidParameterError("sigma2 must be a nonempty 1-d array")
        if np.any(sigma2 <= 0):
            raise InvalidModelError("innovation variances must be positive")
        if phi.shape[0] != m and phi.size == 0:
            phi = np.zeros((m, 0))
        if psi.shape[0] != m and psi.size == 0:
            psi = np.zeros((m, 0))
        if phi.shape[0] != m or psi.shape[0] != m:
            raise InvalidParameterError("phi and psi must have one row per scale")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "sigma2", sigma2)
        for n in range(1, m + 1):
            self._validate_scale(n)

    def _validate_scale(self, n: int) -> None:
        ar = np.concatenate(([1.0], -self.phi[n - 1]))
        ar_roots = _poly_roots(ar)
        if ar_roots.size and np.min(np.abs(ar_roots)) <= 1.0 + ROOT_MARGIN:
            raise InvalidModelError(
                f"scale {n}: autoregressive roots must lie strictly outside the unit circle"
            )
        ma = np.concatenate(([1.0], self.psi[n - 1]))
        ma_roots = _poly_roots(ma)
        if ma_roots.size and np.min(np.abs(ma_roots)) <= 1.0 + ROOT_MARGIN:
            raise InvalidModelError(
                f"scale {n}: moving-average transfer must be invertible"
            )
        # the raw MA polynomial sum_l psi_l z^l must not share roots with the AR part
        raw_ma_roots = _poly_roots(np.concatenate(([0.0], self.psi[n - 1])))
        if ar_roots.size and raw_ma_roots.size:
            dist = np.abs(ar_roots[:, None] - raw_ma_roots[None, :])
            if np.min(dist) <= ROOT_SEPARATION:
                raise InvalidModelError(f"scale {n}: AR and MA polynomials share a root")

    @property
    def truncation(self) -> int:
        return int(self.sigma2.size)

    @property
    def p(self) -> int:
        return int(self.phi.shape[1])

    @property
    def q(self) -> int:
        return int(self.psi.shape[1])


def arma_srd_factor(spec: SphArmaSpec, n: int, omega):
    """Short-range ARMA spectral factor of one scale.

    |1 + sum_l psi_l e^(-i l omega)|^2 / |1 - sum_k phi_k e^(-i k omega)|^2,
    bounded away from zero and infinity by the root conditions.  Accepts
    scalar or array frequencies.
    """
    if not 1 <= n <= spec.truncation:
        raise InvalidParameterError(f"scale {n} outside 1..{spec.truncation}")
    omega = np.asarray(omega, dtype=float)
    scalar = omega.ndim == 0
    w = np.atleast_1d(omega)
    num = np.ones(w.size, dtype=complex)
    for l, c in enumerate(spec.psi[n - 1], start=1):
        num += c * np.exp(-1j * l * w)
    den = np.ones(w.size, dtype=complex)
    for k, c in enumerate(spec.phi[n - 1], start=1):
        den -= c * np.exp(-1j * k * w)
    vals = np.abs(num) ** 2 / np.abs(den) ** 2
    return float(vals[0]) if scalar else vals


@dataclass(frozen=True)
class ModelSpec:
    """Complete data-generating model for one scenario.

    b_eta0 holds the short-range base level of each scale's density and
    defaults to sigma2 / (2 pi), which makes the model of a scale with
    alpha = 0 and no ARMA part exactly white noise of variance sigma2.
    """

    arma: SphArmaSpec
    lrd: LrdProfile
    pole: np.ndarray
    srd_set: frozenset = frozenset()
    b_eta0: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        m = self.arma.truncation
        if self.lrd.truncation != m:
            raise InvalidModelError("memory profile and ARMA part disagree on truncation")
        srd = frozenset(int(s) for s in self.srd_set)
        if srd != self.lrd.srd_scales:
            raise InvalidModelError(
                "model short-range set must match the memory profile's"
            )
        b = self.b_eta0
        if b is None:
            b = self.arma.sigma2 / (2 * math.pi)
        b = np.asarray(b, dtype=float)
        if b.shape != (m,) or np.any(b <= 0):
            raise InvalidModelError("b_eta0 must be positive with one entry per scale")
        object.__setattr__(self, "pole", validate_unit(self.pole))
        object.__setattr__(self, "srd_set", srd)
        object.__setattr__(self, "b_eta0", b)

    @property
    def truncation(self) -> int:
        return int(self.arma.truncation)

    @property
    def lrd_set(self) -> tuple:
        return tuple(
            n for n in range(1, self.truncation + 1) if n not in self.srd_set
        )


def spectral_density(model: ModelSpec, theta: LrdProfile, n: int, omega):
    """Scale-n spectral density under memory profile theta.

    Behaves like |omega| ** (-alpha) near the origin when alpha > 0 and is
    continuous there when alpha = 0.  Frequencies where sin(omega / 2)
    vanishes raise for long-memory scales.
    """
    if theta.truncation != model.truncation:
        raise InvalidParameterError("profile truncation does not match the model")
    alpha = theta.alpha(n)
    omega = np.asarray(omega, dtype=float)
    scalar = omega.ndim == 0
    w = np.atleast_1d(omega)
    s = 4.0 * np.sin(w / 2.0) ** 2
    base = model.b_eta0[n - 1] * arma_srd_factor(model.arma, n, w)
    if alpha == 0.0:
        vals = np.atleast_1d(base)
    else:
        if np.any(s == 0.0):
            raise SingularFrequencyError(
                f"scale {n} has long memory; density undefined at omega = 0"
            )
        vals = np.atleast_1d(base) * s ** (-alpha / 2.0)
    return float(vals[0]) if scalar else vals


def autocovariance_b0(model: ModelSpec, theta: LrdProfile, n: int) -> float:
    """Lag-zero autocovariance of scale n: the density integrated over [-pi, pi].

    Uses the singularity-aware panel rule from the quadrature helper, so
    the origin is never evaluated.
    """
    nodes, weights = half_line_nodes()
    vals = spectral_density(model, theta, n, nodes)
    return 2.0 * float(np.sum(weights * vals))


@dataclass(frozen=True)
class SummabilityReport:
    """Diagnostics for scale-wise decay of the lag-zero autocovariances."""

    b0: np.ndarray
    weighted_partial_sums: np.ndarray
    weighted_sq_partial_sums: np.ndarray
    tail_exponent: float | None
    flagged: bool


def _tail_exponent(values: np.ndarray) -> float | None:
    """Log-log slope of a positive sequence over its upper half of indices."""
    m = values.size
    if m < 8:
        return None
    start = m // 2
    n = np.arange(1, m + 1)[start:]
    y = values[start:]
    slope = np.polyfit(np.log(n), np.log(y), 1)[0]
    return float(slope)


def validate_summability(model: ModelSpec) -> SummabilityReport:
    """Report partial sums and the fitted tail exponent of B_n(0).

    Flags (but never raises) when the fitted exponent is -2 or larger,
    since the dimension-weighted series then fails to converge.  Models
    with fewer than 8 scales report no exponent and no flag.
    """
    m = model.truncation
    b0 = np.array([autocovariance_b0(model, model.lrd, n) for n in range(1, m + 1)])
    dims = 2 * np.arange(1, m + 1) + 1
    report_exponent = _tail_exponent(b0)
    return SummabilityReport(
        b0=b0,
        weighted_partial_sums=np.cumsum(dims * b0),
        weighted_sq_partial_sums=np.cumsum(dims * b0**2),
        tail_exponent=report_exponent,
        flagged=report_exponent is not None and report_exponent >= -2.0,
    )


def candidate_family(
    count: int,
    truncation: int,
    seed: int,
    order: str = "decreasing",
    srd_scales=(),
) -> list[LrdProfile]:
    """Random memory-profile candidates from scaled beta draws.

    Candidate i (1-based) draws one value per long-range scale from
    Beta(2, 5 i / (i + 1)), scales by one half, clips into the open
    admissible interval, and arranges the values monotonically in n.
    Scales in srd_scales receive exponent zero in every candidate.
    """
    if count < 1:
        raise InvalidParameterError("candidate count must be positive")
    if order not in ("decreasing", "increasing"):
        raise InvalidParameterError("order must be 'decreasing' or 'increasing'")
    srd = frozenset(int(s) for s in srd_scales)
    lrd_idx = [n - 1 for n in range(1, truncation + 1) if n not in srd]
    out = []
    for i in range(1, count + 1):
        rng = streams.substream(seed, streams.CANDIDATES, i)
        draws = 0.5 * rng.beta(2.0, 5.0 * i / (i + 1.0), size=len(lrd_idx))
        draws = np.clip(draws, CANDIDATE_CLIP, ALPHA_MAX - CANDIDATE_CLIP)
        draws = np.sort(draws)
        if order == "decreasing":
            draws = draws[::-1]
        alphas = np.zeros(truncation)
        alphas[lrd_idx] = draws
        out.append(LrdProfile(alphas=alphas, label=f"beta-{i}", srd_scales=srd))
    return out
