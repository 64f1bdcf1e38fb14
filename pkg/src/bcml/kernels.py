"""Complex-plane scalar kernels: Gamma, reciprocal Gamma, and the
one-parameter Mittag-Leffler function E_a(z) = sum_k z^k / Gamma(a k + 1).

These are the componentwise engines behind every bicomplex special function
in this package: a bicomplex evaluation is two independent complex
evaluations on the idempotent components.

Three independent Mittag-Leffler algorithms are provided:

  ml_series       power series with compensated summation (primary)
  ml_weierstrass  series with 1/Gamma from the truncated Euler product
  ml_contour      Hankel-loop contour integral, real a > 0

and they deliberately share as little code as the mathematics allows, so
that agreement between them is meaningful evidence of correctness.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainAlpha, GammaPole, NotConverged, PoleOnContour
from .quadrature import gauss_legendre

EULER_GAMMA = 0.5772156649015329

_EPS = 2.220446049250313e-16
_LOG_SQRT_TWO_PI = 0.9189385332046727


@dataclass(frozen=True)
class MLEvalOptions:
    """Knobs for the Mittag-Leffler evaluators.

    rel_tol bounds the truncation tail relative to the value; max_terms caps
    the series; contour_nodes is the total quadrature budget of ml_contour
    and contour_radius_factor scales its arc radius.
    """

    rel_tol: float = 1e-13
    max_terms: int = 400
    contour_nodes: int = 200
    contour_radius_factor: float = 2.0

    def __post_init__(self):
        if not (0.0 < self.rel_tol <= 1e-6):
            raise ValueError("rel_tol must lie in (0, 1e-6]")
        if self.max_terms < 8:
            raise ValueError("max_terms must be at least 8")
        if self.contour_nodes < 32 or self.contour_nodes % 2:
            raise ValueError("contour_nodes must be even and >= 32")


DEFAULT_OPTIONS = MLEvalOptions()


# -- Gamma ------------------------------------------------------------------
#
# Lanczos approximation with Godfrey's 15-coefficient table (g = 607/128),
# accurate to ~1e-14 relative across the right half-plane, with reflection
# for Re z < 0.5.  Evaluated in log form so huge values overflow gracefully
# and reciprocals underflow to zero instead of blowing up.

LANCZOS_G = 607.0 / 128.0
LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)


def _lanczos_sum(w: complex) -> complex:
    s = LANCZOS_COEFFS[0]
    for k in range(1, 15):
        s = s + LANCZOS_COEFFS[k] / (w + k)
    return s


def loggamma_right(z: complex) -> complex:
    """log Gamma(z) for Re z >= 0.5 (not necessarily the principal branch
    in the imaginary part; only ever exponentiated here)."""
    w = z - 1.0
    t = w + LANCZOS_G + 0.5
    return _LOG_SQRT_TWO_PI + (w + 0.5) * cmath.log(t) - t + cmath.log(_lanczos_sum(w))


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and float(z.real).is_integer()


def cgamma(z) -> complex:
    """Complex Gamma.  Raises GammaPole at non-positive integers."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise GammaPole(f"Gamma pole at {z}")
    if z == 1.0 or z == 2.0:
        return 1.0 + 0.0j
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * cgamma(1.0 - z))
    return cmath.exp(loggamma_right(z))


def rgamma(z) -> complex:
    """Entire reciprocal Gamma; exactly 0 at non-positive integers."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        return 0.0 + 0.0j
    if z == 1.0 or z == 2.0:
        return 1.0 + 0.0j
    if z.real < 0.5:
        return cmath.sin(math.pi * z) * cmath.exp(loggamma_right(1.0 - z)) / math.pi
    return cmath.exp(-loggamma_right(z))


# -- Mittag-Leffler by power series ------------------------------------------


class _KahanSum:
    """Compensated complex accumulator."""

    __slots__ = ("re", "im", "cre", "cim")

    def __init__(self):
        self.re = self.im = self.cre = self.cim = 0.0

    def add(self, term: complex):
        y = term.real - self.cre
        t = self.re + y
        self.cre = (t - self.re) - y
        self.re = t
        y = term.imag - self.cim
        t = self.im + y
        self.cim = (t - self.im) - y
        self.im = t

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


def _check_alpha(alpha: complex) -> complex:
    alpha = complex(alpha)
    if alpha == 0:
        # admitted special case: E_0 is the geometric series
        return alpha
    if alpha.real <= 0.0:
        raise DomainAlpha(f"Re(alpha) must be positive (or alpha exactly 0), got {alpha}")
    return alpha


def _ml_series_raw(alpha: complex, z: complex, k0: int, opts: MLEvalOptions):
    """Sum the Mittag-Leffler series from term k0 upward.

    Returns (value, tail_estimate, max_term).  No cancellation-floor check;
    callers that control absolute error through external weighting (the
    quadrature evaluators) use this directly.
    """
    if z == 0:
        return ((1.0 + 0.0j) if k0 == 0 else 0.0 + 0.0j), 0.0, 1.0
    acc = _KahanSum()
    logz = cmath.log(z)
    max_term = 0.0
    small = 0
    k = k0
    if k0 == 0:
        acc.add(1.0 + 0.0j)
        max_term = 1.0
        k = 1
    last = 0.0
    while k <= k0 + opts.max_terms:
        # Re(alpha k + 1) >= 1, never a Gamma pole; the exp/log form keeps
        # z^k / Gamma(alpha k + 1) finite even where both factors overflow
        term = cmath.exp(k * logz - loggamma_right(alpha * k + 1.0))
        if not (math.isfinite(term.real) and math.isfinite(term.imag)):
            raise NotConverged(
                f"series term overflow at k={k} for alpha={alpha}, |z|={abs(z):.3g}"
            )
        acc.add(term)
        a = abs(term)
        last = a
        if a > max_term:
            max_term = a
        if a <= opts.rel_tol * max(abs(acc.value), 1e-300):
            small += 1
            if small >= 3:
                return acc.value, last, max_term
        else:
            small = 0
        k += 1
    raise NotConverged(
        f"series cap {opts.max_terms} hit for alpha={alpha}, |z|={abs(z):.3g} "
        f"(tail ~ {last:.3g})",
        tail=last,
    )


def ml_series(alpha, z, opts: MLEvalOptions | None = None) -> complex:
    """E_alpha(z) by the defining power series, Re(alpha) > 0.

    Fails honestly: NotConverged is raised both when the term cap is hit
    and when floating-point cancellation leaves the sum with less relative
    accuracy than rel_tol allows (large |z| at phases where E is small --
    the series has terms of size ~exp(|z|^(1/Re alpha)) that cancel).
    """
    opts = opts or DEFAULT_OPTIONS
    alpha = _check_alpha(alpha)
    z = complex(z)
    value, _tail, max_term = _ml_series_raw(alpha, z, 0, opts)
    noise = _EPS * max_term
    if noise > 100.0 * opts.rel_tol * max(abs(value), 1.0):
        raise NotConverged(
            f"cancellation floor {noise:.3g} exceeds tolerance for alpha={alpha}, "
            f"|z|={abs(z):.3g}, |E|~{abs(value):.3g}",
            tail=noise,
        )
    return value


# -- Mittag-Leffler via the Euler-product reciprocal Gamma --------------------


def rgamma_euler(w, n_factors: int) -> complex:
    """1/Gamma(w) = w e^{gamma w} prod_{n<=N} (1 + w/n) exp(-w/n).

    Truncation error is O(|w|^2 / N) relative; evaluated in log space with a
    vectorized inner product so N ~ 1e5 stays cheap.
    """
    w = complex(w)
    if w == 0:
        return 0.0 + 0.0j
    ns = np.arange(1.0, float(n_factors) + 1.0)
    x = w / ns
    s = np.sum(np.log1p(x) - x)
    return w * cmath.exp(EULER_GAMMA * w + complex(s))


class WeierstrassResult(tuple):
    """(value, error_estimate) with attribute access."""

    __slots__ = ()

    def __new__(cls, value: complex, error_estimate: float):
        return super().__new__(cls, (value, error_estimate))

    @property
    def value(self) -> complex:
        return self[0]

    @property
    def error_estimate(self) -> float:
        return self[1]


def ml_weierstrass(alpha, z, n_factors: int, opts: MLEvalOptions | None = None) -> WeierstrassResult:
    """E_alpha(z) with every 1/Gamma(alpha k + 1) from the truncated Euler
    product.  Converges O(1/n_factors); the returned estimate reflects that.
    """
    opts = opts or DEFAULT_OPTIONS
    alpha = _check_alpha(alpha)
    z = complex(z)
    if n_factors < 1:
        raise ValueError("n_factors must be >= 1")
    if z == 0:
        return WeierstrassResult(1.0 + 0.0j, 0.0)  # series at 0 is its k=0 term
    acc = _KahanSum()
    est = 0.0
    zk = 1.0 + 0.0j
    small = 0
    for k in range(opts.max_terms + 1):
        w = alpha * k + 1.0
        term = zk * rgamma_euler(w, n_factors)
        if not (math.isfinite(term.real) and math.isfinite(term.imag)):
            raise NotConverged(f"product-series term overflow at k={k}")
        acc.add(term)
        est += abs(term) * abs(w) ** 2 / (2.0 * n_factors)
        a = abs(term)
        if a <= opts.rel_tol * max(abs(acc.value), 1e-300):
            small += 1
            if small >= 3:
                return WeierstrassResult(acc.value, est)
        else:
            small = 0
        zk *= z
    raise NotConverged(f"product-series cap {opts.max_terms} hit for alpha={alpha}")


# -- Mittag-Leffler by Hankel-loop contour -----------------------------------
#
# E_a(z) = (1/2 pi i) \oint t^{a-1} e^t / (t^a - z) dt over a loop from
# -infinity around the origin and back, |arg t| < pi throughout, enclosing
# every pole of the integrand (all of which sit at |t| = |z|^{1/a}).
#
# Geometry: a circular arc of radius r joined to two rays toward -infinity
# at angles +-theta, theta < pi.  Each analytic piece is integrated with a
# Gauss-Legendre panel (the arc--ray joints are right-angle kinks, so a
# single rule across them would stall at O(h^2)).
#
# When |z|^{1/a} is large the arc that must enclose the poles passes through
# Re t ~ 2|z|^{1/a} where |e^t| dwarfs |E_a(z)| at most phases and double
# precision cancels catastrophically.  In that regime the loop is shrunk to
# a small one hugging the origin and every on-sheet pole t_m is added back
# exactly as its residue e^{t_m}/a; the ray angle moves away from any pole
# direction.  This keeps absolute quadrature noise ~eps while the residues
# carry the exponentially large or small parts exactly.

_RESIDUE_MODULUS = 7.0
_RAY_LENGTH = 60.0


def _onsheet_poles(alpha: float, z: complex) -> list[complex]:
    """Poles of t^(a-1) e^t/(t^a - z) on the principal sheet |arg t| < pi
    (boundary included for integer alpha, where there is no branch cut)."""
    modulus = abs(z) ** (1.0 / alpha)
    phase = cmath.phase(z)
    integer_alpha = abs(alpha - round(alpha)) < 1e-14
    poles = []
    for m in range(-4, 5):
        th = (phase + 2.0 * math.pi * m) / alpha
        if abs(th) < math.pi * (1.0 - 1e-14):
            poles.append(cmath.rect(modulus, th))
        elif integer_alpha and abs(abs(th) - math.pi) <= 1e-12:
            poles.append(cmath.rect(modulus, math.copysign(math.pi, th)))
    return poles


def _ray_angle(pole_angles: list[float]) -> float:
    """Ray angle in [pi-0.55, pi-0.05] maximizing angular distance to the
    pole directions (rays sit at +-theta; poles come in conjugate-ish sets,
    so distance to |angle| is what matters)."""
    default = math.pi - 0.1
    if not pole_angles:
        return default
    candidates = [math.pi - 0.05 - 0.5 * k / 12.0 for k in range(13)]
    return max(candidates, key=lambda th: min(abs(th - abs(p)) for p in pole_angles))


def ml_contour(alpha, z, opts: MLEvalOptions | None = None) -> complex:
    """E_alpha(z) by loop-contour quadrature, real alpha > 0, z != 0."""
    opts = opts or DEFAULT_OPTIONS
    a = float(alpha)
    if a <= 0.0:
        raise DomainAlpha(f"contour algorithm requires real alpha > 0, got {alpha}")
    z = complex(z)
    if z == 0:
        raise ValueError("contour representation needs z != 0 (E(0) = 1)")

    pole_modulus = abs(z) ** (1.0 / a)
    poles = _onsheet_poles(a, z)
    budget = opts.contour_nodes
    residue_mode = pole_modulus > _RESIDUE_MODULUS

    if not residue_mode:
        radius = opts.contour_radius_factor * max(1.0, pole_modulus)
        theta = math.pi - 0.1
        residue_sum = 0.0 + 0.0j
        n_arc = max(32, budget // 2)
        n_ray = max(24, budget // 4)
    else:
        radius = opts.contour_radius_factor
        theta = _ray_angle([cmath.phase(p) for p in poles])
        # The loop closed at -infinity encloses the disk |t| < radius AND the
        # wedge theta < |arg t| <= pi (the rays wrap around it); only poles in
        # the open sector |arg t| < theta escape it and re-enter as residues.
        residue_sum = sum(
            cmath.exp(p) for p in poles if abs(cmath.phase(p)) < theta
        ) / a
        n_arc = max(32, budget // 4)
        n_ray = max(24, 3 * budget // 8)

    pole_clearance = [math.inf]

    def integrand(t: complex) -> complex:
        den = t ** a - z
        d = abs(den)
        if d < pole_clearance[0]:
            pole_clearance[0] = d
        return t ** (a - 1.0) * cmath.exp(t) / den

    total = 0.0 + 0.0j

    # arc t = r e^{i phi}, phi in [-theta, theta]
    nodes, weights = gauss_legendre(n_arc)
    for x, w in zip(nodes, weights):
        phi = theta * x
        t = cmath.rect(radius, phi)
        total += (w * theta) * integrand(t) * 1j * t

    # rays t = s e^{+-i theta}, s in [radius, radius + RAY_LENGTH]
    breakpoints = [radius, radius + 12.0, radius + _RAY_LENGTH]
    if residue_mode and poles:
        gap = min(abs(theta - abs(cmath.phase(p))) for p in poles)
        if gap < 0.6 and radius < pole_modulus - 6.0:
            breakpoints = sorted(
                {radius, pole_modulus - 6.0, pole_modulus + 6.0, radius + 12.0,
                 max(radius + _RAY_LENGTH, pole_modulus + 20.0)}
            )
    per_panel = max(10, n_ray // (len(breakpoints) - 1))
    g_nodes, g_weights = gauss_legendre(per_panel)
    for sign in (1.0, -1.0):
        direction = cmath.rect(1.0, sign * theta)
        acc = 0.0 + 0.0j
        for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
            half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
            for x, w in zip(g_nodes, g_weights):
                acc += (w * half) * integrand((mid + half * x) * direction) * direction
        total += sign * acc

    # healthy geometries keep |t^a - z| above ~0.25 max(1, r^a) on the path;
    # a minimum below 1e-2 of that scale means a quadrature node effectively
    # hit a pole (e.g. a user-supplied radius factor near 1)
    if pole_clearance[0] < 1e-2 * max(1.0, radius ** a):
        raise PoleOnContour(
            f"integrand pole within {pole_clearance[0]:.3g} of the contour "
            f"(radius {radius:.3g}); increase contour_radius_factor"
        )
    return total / (2j * math.pi) + residue_sum
