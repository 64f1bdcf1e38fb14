"""Bicomplex Gamma and bicomplex Mittag-Leffler functions.

Everything here is the componentwise lift of a complex kernel: an analytic
bicomplex function decomposes uniquely as f(xi) = f1(xi1) e1 + f2(xi2) e2
on the idempotent components, so bicomplex evaluation is two complex
evaluations plus a recombination.

The Mittag-Leffler parameter alpha is itself bicomplex, constrained to
|Im_j(alpha)| < Re(alpha), i.e. both idempotent components have positive
real part, so each component series converges.  alpha = 0 is admitted as
the explicit geometric-series special case E_0(xi) = 1/(1 - xi).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .bicomplex import Bicomplex, n_xi
from .errors import (
    BCGammaPole,
    BicomplexError,
    DomainAlpha,
    IntegralDomain,
    NullConeRoot,
    OutsideDisk,
)
from .kernels import (
    DEFAULT_OPTIONS,
    MLEvalOptions,
    cgamma,
    ml_contour,
    ml_series,
    ml_weierstrass,
    rgamma_euler,
)
from .quadrature import gauss_laguerre

_POLE_TOL = 1e-10


class MLParameter:
    """Admissible Mittag-Leffler parameter.

    Wraps a bicomplex alpha = a0 + i1 a1 + i2 a2 + j a3 and enforces
    |a3| < a0 (equivalently Re(alpha1) > 0 and Re(alpha2) > 0) at
    construction; alpha exactly 0 passes as the E_0 special case.
    """

    __slots__ = ("alpha", "alpha1", "alpha2")

    def __init__(self, alpha):
        alpha = Bicomplex.from_scalar(alpha)
        a1, a2 = alpha.to_idempotent()
        if alpha != Bicomplex(0.0, 0.0, 0.0, 0.0) and (a1.real <= 0.0 or a2.real <= 0.0):
            raise DomainAlpha(
                f"need |Im_j(alpha)| < Re(alpha): components have Re {a1.real}, {a2.real}"
            )
        self.alpha = alpha
        self.alpha1 = a1
        self.alpha2 = a2

    @classmethod
    def coerce(cls, value) -> "MLParameter":
        return value if isinstance(value, MLParameter) else cls(value)

    @property
    def a0(self) -> float:
        return self.alpha.x0

    @property
    def a1(self) -> float:
        return self.alpha.x1

    @property
    def a2(self) -> float:
        return self.alpha.x2

    @property
    def a3(self) -> float:
        return self.alpha.x3

    @property
    def is_zero(self) -> bool:
        return self.alpha == Bicomplex(0.0, 0.0, 0.0, 0.0)

    @property
    def is_real(self) -> bool:
        return self.alpha.x1 == 0.0 and self.alpha.x2 == 0.0 and self.alpha.x3 == 0.0

    def scaled(self, factor: float) -> "MLParameter":
        return MLParameter(self.alpha * factor)

    def __repr__(self):
        return f"MLParameter({self.alpha!r})"


def _component_pole(c: complex) -> int | None:
    """Nearest non-positive-integer pole index n (c ~ -n), or None."""
    n = round(c.real)
    if n <= 0 and abs(c - n) < _POLE_TOL:
        return -n
    return None


def _gamma_pole_guard(xi: Bicomplex):
    c1, c2 = xi.to_idempotent()
    m = _component_pole(c1)
    l = _component_pole(c2)
    if m is not None or l is not None:
        which = 1 if m is not None else 2
        raise BCGammaPole(
            f"bicomplex Gamma pole: xi1={c1}, xi2={c2} "
            f"(pole indices m={m}, l={l}; poles sit at xi1=-m, xi2=-l)",
            component=which,
            m=m,
            l=l,
        )
    return c1, c2


def bc_gamma(xi) -> Bicomplex:
    """Gamma(xi) = Gamma(xi1) e1 + Gamma(xi2) e2."""
    xi = Bicomplex.from_scalar(xi)
    c1, c2 = _gamma_pole_guard(xi)
    return Bicomplex.from_idempotent(cgamma(c1), cgamma(c2))


def bc_gamma_weierstrass(xi, n_factors: int = 100_000) -> Bicomplex:
    """Gamma via the inverted Euler product; converges O(1/n_factors)."""
    xi = Bicomplex.from_scalar(xi)
    c1, c2 = _gamma_pole_guard(xi)
    return Bicomplex.from_idempotent(
        1.0 / rgamma_euler(c1, n_factors), 1.0 / rgamma_euler(c2, n_factors)
    )


def _gamma_integral_component(c: complex, nodes_x, nodes_w) -> complex:
    # Gauss-Laguerre computes int e^-p p^(c+shift-1) dp = Gamma(c+shift);
    # the shift keeps the integrand's p->0 behavior smooth enough for the
    # rule (p^(c-1) with Re c near 0.5 converges hopelessly slowly), and is
    # removed with the functional equation, which involves no Gamma values.
    shift = max(0, math.ceil(8.0 - c.real))
    total = 0.0 + 0.0j
    exponent = c + shift - 1.0
    for p, w in zip(nodes_x, nodes_w):
        if w == 0.0:
            continue
        total += w * cmath.exp(exponent * math.log(p))
    for k in range(shift):
        total /= c + k
    return total


def bc_gamma_integral(xi, nodes: int = 64) -> Bicomplex:
    """Gamma via componentwise Gauss-Laguerre quadrature of e^-p p^(xi-1).

    Requires Re of both components positive (the integration path runs over
    positive reals componentwise).
    """
    xi = Bicomplex.from_scalar(xi)
    c1, c2 = _gamma_pole_guard(xi)
    if c1.real <= 0.0 or c2.real <= 0.0:
        raise IntegralDomain(
            f"integral form needs Re(xi1) > 0 and Re(xi2) > 0, got {c1.real}, {c2.real}"
        )
    x, w = gauss_laguerre(int(nodes))
    return Bicomplex.from_idempotent(
        _gamma_integral_component(c1, x, w), _gamma_integral_component(c2, x, w)
    )


def _tag_component(alpha, index: int, exc: BicomplexError) -> BicomplexError:
    tagged = type(exc)(f"component {index} (alpha={alpha}): {exc}")
    tagged.__dict__.update(exc.__dict__)
    return tagged


def bc_ml(alpha, xi, opts: MLEvalOptions | None = None, algorithm: str = "series",
          n_factors: int = 100_000) -> Bicomplex:
    """Bicomplex Mittag-Leffler E_alpha(xi), componentwise on (xi1, xi2).

    `algorithm` picks the complex kernel: "series" (default),
    "weierstrass" (Euler-product coefficients, O(1/n_factors) accurate), or
    "contour" (loop quadrature; real alpha only).  Component errors are
    re-raised with the component tagged.
    """
    opts = opts or DEFAULT_OPTIONS
    alpha = MLParameter.coerce(alpha)
    xi = Bicomplex.from_scalar(xi)
    x1, x2 = xi.to_idempotent()
    if algorithm == "series":
        kernel = lambda a, z: ml_series(a, z, opts)
    elif algorithm == "weierstrass":
        kernel = lambda a, z: ml_weierstrass(a, z, n_factors, opts).value
    elif algorithm == "contour":
        if not alpha.is_real or alpha.is_zero:
            raise DomainAlpha("contour algorithm needs real alpha > 0")
        kernel = lambda a, z: ml_contour(a.real, z, opts) if z != 0 else 1.0 + 0.0j
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    try:
        v1 = kernel(alpha.alpha1, x1)
    except BicomplexError as e:
        raise _tag_component(alpha.alpha1, 1, e) from e
    try:
        v2 = kernel(alpha.alpha2, x2)
    except BicomplexError as e:
        raise _tag_component(alpha.alpha2, 2, e) from e
    return Bicomplex.from_idempotent(v1, v2)


# -- closed-form special cases -------------------------------------------
#
# Each tag is the closed form of E_alpha at one small alpha, expressed as a
# function of the Mittag-Leffler argument so it can be compared directly
# against bc_ml(alpha, xi).  The alpha = 3 case is the three-fold split of
# the exponential, (1/3)(e^u + 2 e^(-u/2) cos(sqrt(3) u / 2)) at u = xi^(1/3);
# its value at 0 is 1, matching the series.

_SQRT3_HALF = math.sqrt(3.0) / 2.0


def _case0(w: complex) -> complex:
    return 1.0 / (1.0 - w)


def _case1(w: complex) -> complex:
    return cmath.exp(w)


def _case2cos(w: complex) -> complex:
    return cmath.cos(cmath.sqrt(-w))


def _case2cosh(w: complex) -> complex:
    return cmath.cosh(cmath.sqrt(w))


def _case3(w: complex) -> complex:
    u = w ** (1.0 / 3.0)
    return (cmath.exp(u) + 2.0 * cmath.exp(-0.5 * u) * cmath.cos(_SQRT3_HALF * u)) / 3.0


def _case4(w: complex) -> complex:
    u = w ** 0.25
    return 0.5 * (cmath.cos(u) + cmath.cosh(u))


SPECIAL_CASE_TAGS = ("0", "1", "2cos", "2cosh", "3", "4")

_CASE_FUNCS = {
    "0": _case0,
    "1": _case1,
    "2cos": _case2cos,
    "2cosh": _case2cosh,
    "3": _case3,
    "4": _case4,
}

SPECIAL_CASE_ALPHA = {"0": 0.0, "1": 1.0, "2cos": 2.0, "2cosh": 2.0, "3": 3.0, "4": 4.0}


def special_case(tag, xi) -> Bicomplex:
    """Closed form of E_alpha(xi) for tag in {0, 1, 2cos, 2cosh, 3, 4}.

    Tag 0 needs n_xi(xi) < 1 (OutsideDisk); tags 3 and 4 take fractional
    roots and need xi off the null cone (NullConeRoot).
    """
    tag = str(tag)
    if tag not in _CASE_FUNCS:
        raise ValueError(f"unknown special-case tag {tag!r}; use one of {SPECIAL_CASE_TAGS}")
    xi = Bicomplex.from_scalar(xi)
    if tag == "0" and n_xi(xi) >= 1.0:
        raise OutsideDisk(f"E_0 closed form needs n_xi < 1, got {n_xi(xi)}")
    if tag in ("3", "4") and xi.is_null_cone():
        raise NullConeRoot(f"tag {tag} takes fractional roots; xi on the null cone: {xi!r}")
    f = _CASE_FUNCS[tag]
    c1, c2 = xi.to_idempotent()
    return Bicomplex.from_idempotent(f(c1), f(c2))


def order_and_type(alpha):
    """Growth order and type of E_alpha as an entire function.

    Returns (rho, sigma) with rho = (1/Re alpha1) e1 + (1/Re alpha2) e2 as a
    Hyperbolic number -- identical to the cartesian form
    (a0 - a3 j)/(a0^2 - a3^2) -- and sigma = 1.0.
    """
    from .bicomplex import Hyperbolic

    alpha = MLParameter.coerce(alpha)
    if alpha.is_zero:
        raise DomainAlpha("order/type undefined at alpha = 0 (E_0 is not entire)")
    return Hyperbolic(1.0 / alpha.alpha1.real, 1.0 / alpha.alpha2.real), 1.0


def growth_max_modulus(alpha: float, radius: float, angles: int = 64,
                       opts: MLEvalOptions | None = None) -> float:
    """M(r) = max over ray angles of |E_alpha| on the circle |z| = r.

    Uses the raw series summation: at off-axis angles the value sinks into
    the cancellation noise floor eps * exp(r^(1/alpha)), but the maximum is
    attained on or near the positive axis at that same exponential scale, so
    M(r) itself stays relatively accurate.
    """
    from .kernels import _ml_series_raw

    opts = opts or DEFAULT_OPTIONS
    best = 0.0
    for k in range(angles):
        z = cmath.rect(radius, 2.0 * math.pi * k / angles)
        value, _, _ = _ml_series_raw(complex(alpha), z, 0, opts)
        best = max(best, abs(value))
    return best


def growth_order_slope(alpha: float, radii=None, angles: int = 64,
                       opts: MLEvalOptions | None = None):
    """Least-squares slope of log log M(r) against log r.

    For an entire function of order rho the slope tends to rho; radii
    default to the series-evaluable range for the given alpha: |E| reaches
    exp(r^(1/alpha)), which overflows doubles early when alpha is small,
    while for larger alpha the radii must be big enough that the
    subexponential prefactor (e.g. the 1/2 in cosh) stops biasing the fit.
    """
    if radii is None:
        if alpha < 1.0:
            radii = (5.0, 10.0, 20.0)
        elif alpha < 1.5:
            radii = (5.0, 10.0, 20.0, 40.0)
        else:
            radii = (20.0, 40.0, 80.0, 160.0)
    if opts is None:
        opts = MLEvalOptions(max_terms=4000)
    rows = []
    for r in radii:
        m = growth_max_modulus(alpha, r, angles, opts)
        rows.append((r, m))
    xs = np.log([r for r, _ in rows])
    ys = np.log(np.log([m for _, m in rows]))
    slope = float(np.polyfit(xs, ys, 1)[0])
    return slope, rows


def laplace_transform_ml(alpha: float, xi, nodes: int = 200,
                         opts: MLEvalOptions | None = None) -> Bicomplex:
    """int_0^infty e^-t E_alpha(t^alpha xi) dt by componentwise Gauss-Laguerre.

    Converges to 1/(1 - xi) on n_xi(xi) < 1.  For non-integer alpha the
    integrand's first few series terms carry fractional powers of t that
    stall the quadrature, so those terms are integrated exactly
    (int e^-t t^(alpha k) dt cancels the coefficient Gamma) and the rule
    only sees the smooth series tail.  Nodes whose total contribution is
    bounded below 1e-20 of scale are skipped.
    """
    from .kernels import _ml_series_raw

    opts = opts or DEFAULT_OPTIONS
    a = float(alpha)
    if a <= 0.0:
        raise DomainAlpha("Laplace representation needs real alpha > 0")
    xi = Bicomplex.from_scalar(xi)
    x, w = gauss_laguerre(int(nodes))
    inner_opts = MLEvalOptions(rel_tol=1e-15, max_terms=max(800, opts.max_terms),
                               contour_nodes=opts.contour_nodes,
                               contour_radius_factor=opts.contour_radius_factor)
    k0 = 0 if a.is_integer() else math.ceil(9.0 / a)
    comps = []
    for c in xi.to_idempotent():
        decay = 1.0 - abs(c) ** (1.0 / a) if abs(c) < 1.0 else 0.0
        total = 0.0 + 0.0j
        for k in range(k0):
            total += c ** k
        for t, wt in zip(x, w):
            if wt == 0.0 or decay * t > 46.0:
                continue
            value, _, _ = _ml_series_raw(complex(a), (t ** a) * c, k0, inner_opts)
            total += wt * value
        comps.append(total)
    return Bicomplex.from_idempotent(comps[0], comps[1])
