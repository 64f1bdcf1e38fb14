"""Numerical certification of the bicomplex Mittag-Leffler identities.

Each operation evaluates both sides of one identity at concrete points and
packages the outcome as a ResidualReport: left/right values, absolute and
relative residuals, the tolerance applied, and the verdict.  The harness
doubles as a numerical-experiment tool, so checks return reports rather
than booleans and every tolerance can be overridden per call.

The pass rule follows the residual convention used throughout: relative
residual against the larger side, switching to the absolute residual when
both sides have norm below 1 (relative error blows up near zeros of E, for
instance E_2(-xi^2) near xi = pi/2, without the value being wrong).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .bicomplex import (
    Bicomplex,
    Hyperbolic,
    div,
    format_bicomplex,
    pow_int,
    root_q,
)
from .errors import BicomplexError, NullConeRoot, OutsideDisk
from .functions import (
    MLParameter,
    bc_ml,
    growth_order_slope,
    laplace_transform_ml,
    special_case,
)
from .kernels import DEFAULT_OPTIONS, MLEvalOptions, ml_contour, ml_series
from .series import differentiate, evaluate, ml_as_series

TOLERANCES = {
    "duplication": 1e-10,
    "multiplication": 1e-9,
    "laplace": 1e-6,
    "contour": 1e-7,
    "cr": 1e-7,
    "ode-coefficient": 1e-13,
    "ode-finite-difference": 1e-5,
    "special-case": 1e-10,
    "decomposition": 1e-12,
    "order-type": 1e-13,
    "gamma-integral": 1e-9,
    "gamma-weierstrass": 1e-3,
}


@dataclass(frozen=True)
class ResidualReport:
    identity: str
    point: dict
    lhs: Bicomplex
    rhs: Bicomplex
    abs_residual: float
    rel_residual: float
    tolerance: float | None
    passed: bool | None

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "point": self.point,
            "lhs": format_bicomplex(self.lhs),
            "rhs": format_bicomplex(self.rhs),
            "abs_residual": self.abs_residual,
            "rel_residual": self.rel_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def make_report(identity: str, point: dict, lhs: Bicomplex, rhs: Bicomplex,
                tolerance: float | None) -> ResidualReport:
    lhs = Bicomplex.from_scalar(lhs)
    rhs = Bicomplex.from_scalar(rhs)
    absres = (lhs - rhs).norm()
    big = max(lhs.norm(), rhs.norm())
    relres = absres / max(big, 1e-300)
    if tolerance is None:
        passed = None
    elif big < 1.0:
        passed = absres <= tolerance
    else:
        passed = relres <= tolerance
    return ResidualReport(identity, dict(point), lhs, rhs, absres, relres,
                          tolerance, passed)


def _point(**kwargs) -> dict:
    out = {}
    for name, val in kwargs.items():
        if isinstance(val, Bicomplex):
            out[name] = format_bicomplex(val)
        elif isinstance(val, MLParameter):
            out[name] = format_bicomplex(val.alpha)
        else:
            out[name] = val
    return out


# -- duplication / multiplication ------------------------------------------


def duplication_residual(alpha, xi, opts: MLEvalOptions | None = None,
                         tolerance: float | None = None) -> ResidualReport:
    """E_{2 alpha}(xi^2) versus (E_alpha(xi) + E_alpha(-xi)) / 2."""
    alpha = MLParameter.coerce(alpha)
    xi = Bicomplex.from_scalar(xi)
    tol = TOLERANCES["duplication"] if tolerance is None else tolerance
    lhs = bc_ml(alpha.scaled(2.0), pow_int(xi, 2), opts)
    rhs = (bc_ml(alpha, xi, opts) + bc_ml(alpha, -xi, opts)) / 2.0
    return make_report("duplication", _point(alpha=alpha, xi=xi), lhs, rhs, tol)


def _unit_phase(h: int, m: int) -> complex:
    # exact values at quarter turns so that m = 2 reproduces duplication
    # bit-for-bit (cmath puts ~1e-16 junk in sin(pi))
    r = (4 * h) % (4 * m)
    if r % m == 0:
        return (1.0, 1j, -1.0, -1j)[r // m]
    return cmath.exp(2j * math.pi * h / m)


def multiplication_residual(alpha, m: int, xi, opts: MLEvalOptions | None = None,
                            tolerance: float | None = None) -> ResidualReport:
    """E_{m alpha}(xi^m) versus the m-fold symmetrization
    (1/m) sum_h E_alpha(xi e^{2 pi i1 h / m})."""
    alpha = MLParameter.coerce(alpha)
    xi = Bicomplex.from_scalar(xi)
    m = int(m)
    if m < 1:
        raise ValueError("m must be a positive integer")
    tol = TOLERANCES["multiplication"] if tolerance is None else tolerance
    lhs = bc_ml(alpha.scaled(float(m)), pow_int(xi, m), opts)
    total = Bicomplex(0.0, 0.0, 0.0, 0.0)
    for h in range(m):
        total = total + bc_ml(alpha, xi * _unit_phase(h, m), opts)
    rhs = total / float(m)
    return make_report(f"multiplication-m{m}", _point(alpha=alpha, xi=xi, m=m),
                       lhs, rhs, tol)


def paper_recurrence_residual(p: int, q: int, xi,
                              opts: MLEvalOptions | None = None) -> ResidualReport:
    """E_{p/q}(xi) versus (1/q) sum_l E_{1/p}(xi^{1/q} e^{2 pi l i1 / q}).

    Reported, never asserted: no tolerance is attached and `passed` is None.
    The summand's parameter makes the two sides differ already at q = 1,
    p = 2 (E_2(1) = cosh 1 against E_{1/2}(1) ~ 2.24); the certified cousin
    is multiplication_residual.  This operation documents the formula as
    stated, residuals and all.
    """
    p, q = int(p), int(q)
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise ValueError("p, q must be coprime positive integers")
    xi = Bicomplex.from_scalar(xi)
    if xi.is_null_cone():
        raise NullConeRoot("recurrence formula takes xi^(1/q); xi on the null cone")
    lhs = bc_ml(p / q, xi, opts)
    total = Bicomplex(0.0, 0.0, 0.0, 0.0)
    for l in range(q):
        total = total + bc_ml(1.0 / p, root_q(xi, q, l), opts)
    rhs = total / float(q)
    return make_report(f"paper-recurrence-p{p}q{q}", _point(xi=xi, p=p, q=q),
                       lhs, rhs, None)


# -- integral representations ------------------------------------------------


def laplace_residual(alpha: float, xi, nodes: int = 200,
                     opts: MLEvalOptions | None = None,
                     tolerance: float | None = None) -> ResidualReport:
    """Gauss-Laguerre value of int e^-t E_alpha(t^alpha xi) dt vs 1/(1-xi)."""
    xi = Bicomplex.from_scalar(xi)
    from .bicomplex import n_xi as _n_xi

    if _n_xi(xi) > 0.8:
        raise OutsideDisk(
            f"Laplace check gated at n_xi <= 0.8 for quadrature control, got {_n_xi(xi)}"
        )
    if nodes < 64:
        raise ValueError("use at least 64 quadrature nodes")
    tol = TOLERANCES["laplace"] if tolerance is None else tolerance
    lhs = laplace_transform_ml(alpha, xi, nodes, opts)
    rhs = div(1.0, Bicomplex(1.0, 0.0, 0.0, 0.0) - xi)
    return make_report("laplace", _point(alpha=float(alpha), xi=xi, nodes=nodes),
                       lhs, rhs, tol)


def contour_residual(alpha: float, xi, opts: MLEvalOptions | None = None,
                     tolerance: float | None = None) -> ResidualReport:
    """Componentwise loop-contour evaluation vs the series evaluation."""
    xi = Bicomplex.from_scalar(xi)
    if xi.is_null_cone():
        raise NullConeRoot("contour comparison needs xi off the null cone")
    tol = TOLERANCES["contour"] if tolerance is None else tolerance
    a = float(alpha)
    c1, c2 = xi.to_idempotent()
    lhs = Bicomplex.from_idempotent(ml_contour(a, c1, opts), ml_contour(a, c2, opts))
    rhs = bc_ml(a, xi, opts)
    return make_report("contour", _point(alpha=a, xi=xi), lhs, rhs, tol)


# -- Cauchy-Riemann system ----------------------------------------------------


def cr_residual(alpha, z1: complex, z2: complex, h: float = 1e-5,
                opts: MLEvalOptions | None = None) -> float:
    """Max residual of the bicomplex Cauchy-Riemann equations for E_alpha.

    Writing E_alpha(z1 + i2 z2) = f1(z1, z2) + i2 f2(z1, z2) with

        f1 = (E_a1(z1 - i z2) + E_a2(z1 + i z2)) / 2
        f2 = i (E_a1(z1 - i z2) - E_a2(z1 + i z2)) / 2

    the system is df1/dz1 = df2/dz2 and df2/dz1 = -df1/dz2; the derivatives
    are central differences with real step h (valid: f1, f2 are holomorphic
    in each variable).
    """
    if not (1e-7 <= h <= 1e-3):
        raise ValueError("step h must lie in [1e-7, 1e-3]")
    alpha = MLParameter.coerce(alpha)
    opts = opts or DEFAULT_OPTIONS
    a1, a2 = alpha.alpha1, alpha.alpha2

    def f12(w1: complex, w2: complex) -> tuple[complex, complex]:
        e1 = ml_series(a1, w1 - 1j * w2, opts)
        e2 = ml_series(a2, w1 + 1j * w2, opts)
        return 0.5 * (e1 + e2), 0.5j * (e1 - e2)

    f1_z1p, f2_z1p = f12(z1 + h, z2)
    f1_z1m, f2_z1m = f12(z1 - h, z2)
    f1_z2p, f2_z2p = f12(z1, z2 + h)
    f1_z2m, f2_z2m = f12(z1, z2 - h)
    d11 = (f1_z1p - f1_z1m) / (2.0 * h)
    d21 = (f2_z1p - f2_z1m) / (2.0 * h)
    d12 = (f1_z2p - f1_z2m) / (2.0 * h)
    d22 = (f2_z2p - f2_z2m) / (2.0 * h)
    return max(abs(d11 - d22), abs(d21 + d12))


# -- ODE / differential relations ----------------------------------------------

_CENTRAL_STENCILS = {
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
    4: ((-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)),
}


def ode_residual(n: int, xi, h: float = 1e-3, opts: MLEvalOptions | None = None,
                 coefficient_tolerance: float | None = None,
                 fd_tolerance: float | None = None,
                 n_terms: int = 24) -> tuple[ResidualReport, ResidualReport]:
    """Check d^n/dxi^n E_n(xi^n) = E_n(xi^n) two ways.

    Coefficient route: differentiate the series termwise n times and compare
    against the series itself (exact Gamma-ratio arithmetic; residual is the
    worst coefficient mismatch, also used as the report's residuals).
    Finite-difference route: an order-n central stencil with step h at xi.
    """
    n = int(n)
    if n not in _CENTRAL_STENCILS:
        raise ValueError("n must be in 1..4")
    xi = Bicomplex.from_scalar(xi)
    ctol = TOLERANCES["ode-coefficient"] if coefficient_tolerance is None else coefficient_tolerance
    ftol = TOLERANCES["ode-finite-difference"] if fd_tolerance is None else fd_tolerance

    base = ml_as_series(n, 1, n_terms)
    derived = differentiate(base, n)
    worst = 0.0
    truncated = ml_as_series(n, 1, n_terms - 1).term_map()
    for exponent, coeff in derived.terms():
        want = truncated.get(exponent, 0.0 + 0.0j)
        worst = max(worst, abs(coeff - want) / max(abs(want), abs(coeff), 1e-300))
    lhs_val = evaluate(derived, xi, opts).value
    rhs_val = evaluate(ml_as_series(n, 1, n_terms - 1), xi, opts).value
    coeff_report = ResidualReport(
        f"ode-n{n}-coefficient", _point(xi=xi, n=n), lhs_val, rhs_val,
        worst, worst, ctol, worst <= ctol,
    )

    fn = lambda point: evaluate(base, point, opts).value
    acc = Bicomplex(0.0, 0.0, 0.0, 0.0)
    for offset, weight in _CENTRAL_STENCILS[n]:
        acc = acc + fn(xi + offset * h) * weight
    lhs_fd = acc / (h ** n)
    rhs_fd = fn(xi)
    fd_report = make_report(f"ode-n{n}-finite-difference", _point(xi=xi, n=n, h=h),
                            lhs_fd, rhs_fd, ftol)
    return coeff_report, fd_report


# -- coherence checks ------------------------------------------------------------


def special_case_residual(tag, xi, opts: MLEvalOptions | None = None,
                          tolerance: float | None = None) -> ResidualReport:
    from .functions import SPECIAL_CASE_ALPHA

    tol = TOLERANCES["special-case"] if tolerance is None else tolerance
    lhs = special_case(tag, xi)
    rhs = bc_ml(SPECIAL_CASE_ALPHA[str(tag)], xi, opts)
    return make_report(f"special-case-{tag}", _point(tag=str(tag), xi=xi), lhs, rhs, tol)


def decomposition_residual(alpha, xi, opts: MLEvalOptions | None = None) -> float:
    """Relative mismatch between to_idempotent(bc_ml(alpha, xi)) and the two
    component series evaluated directly -- the componentwise evaluation law
    restated at value level."""
    alpha = MLParameter.coerce(alpha)
    xi = Bicomplex.from_scalar(xi)
    value = bc_ml(alpha, xi, opts)
    got1, got2 = value.to_idempotent()
    x1, x2 = xi.to_idempotent()
    want1 = ml_series(alpha.alpha1, x1, opts)
    want2 = ml_series(alpha.alpha2, x2, opts)
    r1 = abs(got1 - want1) / max(abs(want1), 1.0)
    r2 = abs(got2 - want2) / max(abs(want2), 1.0)
    return max(r1, r2)


def order_type_residual(alpha) -> float:
    """Relative gap between the cartesian order formula
    (a0 - a3 j)/(a0^2 - a3^2) and the componentwise 1/Re(alpha_k)."""
    alpha = MLParameter.coerce(alpha)
    from .functions import order_and_type

    rho, _sigma = order_and_type(alpha)
    a0, a3 = alpha.a0, alpha.a3
    numerator = Bicomplex(a0, 0.0, 0.0, -a3)
    cart = numerator / (a0 * a0 - a3 * a3)
    comp = Hyperbolic(rho.a, rho.b).to_bicomplex()
    return (cart - comp).norm() / max(comp.norm(), 1e-300)


# -- seeded sampling helpers (shared by the CLI harness and the test suite) ---


def sample_bicomplex(rng, n_max: float, n_min: float = 0.0) -> Bicomplex:
    """Random bicomplex with n_xi between n_min and n_max: each idempotent
    component drawn with uniform phase and area-uniform radius."""
    comps = []
    for _ in range(2):
        radius = math.sqrt(rng.uniform((n_min ** 2), n_max ** 2))
        comps.append(cmath.rect(radius, rng.uniform(-math.pi, math.pi)))
    return Bicomplex.from_idempotent(comps[0], comps[1])


def sample_ml_parameter(rng, a0_range=(0.5, 3.0), a3_frac: float = 0.8,
                        im_scale: float = 0.5) -> MLParameter:
    a0 = rng.uniform(*a0_range)
    a3 = rng.uniform(-a3_frac * a0, a3_frac * a0)
    a1 = rng.uniform(-im_scale, im_scale)
    a2 = rng.uniform(-im_scale, im_scale)
    return MLParameter(Bicomplex(a0, a1, a2, a3))


def sample_evaluable_pair(rng, n_max: float = 3.0, term_budget: int = 300,
                          a0_range=(0.5, 3.0), a3_frac: float = 0.8,
                          noise_budget: float = 2e-13):
    """Rejection-sample (alpha, xi) inside the double-precision friendly
    region of the component series.

    A candidate is probed by actually summing both component series: pairs
    whose peak term would leave rounding noise above `noise_budget` (the
    identity checks compare values whose error floor is eps * peak term),
    or that fail to converge within the term budget, are redrawn.  This is
    the honest counterpart of the evaluators' own refusal behavior: the
    identities are asserted at full tolerance wherever the arithmetic can
    carry them at all.
    """
    from .errors import NotConverged
    from .kernels import _EPS, _ml_series_raw

    probe_opts = MLEvalOptions(rel_tol=1e-13, max_terms=term_budget)
    while True:
        alpha = sample_ml_parameter(rng, a0_range, a3_frac)
        xi = sample_bicomplex(rng, n_max)
        ok = True
        for a, z in zip((alpha.alpha1, alpha.alpha2), xi.to_idempotent()):
            try:
                _value, _tail, max_term = _ml_series_raw(a, z, 0, probe_opts)
            except NotConverged:
                ok = False
                break
            if _EPS * max_term > noise_budget:
                ok = False
                break
        if ok:
            return alpha, xi


# -- report-shaped wrappers used by the CLI verification harness --------------


def decomposition_report(alpha, xi, opts: MLEvalOptions | None = None,
                         tolerance: float | None = None) -> ResidualReport:
    alpha = MLParameter.coerce(alpha)
    xi = Bicomplex.from_scalar(xi)
    tol = TOLERANCES["decomposition"] if tolerance is None else tolerance
    lhs = bc_ml(alpha, xi, opts)
    x1, x2 = xi.to_idempotent()
    rhs = Bicomplex.from_idempotent(
        ml_series(alpha.alpha1, x1, opts), ml_series(alpha.alpha2, x2, opts)
    )
    return make_report("decomposition", _point(alpha=alpha, xi=xi), lhs, rhs, tol)


def cr_report(alpha, z1: complex, z2: complex, h: float = 1e-5,
              opts: MLEvalOptions | None = None,
              tolerance: float | None = None) -> ResidualReport:
    alpha = MLParameter.coerce(alpha)
    tol = TOLERANCES["cr"] if tolerance is None else tolerance
    residual = cr_residual(alpha, z1, z2, h, opts)
    zero = Bicomplex(0.0, 0.0, 0.0, 0.0)
    point = _point(alpha=alpha, z1=f"{z1!r}", z2=f"{z2!r}", h=h)
    return ResidualReport("cauchy-riemann", point, Bicomplex.from_scalar(residual),
                          zero, residual, residual, tol, residual <= tol)


def order_type_report(alpha, tolerance: float | None = None) -> ResidualReport:
    alpha = MLParameter.coerce(alpha)
    tol = TOLERANCES["order-type"] if tolerance is None else tolerance
    residual = order_type_residual(alpha)
    a0, a3 = alpha.a0, alpha.a3
    cart = Bicomplex(a0, 0.0, 0.0, -a3) / (a0 * a0 - a3 * a3)
    from .functions import order_and_type

    rho, _ = order_and_type(alpha)
    return ResidualReport("order-type", _point(alpha=alpha), cart,
                          rho.to_bicomplex(), residual, residual, tol,
                          residual <= tol)


def gamma_integral_residual(xi, nodes: int = 64,
                            tolerance: float | None = None) -> ResidualReport:
    from .functions import bc_gamma, bc_gamma_integral

    tol = TOLERANCES["gamma-integral"] if tolerance is None else tolerance
    xi = Bicomplex.from_scalar(xi)
    lhs = bc_gamma_integral(xi, nodes)
    rhs = bc_gamma(xi)
    return make_report("gamma-integral", _point(xi=xi, nodes=nodes), lhs, rhs, tol)


def gamma_weierstrass_residual(xi, n_factors: int = 100_000,
                               tolerance: float | None = None) -> ResidualReport:
    from .functions import bc_gamma, bc_gamma_weierstrass

    tol = TOLERANCES["gamma-weierstrass"] if tolerance is None else tolerance
    xi = Bicomplex.from_scalar(xi)
    lhs = bc_gamma_weierstrass(xi, n_factors)
    rhs = bc_gamma(xi)
    return make_report("gamma-weierstrass", _point(xi=xi, n_factors=n_factors),
                       lhs, rhs, tol)


def growth_report(alpha: float, radii=None, angles: int = 64,
                  tolerance: float = 0.2) -> ResidualReport:
    """Empirical growth order: slope of log log M(r) vs log r against 1/alpha,
    passing when the slope lands within `tolerance` (relative) of 1/alpha."""
    slope, rows = growth_order_slope(alpha, radii, angles)
    want = 1.0 / alpha
    rel = abs(slope - want) / want
    point = _point(alpha=float(alpha), radii=[r for r, _ in rows])
    return ResidualReport("growth-order", point, Bicomplex.from_scalar(slope),
                          Bicomplex.from_scalar(want), abs(slope - want), rel,
                          tolerance, rel <= tolerance)
