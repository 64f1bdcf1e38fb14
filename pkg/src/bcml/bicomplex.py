"""Bicomplex (tessarine) numbers: arithmetic, moduli, and text round-tripping.

A bicomplex number is xi = x0 + i1*x1 + i2*x2 + j*x3 with two commuting
imaginary units i1, i2 and the hyperbolic unit j = i1*i2 (j*j = +1).  Two
derived views are used throughout:

  complex pair     xi = z1 + i2*z2,      z1 = x0 + i1*x1, z2 = x2 + i1*x3
  idempotent pair  xi = xi1*e1 + xi2*e2, xi1 = z1 - i1*z2, xi2 = z1 + i1*z2

with e1 = (1+j)/2, e2 = (1-j)/2 (e1*e2 = 0, e1+e2 = 1).  Multiplication and
every analytic operation act componentwise on (xi1, xi2), which is what
makes the special functions in this package tractable.

The cartesian quadruple is the single stored representation; the other two
views are always recomputed, so conversions cannot drift.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

from .errors import (
    NonFinite,
    NullConeArgument,
    NullConeDivisor,
    NullConeRoot,
    ParseError,
)

# Scale factor for the relative null-cone test: a component is treated as
# vanishing when it is below NULL_TOL_SCALE * max(1, norm).
NULL_TOL_SCALE = 1e-13

_Scalar = (int, float, complex)


@dataclass(frozen=True)
class Bicomplex:
    x0: float
    x1: float
    x2: float
    x3: float

    # -- derived views -------------------------------------------------

    @property
    def z1(self) -> complex:
        return complex(self.x0, self.x1)

    @property
    def z2(self) -> complex:
        return complex(self.x2, self.x3)

    def to_idempotent(self) -> tuple[complex, complex]:
        """Return (xi1, xi2) with xi = xi1*e1 + xi2*e2."""
        z1, z2 = self.z1, self.z2
        return z1 - 1j * z2, z1 + 1j * z2

    @property
    def xi1(self) -> complex:
        return self.z1 - 1j * self.z2

    @property
    def xi2(self) -> complex:
        return self.z1 + 1j * self.z2

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_cartesian(cls, x0, x1, x2, x3) -> "Bicomplex":
        """Build from four real coefficients; rejects NaN/Inf."""
        vals = (float(x0), float(x1), float(x2), float(x3))
        if not all(math.isfinite(v) for v in vals):
            raise NonFinite(f"coefficients must be finite, got {vals}")
        return cls(*vals)

    @classmethod
    def from_complex_pair(cls, z1: complex, z2: complex) -> "Bicomplex":
        z1, z2 = complex(z1), complex(z2)
        return cls(z1.real, z1.imag, z2.real, z2.imag)

    @classmethod
    def from_idempotent(cls, c1: complex, c2: complex) -> "Bicomplex":
        """Inverse of to_idempotent: z1 = (c1+c2)/2, z2 = i1*(c1-c2)/2."""
        c1, c2 = complex(c1), complex(c2)
        z1 = 0.5 * (c1 + c2)
        z2 = 0.5j * (c1 - c2)
        return cls(z1.real, z1.imag, z2.real, z2.imag)

    @classmethod
    def from_scalar(cls, value) -> "Bicomplex":
        """Coerce int/float/complex; the complex imaginary part maps to i1."""
        if isinstance(value, Bicomplex):
            return value
        c = complex(value)
        return cls(c.real, c.imag, 0.0, 0.0)

    # -- ring structure ---------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Bicomplex(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Bicomplex(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Bicomplex(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        # (z1 + i2 z2)(w1 + i2 w2) = (z1 w1 - z2 w2) + i2 (z1 w2 + z2 w1)
        u1 = self.z1 * o.z1 - self.z2 * o.z2
        u2 = self.z1 * o.z2 + self.z2 * o.z1
        return Bicomplex(u1.real, u1.imag, u2.real, u2.imag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _Scalar):
            c = complex(other)
            if c.imag == 0.0:
                s = c.real
                return Bicomplex(self.x0 / s, self.x1 / s, self.x2 / s, self.x3 / s)
            other = Bicomplex.from_scalar(other)
        if isinstance(other, Bicomplex):
            return div(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return div(o, self)

    # -- metric layer ------------------------------------------------------

    def norm(self) -> float:
        """Euclidean norm sqrt(x0^2 + x1^2 + x2^2 + x3^2)."""
        return math.hypot(self.x0, self.x1, self.x2, self.x3)

    def abs_value(self) -> float:
        """sqrt(|xi1| |xi2|); zero exactly on the null cone."""
        c1, c2 = self.to_idempotent()
        return math.sqrt(abs(c1) * abs(c2))

    def n_xi(self) -> float:
        """max(|xi1|, |xi2|): the norm controlling power-series convergence."""
        c1, c2 = self.to_idempotent()
        return max(abs(c1), abs(c2))

    def i1_modulus(self) -> complex:
        """Principal square root of z1^2 + z2^2."""
        return cmath.sqrt(self.z1 * self.z1 + self.z2 * self.z2)

    def i2_modulus(self, as_printed: bool = False) -> "Bicomplex":
        """Bicomplex square root of (|z1|^2 - |z2|^2) + 2 Re(z1 conj(z2)) i2.

        `as_printed=True` swaps conj(z2) for conj(z1) in the cross term,
        reproducing a radicand variant that circulates in the literature;
        that variant reduces the cross term to 2|z1|^2.  Both take
        componentwise principal square roots of the radicand, which is
        allowed to sit on the null cone (sqrt extends continuously there).
        """
        a = abs(self.z1) ** 2 - abs(self.z2) ** 2
        if as_printed:
            b = 2.0 * (self.z1 * self.z1.conjugate()).real
        else:
            b = 2.0 * (self.z1 * self.z2.conjugate()).real
        radicand = Bicomplex(a, 0.0, b, 0.0)
        c1, c2 = radicand.to_idempotent()
        return Bicomplex.from_idempotent(cmath.sqrt(c1), cmath.sqrt(c2))

    def j_modulus(self) -> "Hyperbolic":
        """|xi1| e1 + |xi2| e2, the hyperbolic-valued modulus."""
        c1, c2 = self.to_idempotent()
        return Hyperbolic(abs(c1), abs(c2))

    def arg_j(self) -> "Hyperbolic":
        """arg(xi1) e1 + arg(xi2) e2 with principal arguments in (-pi, pi]."""
        if self.is_null_cone():
            raise NullConeArgument(f"hyperbolic argument undefined on the null cone: {self!r}")
        c1, c2 = self.to_idempotent()
        return Hyperbolic(cmath.phase(c1), cmath.phase(c2))

    def null_tol(self) -> float:
        return NULL_TOL_SCALE * max(1.0, self.norm())

    def is_null_cone(self, tol: float | None = None) -> bool:
        """True when min(|xi1|, |xi2|) <= tol (zero divisor or zero)."""
        c1, c2 = self.to_idempotent()
        t = self.null_tol() if tol is None else tol
        return min(abs(c1), abs(c2)) <= t

    def __str__(self) -> str:
        return format_bicomplex(self)

    def __complex__(self) -> complex:
        if self.x2 != 0.0 or self.x3 != 0.0:
            raise ValueError("not reducible to a single complex number")
        return complex(self.x0, self.x1)


def _coerce(value):
    if isinstance(value, Bicomplex):
        return value
    if isinstance(value, _Scalar):
        return Bicomplex.from_scalar(value)
    return None


@dataclass(frozen=True)
class Hyperbolic:
    """Hyperbolic number a*e1 + b*e2 with real a, b.

    The codomain of the j-modulus, the hyperbolic argument and the growth
    order.  Cartesian form: (a+b)/2 + j*(a-b)/2.
    """

    a: float
    b: float

    @property
    def real_part(self) -> float:
        return 0.5 * (self.a + self.b)

    @property
    def j_part(self) -> float:
        return 0.5 * (self.a - self.b)

    @classmethod
    def from_cartesian(cls, real_part: float, j_part: float) -> "Hyperbolic":
        return cls(real_part + j_part, real_part - j_part)

    def to_bicomplex(self) -> Bicomplex:
        return Bicomplex.from_idempotent(complex(self.a), complex(self.b))

    def is_nonnegative(self) -> bool:
        return self.a >= 0.0 and self.b >= 0.0

    def __str__(self) -> str:
        return f"{_fmt(self.a)} e1 + {_fmt(self.b)} e2"


ZERO = Bicomplex(0.0, 0.0, 0.0, 0.0)
ONE = Bicomplex(1.0, 0.0, 0.0, 0.0)
I1 = Bicomplex(0.0, 1.0, 0.0, 0.0)
I2 = Bicomplex(0.0, 0.0, 1.0, 0.0)
J = Bicomplex(0.0, 0.0, 0.0, 1.0)
E1 = Bicomplex(0.5, 0.0, 0.0, 0.5)
E2 = Bicomplex(0.5, 0.0, 0.0, -0.5)


# -- free-function spellings of the core operations -----------------------


def from_cartesian(x0, x1, x2, x3) -> Bicomplex:
    return Bicomplex.from_cartesian(x0, x1, x2, x3)


def from_idempotent(c1, c2) -> Bicomplex:
    return Bicomplex.from_idempotent(c1, c2)


def to_idempotent(xi: Bicomplex) -> tuple[complex, complex]:
    return xi.to_idempotent()


def add(xi, eta):
    return _coerce(xi) + eta


def sub(xi, eta):
    return _coerce(xi) - eta


def neg(xi):
    return -_coerce(xi)


def mul(xi, eta):
    return _coerce(xi) * eta


def div(xi: Bicomplex, eta) -> Bicomplex:
    """Componentwise quotient; the divisor must avoid the null cone."""
    xi = Bicomplex.from_scalar(xi)
    eta = Bicomplex.from_scalar(eta)
    d1, d2 = eta.to_idempotent()
    tol = eta.null_tol()
    a1, a2 = abs(d1), abs(d2)
    if min(a1, a2) <= tol:
        which = 0 if (a1 <= tol and a2 <= tol) else (1 if a1 <= tol else 2)
        raise NullConeDivisor(
            f"divisor on the null cone (component {which or 'both'} vanishes): {eta!r}",
            component=which,
        )
    n1, n2 = xi.to_idempotent()
    return Bicomplex.from_idempotent(n1 / d1, n2 / d2)


def norm(xi) -> float:
    return Bicomplex.from_scalar(xi).norm()


def abs_value(xi) -> float:
    return Bicomplex.from_scalar(xi).abs_value()


def n_xi(xi) -> float:
    return Bicomplex.from_scalar(xi).n_xi()


def n_xi_radical(xi) -> float:
    """Radical form sqrt(norm^2 + sqrt(norm^4 - abs^4)) of n_xi."""
    xi = Bicomplex.from_scalar(xi)
    n2 = xi.norm() ** 2
    a2 = xi.abs_value() ** 2
    inner = max(n2 * n2 - a2 * a2, 0.0)
    return math.sqrt(n2 + math.sqrt(inner))


def i1_modulus(xi) -> complex:
    return Bicomplex.from_scalar(xi).i1_modulus()


def i2_modulus(xi, as_printed: bool = False) -> Bicomplex:
    return Bicomplex.from_scalar(xi).i2_modulus(as_printed=as_printed)


def j_modulus(xi) -> Hyperbolic:
    return Bicomplex.from_scalar(xi).j_modulus()


def arg_j(xi) -> Hyperbolic:
    return Bicomplex.from_scalar(xi).arg_j()


def is_null_cone(xi, tol: float | None = None) -> bool:
    return Bicomplex.from_scalar(xi).is_null_cone(tol)


def exp(xi) -> Bicomplex:
    """Componentwise exponential on the idempotent pair."""
    c1, c2 = Bicomplex.from_scalar(xi).to_idempotent()
    return Bicomplex.from_idempotent(cmath.exp(c1), cmath.exp(c2))


def pow_int(xi, n: int) -> Bicomplex:
    """Integer power, componentwise.  Negative powers divide and therefore
    require xi off the null cone."""
    xi = Bicomplex.from_scalar(xi)
    n = int(n)
    c1, c2 = xi.to_idempotent()
    if n < 0 and xi.is_null_cone():
        raise NullConeDivisor(f"negative power of a null-cone element: {xi!r}")
    return Bicomplex.from_idempotent(c1 ** n, c2 ** n)


def root_q(xi, q: int, branch: int = 0) -> Bicomplex:
    """q-th root: principal componentwise root times exp(2 pi i1 branch / q).

    branch = 0..q-1 enumerates exactly q values; xi must avoid the null cone.
    """
    xi = Bicomplex.from_scalar(xi)
    q = int(q)
    if q < 1:
        raise ValueError("q must be a positive integer")
    if xi.is_null_cone():
        raise NullConeRoot(f"fractional root undefined on the null cone: {xi!r}")
    w = cmath.exp(2j * math.pi * (int(branch) % q) / q)
    c1, c2 = xi.to_idempotent()
    return Bicomplex.from_idempotent(w * c1 ** (1.0 / q), w * c2 ** (1.0 / q))


# -- text format -----------------------------------------------------------
#
# Cartesian grammar:  "a + b i1 + c i2 + d j" (any subset of terms, signs
# allowed, units optionally carrying an implicit coefficient of 1).
# Idempotent grammar: "[re1 + im1 i1 ; re2 + im2 i1]".
# Numbers print with %.17g so every double round-trips bit-exactly.


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_bicomplex(xi: Bicomplex, style: str = "cartesian") -> str:
    if style == "cartesian":
        parts = [_fmt(xi.x0)]
        for val, unit in ((xi.x1, "i1"), (xi.x2, "i2"), (xi.x3, "j")):
            t = _fmt(val)
            if t.startswith("-"):
                parts.append(f"- {t[1:]} {unit}")
            else:
                parts.append(f"+ {t} {unit}")
        return " ".join(parts)
    if style == "idempotent":
        c1, c2 = xi.to_idempotent()
        return f"[{_fmt_c(c1)} ; {_fmt_c(c2)}]"
    raise ValueError(f"unknown format style {style!r}")


def _fmt_c(c: complex) -> str:
    t = _fmt(c.imag)
    if t.startswith("-"):
        return f"{_fmt(c.real)} - {t[1:]} i1"
    return f"{_fmt(c.real)} + {t} i1"


_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM_RE = re.compile(
    rf"\s*(?P<sign>[+-]?)\s*(?:(?P<num>{_NUMBER})\s*(?P<unit>i1|i2|j)?|(?P<unit_only>i1|i2|j))\s*"
)


def _parse_terms(text: str, allowed_units: tuple[str, ...]) -> dict[str, float]:
    # first assignment per unit is a plain set so "-0" survives; repeats sum
    coeffs: dict[str, float | None] = {u: None for u in ("", "i1", "i2", "j")}
    pos = 0
    first = True
    if not text.strip():
        raise ParseError("empty bicomplex literal")
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at position {pos}")
        sign, num, unit = m.group("sign"), m.group("num"), m.group("unit") or m.group("unit_only")
        if not first and not sign:
            raise ParseError(f"missing +/- between terms in {text!r}")
        value = float(num) if num is not None else 1.0
        if sign == "-":
            value = -value
        unit = unit or ""
        if unit not in ("",) + allowed_units:
            raise ParseError(f"unit {unit!r} not allowed here: {text!r}")
        coeffs[unit] = value if coeffs[unit] is None else coeffs[unit] + value
        pos = m.end()
        first = False
    return {u: (0.0 if v is None else v) for u, v in coeffs.items()}


def _parse_complex_i1(text: str) -> complex:
    c = _parse_terms(text, ("i1",))
    return complex(c[""], c["i1"])


def parse_bicomplex(text: str) -> Bicomplex:
    """Parse either grammar; inverse of format_bicomplex at 17 digits."""
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError(f"unterminated idempotent literal: {text!r}")
        halves = s[1:-1].split(";")
        if len(halves) != 2:
            raise ParseError(f"idempotent literal needs exactly one ';': {text!r}")
        return Bicomplex.from_idempotent(_parse_complex_i1(halves[0]), _parse_complex_i1(halves[1]))
    c = _parse_terms(s, ("i1", "i2", "j"))
    try:
        return Bicomplex.from_cartesian(c[""], c["i1"], c["i2"], c["j"])
    except NonFinite as e:
        raise ParseError(str(e)) from e
