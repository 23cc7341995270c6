"""Third-order truncated Taylor jets.

A Jet3 carries a value and its first three derivatives with respect to one
scalar parameter. Arithmetic propagates derivatives exactly (Leibniz rule for
products, third-order chain rule for elementary functions), so curve
derivatives never rely on finite differences. Order is fixed at three: the
frame equations need gamma', gamma'', gamma''' and nothing more.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "Jet3",
    "jet_var",
    "jet_const",
    "jet_add",
    "jet_sub",
    "jet_mul",
    "jet_div",
    "jet_elem",
    "ELEM_TAGS",
]

ELEM_TAGS = ("sin", "cos", "sqrt", "exp", "ln", "neg", "recip", "pow")

# Largest |integer exponent| expanded by repeated multiplication.
_MAX_INT_POW = 1024


@dataclass(frozen=True)
class Jet3:
    """Value plus derivatives of order 1..3 at a point."""

    v0: float
    v1: float
    v2: float
    v3: float

    def __add__(self, other: "Jet3") -> "Jet3":
        return jet_add(self, other)

    def __sub__(self, other: "Jet3") -> "Jet3":
        return jet_sub(self, other)

    def __mul__(self, other: "Jet3") -> "Jet3":
        return jet_mul(self, other)

    def __truediv__(self, other: "Jet3") -> "Jet3":
        return jet_div(self, other)

    def __neg__(self) -> "Jet3":
        return Jet3(-self.v0, -self.v1, -self.v2, -self.v3)


def jet_var(x: float) -> Jet3:
    """Jet of the identity function at x: (x, 1, 0, 0)."""
    return Jet3(float(x), 1.0, 0.0, 0.0)


def jet_const(x: float) -> Jet3:
    """Jet of a constant: all derivatives zero."""
    return Jet3(float(x), 0.0, 0.0, 0.0)


def jet_add(a: Jet3, b: Jet3) -> Jet3:
    return Jet3(a.v0 + b.v0, a.v1 + b.v1, a.v2 + b.v2, a.v3 + b.v3)


def jet_sub(a: Jet3, b: Jet3) -> Jet3:
    return Jet3(a.v0 - b.v0, a.v1 - b.v1, a.v2 - b.v2, a.v3 - b.v3)


def jet_mul(a: Jet3, b: Jet3) -> Jet3:
    """Leibniz rule to order 3."""
    return Jet3(
        a.v0 * b.v0,
        a.v1 * b.v0 + a.v0 * b.v1,
        a.v2 * b.v0 + 2.0 * a.v1 * b.v1 + a.v0 * b.v2,
        a.v3 * b.v0 + 3.0 * a.v2 * b.v1 + 3.0 * a.v1 * b.v2 + a.v0 * b.v3,
    )


def jet_div(a: Jet3, b: Jet3) -> Jet3:
    return jet_mul(a, jet_elem("recip", b))


def _compose(d0: float, d1: float, d2: float, d3: float, a: Jet3) -> Jet3:
    # Third-order chain rule: d0..d3 are f, f', f'', f''' at a.v0.
    a1, a2, a3 = a.v1, a.v2, a.v3
    return Jet3(
        d0,
        d1 * a1,
        d2 * a1 * a1 + d1 * a2,
        d3 * a1 * a1 * a1 + 3.0 * d2 * a1 * a2 + d1 * a3,
    )


def _pow_int(a: Jet3, k: int) -> Jet3:
    # Exact for any base sign; negative exponents go through recip.
    if k < 0:
        return jet_elem("recip", _pow_int(a, -k))
    out = jet_const(1.0)
    base = a
    while k:
        if k & 1:
            out = jet_mul(out, base)
        base = jet_mul(base, base)
        k >>= 1
    return out


def jet_elem(f: str, a: Jet3, exponent: float | None = None) -> Jet3:
    """Apply an elementary function to a jet.

    Supported tags: sin, cos, sqrt, exp, ln, neg, recip, pow (constant
    exponent, passed via `exponent`). Raises DomainError when a.v0 falls
    outside the function's domain (sqrt and ln need strictly positive
    arguments; recip needs a nonzero one).
    """
    u = a.v0
    if f == "sin":
        s, c = math.sin(u), math.cos(u)
        return _compose(s, c, -s, -c, a)
    if f == "cos":
        s, c = math.sin(u), math.cos(u)
        return _compose(c, -s, -c, s, a)
    if f == "exp":
        try:
            e = math.exp(u)
        except OverflowError:
            raise DomainError(f"exp overflows at {u}") from None
        return _compose(e, e, e, e, a)
    if f == "ln":
        if u <= 0.0:
            raise DomainError(f"ln requires a positive argument, got {u}")
        r = 1.0 / u
        return _compose(math.log(u), r, -r * r, 2.0 * r * r * r, a)
    if f == "sqrt":
        if u <= 0.0:
            raise DomainError(f"sqrt derivatives require a positive argument, got {u}")
        r = math.sqrt(u)
        return _compose(r, 0.5 / r, -0.25 / (r * u), 0.375 / (r * u * u), a)
    if f == "neg":
        return -a
    if f == "recip":
        if u == 0.0:
            raise DomainError("reciprocal of zero")
        r = 1.0 / u
        r2 = r * r
        return _compose(r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2, a)
    if f == "pow":
        if exponent is None:
            raise TypeError("pow requires an exponent")
        p = float(exponent)
        if p == round(p) and abs(p) <= _MAX_INT_POW:
            return _pow_int(a, int(round(p)))
        if u <= 0.0:
            raise DomainError(
                f"non-integer power requires a positive base, got {u}"
            )
        return _compose(
            math.pow(u, p),
            p * math.pow(u, p - 1.0),
            p * (p - 1.0) * math.pow(u, p - 2.0),
            p * (p - 1.0) * (p - 2.0) * math.pow(u, p - 3.0),
            a,
        )
    raise ValueError(f"unknown elementary function tag {f!r}")
