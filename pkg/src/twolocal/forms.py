"""Differential forms over A = f[[pi]] and K at level one.

A 1-form over K is stored through its coefficients against (dt, dpi) or
(dt, dlog pi); a 2-form through one coefficient against omega = dt^dpi or
omega' = dlog t ^ dlog pi. Internally everything is converted to the log
pair alpha = x dlog t + y dlog pi, where d and the Cartier operator are
diagonal on monomials.

With theta_t = t d/dt and theta_pi = pi d/dpi:
    d(x dlog t + y dlog pi) = (theta_t y - theta_pi x) omega'
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotClosed, TwistViolation
from .series import LaurentElt, SeriesRing, theta_pi, theta_t, tshift

PLAIN, LOG_PI = "plain", "log_pi"
OMEGA, LOG = "omega", "log"


@dataclass(frozen=True, eq=False)
class Form1:
    """c_t dt + c_pi dpi (plain) or c_t dt + c_pi dlog pi (log_pi)."""

    c_t: LaurentElt
    c_pi: LaurentElt
    basis: str = PLAIN

    @classmethod
    def from_log(cls, x, y, basis=LOG_PI) -> "Form1":
        c_t = tshift(x, -1)
        return cls(c_t, y if basis == LOG_PI else y.shift(-1), basis)

    def log_pair(self):
        x = tshift(self.c_t, 1)
        y = self.c_pi if self.basis == LOG_PI else self.c_pi.shift(1)
        return x, y

    def to_basis(self, basis) -> "Form1":
        if basis == self.basis:
            return self
        return Form1.from_log(*self.log_pair(), basis=basis)

    def __add__(self, other):
        x1, y1 = self.log_pair()
        x2, y2 = other.log_pair()
        return Form1.from_log(x1 + x2, y1 + y2, self.basis)

    def __sub__(self, other):
        x1, y1 = self.log_pair()
        x2, y2 = other.log_pair()
        return Form1.from_log(x1 - x2, y1 - y2, self.basis)

    def __neg__(self):
        return Form1(-self.c_t, -self.c_pi, self.basis)

    def scale(self, a) -> "Form1":
        return Form1(self.c_t * a, self.c_pi * a, self.basis)

    def __eq__(self, other):
        if not isinstance(other, Form1):
            return NotImplemented
        x1, y1 = self.log_pair()
        x2, y2 = other.log_pair()
        return x1 == x2 and y1 == y2

    __hash__ = None

    def __str__(self):
        tag = "dpi" if self.basis == PLAIN else "dlog pi"
        return f"({self.c_t})*dt + ({self.c_pi})*{tag}"


@dataclass(frozen=True, eq=False)
class Form2:
    """c * omega (basis 'omega') or c * omega' (basis 'log').

    ``twist`` records a claimed membership in Omega^2_{A|n}; it is checked,
    never trusted, by :func:`in_twist`.
    """

    c: LaurentElt
    basis: str = LOG
    twist: Optional[int] = None

    def log_coeff(self) -> LaurentElt:
        if self.basis == LOG:
            return self.c
        return tshift(self.c, 1).shift(1)

    def omega_coeff(self) -> LaurentElt:
        if self.basis == OMEGA:
            return self.c
        return tshift(self.c, -1).shift(-1)

    def to_basis(self, basis) -> "Form2":
        if basis == self.basis:
            return self
        c = self.log_coeff() if basis == LOG else self.omega_coeff()
        return Form2(c, basis, self.twist)

    def __add__(self, other):
        return Form2(self.log_coeff() + other.log_coeff(), LOG)

    def __sub__(self, other):
        return Form2(self.log_coeff() - other.log_coeff(), LOG)

    def __neg__(self):
        return Form2(-self.c, self.basis, self.twist)

    def scale(self, a) -> "Form2":
        return Form2(self.c * a, self.basis, self.twist)

    def is_zero(self) -> bool:
        return self.c.vanishes()

    def __eq__(self, other):
        if not isinstance(other, Form2):
            return NotImplemented
        return self.log_coeff() == other.log_coeff()

    __hash__ = None

    def __str__(self):
        tag = "dlog t^dlog pi" if self.basis == LOG else "dt^dpi"
        return f"({self.c})*{tag}"


@dataclass(frozen=True, eq=False)
class Form1f:
    """b dt over f = F_q((t))."""

    b: LaurentElt

    def __add__(self, other):
        return Form1f(self.b + other.b)

    def __sub__(self, other):
        return Form1f(self.b - other.b)

    def __eq__(self, other):
        if not isinstance(other, Form1f):
            return NotImplemented
        return self.b == other.b

    __hash__ = None

    def __str__(self):
        return f"({self.b})*dt"


# -- constructors ------------------------------------------------------

def dlog(a: LaurentElt) -> Form1:
    """da / a for a unit of K."""
    inv = a.inverse()
    return Form1.from_log(theta_t(a) * inv, theta_pi(a) * inv)


def omega_prime(K: SeriesRing) -> Form2:
    return Form2(K.one(), LOG)


# -- exterior derivative and wedge --------------------------------------

def d(x):
    """Exterior derivative of a function (K or f) or of a 1-form over K."""
    if isinstance(x, Form1):
        a, b = x.log_pair()
        return Form2(theta_t(b) - theta_pi(a), LOG)
    if isinstance(x, Form1f):
        return None  # Omega^2 of f vanishes
    if isinstance(x.ring.base, SeriesRing):
        return Form1.from_log(theta_t(x), theta_pi(x), PLAIN)
    return Form1f(theta_t(x).shift(-1))


def wedge(a: Form1, b: Form1) -> Form2:
    x1, y1 = a.log_pair()
    x2, y2 = b.log_pair()
    return Form2(x1 * y2 - y1 * x2, LOG).to_basis(OMEGA)


# -- Cartier operator ------------------------------------------------------

def _p_part(x: LaurentElt) -> LaurentElt:
    """Restrict a K- or f-element to monomials with all exponents divisible by p."""
    p = x.ring.characteristic
    y = x.restrict(lambda k: k % p == 0)
    if isinstance(x.ring.base, SeriesRing):
        y = y.map_coeffs(_p_part)
    return y


def cartier_coeff(x: LaurentElt) -> LaurentElt:
    """Monomial rule c t^a pi^b -> c^(1/p) t^(a/p) pi^(b/p) when p | a, b, else 0."""
    return _p_part(x).pth_root()


def cartier0(x: LaurentElt) -> LaurentElt:
    return x.pth_root()


def cartier2(alpha: Form2) -> Form2:
    return Form2(cartier_coeff(alpha.log_coeff()), LOG)


def is_closed(alpha: Form1) -> bool:
    return d(alpha).is_zero()


def cartier1(alpha: Form1) -> Form1:
    """Cartier operator on closed 1-forms over K."""
    if not is_closed(alpha):
        raise NotClosed("the Cartier operator is only defined on closed 1-forms")
    x, y = alpha.log_pair()
    return Form1.from_log(cartier_coeff(x), cartier_coeff(y), alpha.basis)


def cartier1f(alpha: Form1f) -> Form1f:
    """C(b dt): only t^k with p | k+1 survive, giving b_k^(1/p) t^((k+1)/p - 1)."""
    return Form1f(cartier_coeff(alpha.b.shift(1)).shift(-1))


# -- twists ------------------------------------------------------------------

def in_twist(alpha: Form2, n: int) -> bool:
    """Membership in Omega^2_{A|n}: the dt^dlog pi coefficient lies in pi^n A."""
    return alpha.log_coeff().certified_zero_below(n)


def one_minus_C(alpha: Form2, n: int = 0) -> Form2:
    """alpha - C(alpha) from Omega^2_{A|pn} to Omega^2_{A|n}.

    For n >= 0 both memberships follow from the input check. For n < 0 the
    twists are pole orders, the identity part does not lower poles, and the
    output membership is certified or refused.
    """
    p = alpha.c.ring.characteristic
    if not in_twist(alpha, p * n):
        raise TwistViolation(f"input is not in the twist {p * n}")
    out = alpha - cartier2(alpha)
    if not in_twist(out, n):
        raise TwistViolation(f"output is not in the twist {n}")
    return Form2(out.c, LOG, n)
