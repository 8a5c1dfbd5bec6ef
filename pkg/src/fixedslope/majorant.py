"""Scalar majorant machinery for the fixed slope iteration.

A continuity measure omega(v) bounds how far the iteration map is from a
contraction at distance v from the starting point.  Together with the
first-step bound eta it defines the majorant

    phi(v) = eta + integral_0^v omega(l) dl ,        g(v) = phi(v) - v .

omega is non-decreasing, so g is convex: it falls from g(0) = eta > 0
with slope omega(0) - 1 < 0 and turns upward once omega crosses 1.  The
radius of that crossing (clipped to R) is gamma_star, the minimizer of g
on [0, R].  Everything else reduces to sign bisection on brackets whose
endpoint signs are known:

    nu_star       minimal root of g, bracketed by [0, gamma_star]
    nu_star_star  maximal root of g, bracketed by [gamma_star, R]
    lambda_star   radius of the uniqueness ball, with its boundary case
                  ("B1" closed ball, "B2" open ball)

A minimal root exists iff g(gamma_star) <= 0; when that minimum sits on
zero the two roots merge (double root) and the bisection bracket
degenerates, so the root is read off at gamma_star directly.
"""

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotCertifiedError, NuNotContractive, RadiusOutOfRange

ROOT_TOL = 1e-12

# Maximal bisection steps; brackets collapse to machine width long before.
_BISECT_STEPS = 200

# Two roots closer than this band (measured on g at its minimum) are merged
# into a double root; relative to eta it realizes the eta == eta_max
# equality tolerance of the certificate.
_MERGE_BAND_REL = 1e-9


@dataclass(frozen=True)
class HoelderOmega:
    """omega(v) = nu + l0 * v**alpha with l0 >= 0, alpha in (0, 1], nu in [0, 1)."""

    l0: float
    alpha: float
    nu: float = 0.0

    def __post_init__(self):
        if not (self.l0 >= 0.0 and math.isfinite(self.l0)):
            raise ValueError(f"l0 must be finite and >= 0, got {self.l0}")
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if not (0.0 <= self.nu < 1.0):
            raise ValueError(f"nu must be in [0, 1), got {self.nu}")

    def value(self, v):
        return self.nu + self.l0 * v ** self.alpha

    def integral(self, v):
        """Exact integral of omega over [0, v]."""
        return self.nu * v + self.l0 * v ** (1.0 + self.alpha) / (1.0 + self.alpha)

    def radius_where_one(self):
        """Smallest v with omega(v) = 1; inf when omega stays below 1."""
        if self.l0 == 0.0:
            return math.inf
        return ((1.0 - self.nu) / self.l0) ** (1.0 / self.alpha)

    def max_radius(self):
        return math.inf


@dataclass(frozen=True)
class TabulatedOmega:
    """Piecewise-linear measure through (radius, value) knots.

    The first knot must sit at radius 0; radii increase strictly and
    values are non-negative and non-decreasing, which keeps the
    interpolant a valid (monotone) continuity measure.  Evaluation past
    the last knot is refused rather than extrapolated.
    """

    knots: tuple

    def __post_init__(self):
        knots = tuple((float(r), float(w)) for r, w in self.knots)
        object.__setattr__(self, "knots", knots)
        if not knots:
            raise ValueError("at least one knot required")
        radii = [r for r, _ in knots]
        values = [w for _, w in knots]
        if radii[0] != 0.0:
            raise ValueError("first knot must be at radius 0")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("knot radii must increase strictly")
        if any(w < 0.0 or not math.isfinite(w) for w in values):
            raise ValueError("knot values must be finite and >= 0")
        if any(b < a for a, b in zip(values, values[1:])):
            raise ValueError("knot values must be non-decreasing")
        cum = [0.0]
        for (r0, w0), (r1, w1) in zip(knots, knots[1:]):
            cum.append(cum[-1] + 0.5 * (w0 + w1) * (r1 - r0))
        object.__setattr__(self, "_radii", radii)
        object.__setattr__(self, "_values", values)
        object.__setattr__(self, "_cum", cum)

    def _segment(self, v):
        if v < 0.0 or v > self._radii[-1]:
            raise RadiusOutOfRange(
                f"v={v} outside tabulated domain [0, {self._radii[-1]}]"
            )
        i = bisect.bisect_right(self._radii, v) - 1
        return min(i, len(self._radii) - 2) if len(self._radii) > 1 else 0

    def value(self, v):
        if len(self._radii) == 1:
            if v != 0.0:
                raise RadiusOutOfRange("single-knot measure only defined at 0")
            return self._values[0]
        i = self._segment(v)
        r0, r1 = self._radii[i], self._radii[i + 1]
        w0, w1 = self._values[i], self._values[i + 1]
        return w0 + (w1 - w0) * (v - r0) / (r1 - r0)

    def integral(self, v):
        """Exact integral of the interpolant over [0, v] (piecewise quadratic)."""
        if len(self._radii) == 1:
            if v != 0.0:
                raise RadiusOutOfRange("single-knot measure only defined at 0")
            return 0.0
        i = self._segment(v)
        w0 = self._values[i]
        return self._cum[i] + 0.5 * (w0 + self.value(v)) * (v - self._radii[i])

    def radius_where_one(self):
        for i in range(1, len(self._radii)):
            if self._values[i] >= 1.0:
                r0, r1 = self._radii[i - 1], self._radii[i]
                w0, w1 = self._values[i - 1], self._values[i]
                if w0 >= 1.0:
                    return r0
                return r0 + (1.0 - w0) * (r1 - r0) / (w1 - w0)
        return math.inf

    def max_radius(self):
        return self._radii[-1]


@dataclass(frozen=True)
class MajorantModel:
    """Bundle (eta, R, omega): first-step bound, trust radius, continuity measure.

    eta = 0 is rejected: a zero first step means the starting point already
    solves the problem and there is nothing to certify.
    """

    eta: float
    R: float
    omega: object

    def __post_init__(self):
        if not (self.eta > 0.0 and math.isfinite(self.eta)):
            raise ValueError(f"eta must be finite and > 0, got {self.eta}")
        if not (self.R > 0.0 and math.isfinite(self.R)):
            raise ValueError(f"R must be finite and > 0, got {self.R}")
        if self.omega.max_radius() < self.R:
            raise ValueError(
                f"measure tabulated only up to {self.omega.max_radius()}, "
                f"cannot cover radius R={self.R}"
            )


def eval_omega(omega, v):
    """Evaluate a continuity measure at radius v >= 0."""
    if v < 0.0:
        raise RadiusOutOfRange(f"radius must be >= 0, got {v}")
    return float(omega.value(v))


def _check_range(model, v):
    if v < 0.0 or v > model.R:
        raise RadiusOutOfRange(f"v={v} outside [0, {model.R}]")


def phi(model, v):
    """Majorant phi(v) = eta + integral_0^v omega."""
    _check_range(model, v)
    return model.eta + model.omega.integral(v)


def g(model, v):
    """g(v) = phi(v) - v; g(0) = eta > 0, convex."""
    return phi(model, v) - v


def nu_of(model):
    """omega(0), the contraction defect at the starting point."""
    return float(model.omega.value(0.0))


def gamma_star(model):
    """Largest radius in (0, R] on which omega stays below 1."""
    if nu_of(model) >= 1.0:
        raise NuNotContractive(
            f"omega(0) = {nu_of(model)} >= 1: the map is not a contraction at x0"
        )
    return min(model.R, model.omega.radius_where_one())


def _bisect_boundary(fun, lo, hi, lo_positive):
    """Shrink [lo, hi] onto the boundary between {fun > 0} and {fun <= 0}.

    The caller guarantees the endpoint signs: fun(lo) > 0 iff lo_positive,
    and the opposite at hi.  Runs until the bracket collapses in floating
    point (at most _BISECT_STEPS halvings).
    """
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        if mid <= min(lo, hi) or mid >= max(lo, hi):
            break
        if (fun(mid) > 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def minimal_root(model, tol=ROOT_TOL):
    """Minimal root nu_star of g on [0, R], or None when g has no root.

    g is strictly decreasing on [0, gamma_star], so a root exists iff
    g(gamma_star) <= 0 and the minimal one lies in that interval.  A
    minimum within tol*max(1, eta) of zero is a double root and is
    returned as gamma_star itself (bisection cannot resolve it better).
    """
    gam = gamma_star(model)
    stol = tol * max(1.0, model.eta)
    g_gam = g(model, gam)
    if g_gam > stol:
        return None
    if g_gam >= -stol:
        return gam
    return _bisect_boundary(lambda v: g(model, v), 0.0, gam, lo_positive=True)


def maximal_root(model, tol=ROOT_TOL):
    """Maximal root of g on [nu_star, R]; None when the root lies beyond R."""
    ns = minimal_root(model, tol)
    if ns is None:
        raise NotCertifiedError("majorant has no root: nothing to bracket")
    gam = gamma_star(model)
    stol = tol * max(1.0, model.eta)
    if abs(g(model, gam)) <= stol:
        return ns  # double root
    g_r = g(model, model.R)
    if g_r < -stol:
        return None
    if g_r <= stol:
        return model.R
    return _bisect_boundary(lambda v: g(model, v), gam, model.R, lo_positive=False)


def lambda_star(model, tol=ROOT_TOL):
    """Uniqueness radius and its boundary case ("B1" closed, "B2" open).

    The interval past nu_star where g < 0 decides the case: if it is
    empty (double root) the radius is nu_star with a closed ball; if it
    runs into R with g(R) < 0 the radius is R, still closed since
    phi(R) < R; otherwise it ends at the maximal root, where phi is a
    fixed point and only the open ball is claimed.
    """
    ns = minimal_root(model, tol)
    if ns is None:
        raise NotCertifiedError("majorant has no root: no uniqueness radius")
    band = max(10.0 * tol * max(1.0, model.eta), _MERGE_BAND_REL * model.eta)
    if g(model, gamma_star(model)) >= -band:
        return ns, "B1"
    nss = maximal_root(model, tol)
    if nss is None:
        return model.R, "B1"
    return nss, "B2"


def scalar_sequence(model, tol=ROOT_TOL, max_iter=10000):
    """Majorizing sequence v_0 = 0, v_{k+1} = phi(v_k).

    Truncated once an increment drops to tol or after max_iter steps,
    whichever comes first.  Requires the minimal root to exist, otherwise
    the sequence would climb out of [0, R].
    """
    if minimal_root(model, tol) is None:
        raise NotCertifiedError("majorant has no root: sequence does not converge")
    seq = [0.0]
    for _ in range(max_iter):
        nxt = max(phi(model, seq[-1]), seq[-1])
        step = nxt - seq[-1]
        seq.append(nxt)
        if step <= tol:
            break
    return seq


def sample_tabulated(omega, R, num_knots):
    """Tabulate any measure on a uniform grid over [0, R] (mainly for tests)."""
    radii = np.linspace(0.0, R, num_knots)
    return TabulatedOmega(tuple((float(r), float(omega.value(r))) for r in radii))
