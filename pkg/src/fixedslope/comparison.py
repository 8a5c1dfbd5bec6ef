"""Side-by-side evaluation of rival semilocal convergence conditions.

Three conditions are compared on the same Hoelder data (l0, alpha, nu, eta):

  * the majorant condition of this package, built on
        g(v) = l0 v^(1+alpha) / (1+alpha) - (1-nu) v + eta ;
  * the Ahues/Argyros fixed-slope condition, built on the steeper
        f(v) = l0 v^(1+alpha) - (1-delta) v + eta ,   delta = nu ,
    which is exactly the majorant condition with l0 inflated by (1+alpha)
    - that reformulation is how f is handled here;
  * the classical centered Kantorovich condition 2 l0 eta <= 1
    (Lipschitz case alpha = 1, nu = 0 only).

f > g for v > 0, so the f-based condition is strictly stronger; the
admissible eta shrinks by the factor (1+alpha)^(1/alpha), i.e. by 2 in
the Lipschitz case.  The same pointwise gap forces the computed root
order nu_star <= r_star <= r_star_star <= nu_star_star; the rival
write-up states r_star < nu_star instead, so the report carries both the
stated and the computed ordering rather than asserting either.
"""

from dataclasses import dataclass

from . import majorant
from .certificate import HoelderParams, check_holder_condition, holder_eta_max, holder_roots
from .errors import ConditionFails
from .majorant import ROOT_TOL

ORDER_STATED = "r_star < nu_star <= nu_star_star"


def _rival_params(p, delta=None):
    """Rewrite f as the majorant g of a measure with l0 scaled by (1+alpha)."""
    d = p.nu if delta is None else delta
    return HoelderParams(p.l0 * (1.0 + p.alpha), p.alpha, d, p.eta)


def ahues_f(p, v, delta=None):
    """The rival scalar function f(v) = l0 v^(1+alpha) - (1-delta) v + eta."""
    d = p.nu if delta is None else delta
    return p.l0 * v ** (1.0 + p.alpha) - (1.0 - d) * v + p.eta


def ahues_eta_max(l0, alpha, nu):
    """Largest eta admitted by the rival condition; inf when l0 = 0."""
    return holder_eta_max(l0 * (1.0 + alpha), alpha, nu)


def ahues_condition(p, delta=None):
    """(holds, eta_max) for the rival condition
    l0 eta^alpha <= (1-nu)^(alpha+1) [alpha/(1+alpha)]^alpha (1+alpha)^(-1)."""
    q = _rival_params(p, delta)
    return check_holder_condition(q), holder_eta_max(q.l0, q.alpha, q.nu)


def ahues_roots(p, R, tol=ROOT_TOL, delta=None):
    """(r_star, r_star_star): minimal/maximal roots of f on [0, R].

    Same convex-bisection machinery as the majorant roots, applied to the
    rewritten measure; values equal to R mean the root is at or beyond R.
    Raises ConditionFails when the rival condition does not hold.
    """
    return holder_roots(_rival_params(p, delta), R, tol)


def kantorovich_condition(l0, eta):
    """Centered Kantorovich condition 2 l0 eta <= 1 (alpha = 1, nu = 0 case)."""
    if l0 < 0.0:
        raise ValueError(f"l0 must be >= 0, got {l0}")
    if eta <= 0.0:
        raise ValueError(f"eta must be > 0, got {eta}")
    return 2.0 * l0 * eta <= 1.0


@dataclass(frozen=True)
class ConditionReport:
    l0: float
    alpha: float
    nu: float
    delta: float
    eta: float
    R: float
    new_holds: bool
    new_eta_max: float
    ahues_holds: bool
    ahues_eta_max: float
    kantorovich_holds: bool | None  # None: not applicable (needs alpha=1, nu=0)
    nu_star: float | None
    nu_star_star: float | None
    lambda_star: float | None
    r_star: float | None
    r_star_star: float | None
    eta_max_ratio: float | None
    containment_holds: bool | None  # [r*, r**] inside [nu*, nu**]
    order_stated: str
    order_computed: str | None


def compare_report(p, R, tol=ROOT_TOL, delta=None):
    """Evaluate all conditions and radii on one parameter set.

    Radii that do not exist (condition fails, or the root lies beyond R
    and is clipped there) are reported as the clipped value or None; the
    containment check runs only when all four roots are strictly inside R.
    """
    d = p.nu if delta is None else delta
    new_holds = check_holder_condition(p)
    new_emax = holder_eta_max(p.l0, p.alpha, p.nu)
    rival_holds, rival_emax = ahues_condition(p, delta)
    kant = None
    if p.alpha == 1.0 and p.nu == 0.0:
        kant = kantorovich_condition(p.l0, p.eta)

    ns = nss = lam = None
    if new_holds:
        model = p.model(R)
        ns = majorant.minimal_root(model, tol)
        if ns is not None:
            nss = majorant.maximal_root(model, tol)
            if nss is None:
                nss = R
            lam = majorant.lambda_star(model, tol)[0]
    rs = rss = None
    if rival_holds:
        try:
            rs, rss = ahues_roots(p, R, tol, delta)
        except ConditionFails:  # pragma: no cover - guarded by rival_holds
            pass

    ratio = None
    if 0.0 < rival_emax < float("inf"):
        ratio = new_emax / rival_emax

    containment = None
    order = None
    if None not in (ns, nss, rs, rss):
        pad = 10.0 * tol * max(1.0, p.eta)
        if max(nss, rss) < R:  # all roots interior, comparison meaningful
            containment = (ns <= rs + pad) and (rss <= nss + pad)
        order = "nu_star <= r_star" if ns <= rs + pad else "r_star < nu_star"

    return ConditionReport(
        l0=p.l0,
        alpha=p.alpha,
        nu=p.nu,
        delta=d,
        eta=p.eta,
        R=R,
        new_holds=new_holds,
        new_eta_max=new_emax,
        ahues_holds=rival_holds,
        ahues_eta_max=rival_emax,
        kantorovich_holds=kant,
        nu_star=ns,
        nu_star_star=nss,
        lambda_star=lam,
        r_star=rs,
        r_star_star=rss,
        eta_max_ratio=ratio,
        containment_holds=containment,
        order_stated=ORDER_STATED,
        order_computed=order,
    )
