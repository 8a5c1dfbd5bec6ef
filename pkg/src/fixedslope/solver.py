"""Fixed slope iteration on finite-dimensional problems.

The iteration is x_{k+1} = x_k - B F(x_k) with a constant slope matrix B.
B is only ever applied to vectors: no linear solve and no factorization
happens anywhere in this module, so an ill-conditioned B degrades the
contraction rate but never the arithmetic.

A solve can carry a convergence certificate.  The trace then pairs every
step with the increment v_{k+1} - v_k of the scalar majorizing sequence
(which must dominate the step norm) and with the a-priori error bound
nu_star - v_k, and the trust region shrinks to the certified ball: an
iterate trying to leave it is a model violation and stops the run with a
distinguished reason instead of an exception.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from . import majorant
from .errors import (
    BadParameters,
    CertificateMissing,
    EvaluationFailed,
    JacobianMissing,
    NotCertifiedError,
    NuNotContractive,
    RadiusOutOfRange,
)
from .majorant import MajorantModel, TabulatedOmega
from .norms import NORM_KINDS, matrix_norm, vector_norm

STOP_STEP_TOL = "step_tol"
STOP_RESIDUAL_TOL = "residual_tol"
STOP_MAX_ITER = "max_iter"
STOP_LEFT_BALL = "left_ball"

_CONVERGED = (STOP_STEP_TOL, STOP_RESIDUAL_TOL)

# Slack granted on ball-containment checks; matches the bound tolerances
# used when verifying the majorization inequalities.
_BALL_SLACK = 1e-9

MODE_DIRECT = "direct"
MODE_CENTERED = "centered"

DEFAULT_NUM_RADII = 24


@dataclass(frozen=True)
class Problem:
    """A finite-dimensional instance F(x) = 0 with its fixed slope.

    f maps an (n,) vector to an (n,) vector; jacobian (optional, needed
    only by the measure estimator) maps it to a dense (n, n) matrix.  All
    evaluations must be possible inside the closed ball of radius R
    around x0.  Evaluators must be effect-free; the probe routines may
    call them from several starts.
    """

    f: object
    slope: np.ndarray
    x0: np.ndarray
    R: float
    norm: str = "max"
    jacobian: object = None

    def __post_init__(self):
        x0 = np.atleast_1d(np.asarray(self.x0, dtype=float))
        slope = np.asarray(self.slope, dtype=float)
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "slope", slope)
        n = x0.shape[0]
        if x0.ndim != 1 or not np.all(np.isfinite(x0)):
            raise BadParameters("x0 must be a finite vector")
        if slope.shape != (n, n) or not np.all(np.isfinite(slope)):
            raise BadParameters(f"slope must be a finite {n}x{n} matrix")
        if not (self.R > 0.0 and math.isfinite(self.R)):
            raise BadParameters(f"R must be finite and > 0, got {self.R}")
        if self.norm not in NORM_KINDS:
            raise BadParameters(f"norm must be one of {NORM_KINDS}, got {self.norm!r}")

    @property
    def dim(self):
        return self.x0.shape[0]


@dataclass(frozen=True)
class StoppingRule:
    tol_step: float = 1e-12
    tol_residual: float = 1e-12
    max_iter: int = 10000

    def __post_init__(self):
        if self.tol_step <= 0.0 or self.tol_residual <= 0.0:
            raise BadParameters("stopping tolerances must be positive")
        if self.max_iter < 1:
            raise BadParameters("max_iter must be >= 1")


@dataclass
class IterationTrace:
    """Recorded run of the iteration.

    step_norms has one entry per step; residual_norms one per recorded
    iterate (so one more).  The scalar fields are present only when the
    solve carried a certificate.
    """

    iterates: list
    step_norms: list
    residual_norms: list
    stop_reason: str
    norm: str = "max"
    scalar_steps: list | None = None
    bound_slacks: list | None = None
    error_bounds: list | None = None

    @property
    def num_steps(self):
        return len(self.step_norms)

    @property
    def converged(self):
        return self.stop_reason in _CONVERGED


def _eval_f(problem, x):
    try:
        y = np.asarray(problem.f(x), dtype=float)
    except Exception as exc:
        raise EvaluationFailed(f"operator evaluation raised: {exc}") from exc
    if y.shape != (problem.dim,):
        raise EvaluationFailed(
            f"operator returned shape {y.shape}, expected ({problem.dim},)"
        )
    if not np.all(np.isfinite(y)):
        raise EvaluationFailed("operator returned non-finite values")
    return y


def _eval_jacobian(problem, x):
    if problem.jacobian is None:
        raise JacobianMissing("problem has no jacobian evaluator")
    try:
        j = np.asarray(problem.jacobian(x), dtype=float)
    except Exception as exc:
        raise EvaluationFailed(f"jacobian evaluation raised: {exc}") from exc
    n = problem.dim
    if j.shape != (n, n):
        raise EvaluationFailed(f"jacobian returned shape {j.shape}, expected ({n}, {n})")
    if not np.all(np.isfinite(j)):
        raise EvaluationFailed("jacobian returned non-finite values")
    return j


def fsi_step(problem, x):
    """One iteration step x - B F(x): one F evaluation, one mat-vec."""
    x = np.asarray(x, dtype=float)
    if vector_norm(x - problem.x0, problem.norm) > problem.R + _BALL_SLACK:
        raise RadiusOutOfRange("step requested outside the trust ball")
    return x - problem.slope @ _eval_f(problem, x)


def _extended_sequence(cert, length):
    """First `length` majorizing terms, continuing past the stored preview."""
    seq = list(cert.scalar_sequence_preview[:length])
    if cert.model is not None:
        while len(seq) < length:
            seq.append(max(majorant.phi(cert.model, seq[-1]), seq[-1]))
    return seq


def fsi_solve(problem, stop=None, cert=None):
    """Run the iteration; returns (solution, trace).

    With a certificate attached the trust ball shrinks to radius
    min(R, nu_star) and each step gets its scalar counterpart recorded.
    Reaching max_iter is a stop reason, not an error.
    """
    stop = stop or StoppingRule()
    ball = problem.R
    if cert is not None:
        if not cert.certified:
            raise ValueError("attached certificate is not certified")
        ball = min(problem.R, cert.nu_star)

    vn = lambda v: vector_norm(v, problem.norm)
    x = problem.x0
    r = _eval_f(problem, x)
    iterates = [x]
    residual_norms = [vn(r)]
    step_norms = []
    while True:
        if residual_norms[-1] <= stop.tol_residual:
            reason = STOP_RESIDUAL_TOL
            break
        if len(step_norms) >= stop.max_iter:
            reason = STOP_MAX_ITER
            break
        x_next = x - problem.slope @ r
        sn = vn(x_next - x)
        if vn(x_next - problem.x0) > ball + _BALL_SLACK:
            reason = STOP_LEFT_BALL
            break
        r = _eval_f(problem, x_next)
        iterates.append(x_next)
        residual_norms.append(vn(r))
        step_norms.append(sn)
        x = x_next
        if sn <= stop.tol_step:
            reason = STOP_STEP_TOL
            break

    trace = IterationTrace(
        iterates=iterates,
        step_norms=step_norms,
        residual_norms=residual_norms,
        stop_reason=reason,
        norm=problem.norm,
    )
    if cert is not None and step_norms:
        seq = _extended_sequence(cert, len(step_norms) + 1)
        pairs = min(len(seq) - 1, len(step_norms))
        trace.scalar_steps = [seq[k + 1] - seq[k] for k in range(pairs)]
        trace.bound_slacks = [
            trace.scalar_steps[k] - step_norms[k] for k in range(pairs)
        ]
        trace.error_bounds = [cert.nu_star - seq[k] for k in range(pairs)]
    return x, trace


@dataclass
class MajorizationReport:
    """Outcome of checking a trace against its scalar majorant.

    step_slacks[k] = (v_{k+1} - v_k) - ||x_{k+1} - x_k||, and when the
    solve converged tail_slacks[k] = (nu_star - v_k) - ||x_final - x_k||;
    every slack must stay above -slack_tol for the report to pass.
    """

    passed: bool
    worst_slack: float
    slack_tol: float
    converged: bool
    step_slacks: list
    tail_slacks: list | None = None


def verify_majorization(trace, model, slack_tol=1e-9):
    """Check the majorization inequalities of a trace against a model.

    The scalar sequence is recomputed from the model, so the trace does
    not need to have been produced with a certificate attached.  A model
    that fails the trace is reported, not raised; only a model that
    cannot be certified at all raises CertificateMissing.
    """
    if trace.num_steps < 1:
        raise ValueError("trace has no steps to verify")
    try:
        ns = majorant.minimal_root(model)
    except (NuNotContractive, NotCertifiedError) as exc:
        raise CertificateMissing(str(exc)) from exc
    if ns is None:
        raise CertificateMissing("model has no majorant root, nothing to verify")

    seq = [0.0]
    for _ in range(trace.num_steps):
        seq.append(max(majorant.phi(model, seq[-1]), seq[-1]))
    step_slacks = [
        (seq[k + 1] - seq[k]) - trace.step_norms[k] for k in range(trace.num_steps)
    ]
    worst = min(step_slacks)
    tail_slacks = None
    if trace.converged:
        vn = lambda v: vector_norm(v, trace.norm)
        x_final = trace.iterates[-1]
        tail_slacks = [
            (ns - seq[k]) - vn(x_final - trace.iterates[k])
            for k in range(trace.num_steps)
        ]
        worst = min(worst, min(tail_slacks))
    return MajorizationReport(
        passed=worst >= -slack_tol,
        worst_slack=worst,
        slack_tol=slack_tol,
        converged=trace.converged,
        step_slacks=step_slacks,
        tail_slacks=tail_slacks,
    )


def _sphere_points(problem, radius, samples, rng):
    """Points on the sphere of the problem norm around x0.

    Dimension 1 has a two-point sphere and is enumerated exactly.  In
    higher dimensions the budget mixes seeded pseudorandom directions
    with directions through the extreme points of the norm ball, where a
    convex objective attains its supremum: all 2n signed axis vectors for
    the one norm, random sign corners for the max norm.  The two-norm
    sphere is smooth, so it gets normalized Gaussian directions only.
    """
    n = problem.dim
    if n == 1:
        return [problem.x0 - radius, problem.x0 + radius]
    directions = []
    if problem.norm == "one":
        for j in range(n):
            for sign in (1.0, -1.0):
                d = np.zeros(n)
                d[j] = sign
                directions.append(d)
    elif problem.norm == "max":
        directions.extend(rng.choice([-1.0, 1.0], size=n)
                          for _ in range((samples + 1) // 2))
    while len(directions) < samples:
        d = rng.standard_normal(n)
        nd = vector_norm(d, problem.norm)
        while nd == 0.0:  # pragma: no cover - probability zero
            d = rng.standard_normal(n)
            nd = vector_norm(d, problem.norm)
        directions.append(d / nd)
    return [problem.x0 + radius * d for d in directions]


def estimate_omega(problem, mode=MODE_DIRECT, radii=None, samples_per_radius=64, seed=0):
    """Sample-based tabulated continuity measure.

    mode "direct" tabulates max ||B F'(x) - I|| over sampled spheres
    (value at radius 0 is nu itself); mode "centered" tabulates
    max ||B (F'(x) - F'(x0))|| with value 0 at radius 0.  Values are made
    non-decreasing by a running maximum.  Sampling can only underestimate
    the true supremum, so the result is a lower envelope of the measure.
    """
    if mode not in (MODE_DIRECT, MODE_CENTERED):
        raise BadParameters(f"mode must be 'direct' or 'centered', got {mode!r}")
    if radii is None:
        radii = default_radii(problem.R)
    radii = [float(r) for r in radii]
    if not radii or any(r <= 0.0 for r in radii):
        raise BadParameters("radii must be positive")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise BadParameters("radii must increase strictly")
    if radii[-1] > problem.R * (1.0 + 1e-12):
        raise BadParameters(f"largest radius {radii[-1]} exceeds R={problem.R}")
    if samples_per_radius < 1:
        raise BadParameters("samples_per_radius must be >= 1")

    mn = lambda m: matrix_norm(m, problem.norm)
    eye = np.eye(problem.dim)
    j0 = _eval_jacobian(problem, problem.x0)
    bj0 = problem.slope @ j0
    if mode == MODE_DIRECT:
        base = mn(bj0 - eye)
        if base >= 1.0:
            raise NuNotContractive(
                f"||B F'(x0) - I|| = {base} >= 1: not a contraction at x0"
            )
    else:
        base = 0.0

    rng = np.random.default_rng(seed)
    knots = [(0.0, base)]
    running = base
    for radius in radii:
        worst = 0.0
        for x in _sphere_points(problem, radius, samples_per_radius, rng):
            bj = problem.slope @ _eval_jacobian(problem, x)
            mat = bj - eye if mode == MODE_DIRECT else bj - bj0
            worst = max(worst, mn(mat))
        running = max(running, worst)
        knots.append((radius, running))
    return TabulatedOmega(tuple(knots))


def default_radii(R, num=DEFAULT_NUM_RADII):
    return list(np.linspace(R / num, R, num))


def nu_at_start(problem):
    """||B F'(x0) - I||, the contraction defect at the starting point."""
    j0 = _eval_jacobian(problem, problem.x0)
    return matrix_norm(problem.slope @ j0 - np.eye(problem.dim), problem.norm)


def eta_at_start(problem):
    """||B F(x0)||, the exact first-step norm."""
    return vector_norm(problem.slope @ _eval_f(problem, problem.x0), problem.norm)


def estimate_majorant(problem, mode=MODE_CENTERED, radii=None, samples_per_radius=64, seed=0):
    """Tabulated majorant model with the tight first-step bound.

    eta is computed as exactly ||B F(x0)||.  In centered mode the measure
    is the centered estimate shifted up by nu = ||B F'(x0) - I||, which
    dominates the direct estimate pointwise by the triangle inequality.
    """
    eta = vector_norm(problem.slope @ _eval_f(problem, problem.x0), problem.norm)
    if eta == 0.0:
        raise BadParameters("x0 already solves the problem; nothing to certify")
    omega = estimate_omega(problem, mode, radii, samples_per_radius, seed)
    if mode == MODE_CENTERED:
        eye = np.eye(problem.dim)
        nu = matrix_norm(problem.slope @ _eval_jacobian(problem, problem.x0) - eye,
                         problem.norm)
        if nu >= 1.0:
            raise NuNotContractive(
                f"||B F'(x0) - I|| = {nu} >= 1: not a contraction at x0"
            )
        omega = TabulatedOmega(tuple((r, w + nu) for r, w in omega.knots))
    return MajorantModel(eta=eta, R=problem.R, omega=omega)


@dataclass
class UniquenessReport:
    """Limits of solves started across the uniqueness ball.

    passed requires every start to converge and all limits to agree
    pairwise within tol (distances in the problem norm).
    """

    passed: bool
    max_pairwise_distance: float
    tol: float
    num_starts: int
    limits: list
    failures: list


def uniqueness_probe(problem, cert, num_starts=100, seed=0, tol=1e-8, stop=None):
    """Re-solve from starts spread over the open uniqueness ball.

    The first start is x0 itself; the rest are sampled uniformly inside
    radius lambda_star * (1 - 1e-6), strictly inside regardless of the
    boundary type.  Each sub-solve gets trust radius rho + lambda_star
    (rho = distance of its start from x0): the certified theory confines
    its iterates to the lambda_star ball around the original x0, so a
    trust-ball exit again signals a wrong model and is reported as a
    per-start failure rather than raised.
    """
    if not cert.certified:
        raise NotCertifiedError("uniqueness probe needs a certified certificate")
    if cert.lambda_star > problem.R + _BALL_SLACK:
        raise BadParameters("uniqueness radius exceeds the problem trust radius")
    if num_starts < 1:
        raise BadParameters("num_starts must be >= 1")

    vn = lambda v: vector_norm(v, problem.norm)
    rng = np.random.default_rng(seed)
    reach = cert.lambda_star * (1.0 - 1e-6)
    starts = [problem.x0]
    for _ in range(num_starts - 1):
        d = rng.standard_normal(problem.dim)
        nd = vn(d)
        while nd == 0.0:  # pragma: no cover - probability zero
            d = rng.standard_normal(problem.dim)
            nd = vn(d)
        radius = reach * rng.random() ** (1.0 / problem.dim)
        starts.append(problem.x0 + (radius / nd) * d)

    limits = []
    failures = []
    for i, start in enumerate(starts):
        rho = vn(start - problem.x0)
        sub = replace(problem, x0=start, R=rho + cert.lambda_star)
        try:
            sol, trace = fsi_solve(sub, stop)
        except EvaluationFailed as exc:
            failures.append((i, f"evaluation failed: {exc}"))
            continue
        if not trace.converged:
            failures.append((i, f"stopped with {trace.stop_reason}"))
            continue
        limits.append(sol)

    max_dist = 0.0
    for i in range(len(limits)):
        for j in range(i + 1, len(limits)):
            max_dist = max(max_dist, vn(limits[i] - limits[j]))
    return UniquenessReport(
        passed=not failures and max_dist <= tol,
        max_pairwise_distance=max_dist,
        tol=tol,
        num_starts=num_starts,
        limits=limits,
        failures=failures,
    )
