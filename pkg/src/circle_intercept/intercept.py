"""Interception of a target moving on a circle.

The solver works on the travel parameter ``beta``: the unwrapped angle the
target has swept from its initial position in its direction of motion.  The
target reaches ``beta`` at ``T_t = beta * r_t / v_t``; the pursuer needs
``T_p = D_csc(alpha(beta)) / v_p``.  An interception is a root of
``delta_t = T_p - T_t``, and the earliest root gives the shortest path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .dubins import CscPath, d_csc, d_csc_grid
from .exceptions import BracketOverflow, InvalidBracket, VerificationFailed
from .geometry import (
    TWO_PI,
    PlanarPose,
    TargetCircleSpec,
    goal_pose_on_circle,
    wrap_angle,
    wrap_angles,
    wrap_pi,
)

DEFAULT_EPSILON = 1e-9
ALPHA_SCAN_POINTS = 4096
ROOT_SCAN_POINTS = 1024
BETA_XTOL = 1e-12
MAX_BRACKET_SHIFTS = 10**6


@dataclass(frozen=True)
class Scenario:
    pursuer: PlanarPose
    rho: float
    v_p: float
    circle: TargetCircleSpec
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        for name in ("rho", "v_p", "epsilon"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")

    @property
    def four_rho_ok(self) -> bool:
        """Whether every circle point is more than ``4*rho`` from the pursuer."""
        cx, cy = self.circle.center
        dist = math.hypot(cx - self.pursuer.x, cy - self.pursuer.y)
        return abs(dist - self.circle.radius) > 4.0 * self.rho

    @property
    def v_t(self) -> float:
        return self.circle.speed

    def alpha_at(self, beta):
        """Angular position of the target after sweeping ``beta``."""
        return wrap_angles(self.circle.alpha_init + self.circle.motion.sign * np.asarray(beta))

    def beta_to(self, alpha: float) -> float:
        """Smallest positive ``beta`` at which the target sits at ``alpha``."""
        beta = wrap_angle(self.circle.motion.sign * (alpha - self.circle.alpha_init))
        return beta if beta > 0.0 else TWO_PI

    def mirrored(self) -> Scenario:
        """The same problem reflected about the x-axis."""
        return replace(self, pursuer=self.pursuer.mirrored(), circle=self.circle.mirrored())


def pursuer_time(scenario: Scenario, beta: float) -> float:
    alpha = float(scenario.alpha_at(beta))
    return d_csc(scenario.pursuer, scenario.circle, scenario.rho, alpha).length / scenario.v_p


def target_time(scenario: Scenario, beta):
    if np.any(np.asarray(beta) < 0):
        raise ValueError("beta must be non-negative")
    return beta * scenario.circle.radius / scenario.v_t


def delta_t(scenario: Scenario, beta: float) -> float:
    return pursuer_time(scenario, beta) - target_time(scenario, beta)


def delta_t_grid(scenario: Scenario, betas) -> np.ndarray:
    """Vectorised ``delta_t``; NaN where no CSC path exists."""
    betas = np.asarray(betas, dtype=float)
    lengths, _ = d_csc_grid(
        scenario.pursuer, scenario.circle, scenario.rho, scenario.alpha_at(betas)
    )
    return lengths / scenario.v_p - target_time(scenario, betas)


def golden_section_min(f, a: float, b: float, tol: float = 1e-9) -> float:
    """Minimiser of a unimodal ``f`` on ``[a, b]`` to within ``tol``."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def find_alpha_min(scenario: Scenario, tol: float = 1e-9) -> float:
    """Angular position of the global minimum of the CSC distance."""
    step = TWO_PI / ALPHA_SCAN_POINTS
    grid = np.arange(ALPHA_SCAN_POINTS) * step
    lengths, _ = d_csc_grid(scenario.pursuer, scenario.circle, scenario.rho, grid)
    k = int(np.nanargmin(lengths))

    def dist(alpha):
        return d_csc(scenario.pursuer, scenario.circle, scenario.rho, alpha).length

    best = golden_section_min(dist, grid[k] - step, grid[k] + step, tol)
    # the refinement cannot lose to the grid point it started from
    if dist(best) > lengths[k]:
        best = grid[k]
    return wrap_angle(best)


class Bracket(NamedTuple):
    beta_l: float
    beta_u: float
    shifts: int


def initial_bracket(scenario: Scenario, refine: bool = True) -> Bracket:
    """Bracket ``[beta_l, beta_u]`` containing the earliest interception.

    The upper end starts at the first visit of the target to the position of
    minimum pursuer distance; the window is shifted one lap at a time until the
    target arrives there after the pursuer could.  With ``refine`` the bracket
    is then narrowed to the first sign change of ``delta_t`` on a grid of
    spacing ``2*pi/1024`` anchored at ``beta = 0``.
    """
    beta_l = 0.0
    beta_u = scenario.beta_to(find_alpha_min(scenario))
    shifts = 0
    while not (delta_t(scenario, beta_l) > 0.0 and delta_t(scenario, beta_u) < 0.0):
        if shifts >= MAX_BRACKET_SHIFTS:
            raise BracketOverflow(f"no bracket after {shifts} shifts")
        beta_l, beta_u = beta_u, beta_u + TWO_PI
        shifts += 1
    if not refine:
        return Bracket(float(beta_l), float(beta_u), shifts)

    step = TWO_PI / ROOT_SCAN_POINTS
    k0 = math.floor(beta_l / step) + 1
    k1 = math.ceil(beta_u / step)
    inner = np.arange(k0, k1) * step
    points = np.concatenate(([beta_l], inner[(inner > beta_l) & (inner < beta_u)], [beta_u]))
    dt = delta_t_grid(scenario, points)
    ok = np.isfinite(dt)
    points, dt = points[ok], dt[ok]
    j = max(int(np.flatnonzero(dt <= 0.0)[0]), 1)
    # grid and scalar evaluations may disagree in sign right at a root
    while j < len(points) - 1 and not delta_t(scenario, points[j]) <= 0.0:
        j += 1
    while j > 1 and not delta_t(scenario, points[j - 1]) > 0.0:
        j -= 1
    return Bracket(float(points[j - 1]), float(points[j]), shifts)


@dataclass(frozen=True)
class InterceptSolution:
    beta_star: float
    alpha_star: float
    t_star: float
    path: CscPath
    residual: float
    iterations: int
    bracket_shifts: int
    four_rho_ok: bool
    converged: bool

    @property
    def certified(self) -> bool:
        """Converged under the 4-rho condition, where the path is optimal."""
        return self.converged and self.four_rho_ok

    @property
    def total_len(self) -> float:
        return self.path.total_len


def bisect(scenario: Scenario, bracket: Bracket, max_iter: int = 200) -> InterceptSolution:
    """Bisection on ``delta_t`` until ``|delta_t| <= epsilon``.

    Raises:
        InvalidBracket: ``delta_t`` is not positive at ``beta_l`` and
            non-positive at ``beta_u``.
    """
    beta_l, beta_u, shifts = bracket
    if not (delta_t(scenario, beta_l) > 0.0 and delta_t(scenario, beta_u) <= 0.0):
        raise InvalidBracket(f"delta_t does not change sign on [{beta_l!r}, {beta_u!r}]")
    iterations = 0
    while True:
        beta = 0.5 * (beta_l + beta_u)
        dt = delta_t(scenario, beta)
        iterations += 1
        if abs(dt) <= scenario.epsilon:
            break
        if dt > 0.0:
            beta_l = beta
        else:
            beta_u = beta
        if beta_u - beta_l <= BETA_XTOL or iterations >= max_iter:
            break
    alpha = float(scenario.alpha_at(beta))
    path = d_csc(scenario.pursuer, scenario.circle, scenario.rho, alpha).path
    return InterceptSolution(
        beta_star=beta,
        alpha_star=alpha,
        t_star=float(target_time(scenario, beta)),
        path=path,
        residual=abs(dt),
        iterations=iterations,
        bracket_shifts=shifts,
        four_rho_ok=scenario.four_rho_ok,
        converged=abs(dt) <= scenario.epsilon,
    )


def solve(scenario: Scenario) -> InterceptSolution:
    """Earliest interception point and the pursuer's CSC path to it."""
    return bisect(scenario, initial_bracket(scenario))


# -- verification ---------------------------------------------------------------

POSITION_TOL = 1e-6
HEADING_TOL = 1e-6


@dataclass(frozen=True)
class VerificationReport:
    endpoint_error: float
    heading_error: float
    timing_error: float
    min_turn_radius: float
    endpoint_ok: bool
    heading_ok: bool
    timing_ok: bool
    curvature_ok: bool

    @property
    def passed(self) -> bool:
        return self.endpoint_ok and self.heading_ok and self.timing_ok and self.curvature_ok

    def failed_clauses(self) -> list[str]:
        names = ("endpoint", "heading", "timing", "curvature")
        flags = (self.endpoint_ok, self.heading_ok, self.timing_ok, self.curvature_ok)
        return [n for n, ok in zip(names, flags) if not ok]

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "endpoint_error_m": self.endpoint_error,
            "heading_error_rad": self.heading_error,
            "timing_error_m": self.timing_error,
            "min_turn_radius_m": self.min_turn_radius,
            "failed_clauses": self.failed_clauses(),
        }


def target_pose_at(scenario: Scenario, t: float) -> PlanarPose:
    circle = scenario.circle
    alpha = circle.alpha_init + circle.motion.sign * circle.speed * t / circle.radius
    return goal_pose_on_circle(circle, alpha)


def verify_interception(
    scenario: Scenario, solution: InterceptSolution, raise_on_failure: bool = True
) -> VerificationReport:
    """Re-trace the solution path and check it actually meets the target.

    Checks that the traced endpoint is where the target is at ``t_star``, that
    the headings agree, that the path takes ``t_star`` to fly, and that no arc
    is tighter than ``rho``.
    """
    path = solution.path
    end = path.end_pose
    target = target_pose_at(scenario, solution.t_star)
    endpoint_error = math.hypot(end.x - target.x, end.y - target.y)
    heading_error = abs(wrap_pi(end.heading - target.heading))
    timing_error = abs(path.total_len - scenario.v_p * solution.t_star)
    curvature_ok = (
        path.turn_radius >= scenario.rho * (1.0 - 1e-12)
        and path.straight_len >= 0.0
        and 0.0 <= path.phi1 < TWO_PI
        and 0.0 <= path.phi2 < TWO_PI
    )
    report = VerificationReport(
        endpoint_error=endpoint_error,
        heading_error=heading_error,
        timing_error=timing_error,
        min_turn_radius=path.turn_radius,
        endpoint_ok=endpoint_error <= POSITION_TOL,
        heading_ok=heading_error <= HEADING_TOL,
        timing_ok=timing_error <= scenario.epsilon * scenario.v_p,
        curvature_ok=curvature_ok,
    )
    if raise_on_failure and not report.passed:
        raise VerificationFailed(report)
    return report
