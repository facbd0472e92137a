"""Curvature-constrained interception of a target moving on a circle."""

from .dubins import MODE_ORDER, CscPath, PathMode, csc_path, d_csc, d_csc_grid, mode_lengths
from .exceptions import (
    AllModesInfeasible,
    BracketOverflow,
    Infeasible,
    InterceptError,
    InvalidBracket,
    NoTransition,
    ScenarioError,
    VerificationFailed,
)
from .geometry import (
    PlanarPose,
    RigidTransform,
    TargetCircleSpec,
    TurnDirection,
    canonicalize,
    goal_pose_on_circle,
    tangent_segment,
    turn_center,
    wrap_angle,
)
from .intercept import (
    Bracket,
    InterceptSolution,
    Scenario,
    VerificationReport,
    bisect,
    find_alpha_min,
    initial_bracket,
    pursuer_time,
    solve,
    target_time,
    verify_interception,
)

__version__ = "0.1.0"

__all__ = [
    "MODE_ORDER", "CscPath", "PathMode", "csc_path", "d_csc", "d_csc_grid", "mode_lengths",
    "AllModesInfeasible", "BracketOverflow", "Infeasible", "InterceptError", "InvalidBracket",
    "NoTransition", "ScenarioError", "VerificationFailed",
    "PlanarPose", "RigidTransform", "TargetCircleSpec", "TurnDirection", "canonicalize",
    "goal_pose_on_circle", "tangent_segment", "turn_center", "wrap_angle",
    "Bracket", "InterceptSolution", "Scenario", "VerificationReport", "bisect", "find_alpha_min",
    "initial_bracket", "pursuer_time", "solve", "target_time", "verify_interception",
]
