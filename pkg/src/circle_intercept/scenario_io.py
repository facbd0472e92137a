"""Scenario documents (JSON) and solution reports."""

from __future__ import annotations

import json
import math
from pathlib import Path

from .exceptions import ScenarioError
from .geometry import PlanarPose, TargetCircleSpec, TurnDirection
from .intercept import DEFAULT_EPSILON, InterceptSolution, Scenario, VerificationReport

_DIRECTIONS = {"cw": TurnDirection.RIGHT, "ccw": TurnDirection.LEFT}

_SCHEMA = {
    "pursuer": {"x": None, "y": None, "heading_rad": None},
    "rho": None,
    "v_p": None,
    "circle": {"cx": None, "cy": None, "r": None, "direction": None, "alpha_init_rad": None},
    "v_t": None,
    "epsilon": None,
}
_OPTIONAL = {"epsilon"}


def _check_keys(doc, schema, prefix):
    if not isinstance(doc, dict):
        raise ScenarioError(f"{prefix or 'document'}: expected an object")
    unknown = sorted(set(doc) - set(schema))
    if unknown:
        raise ScenarioError(f"unknown key(s): {', '.join(prefix + k for k in unknown)}")
    for key, sub in schema.items():
        if key not in doc:
            if prefix or key not in _OPTIONAL:
                raise ScenarioError(f"missing key: {prefix}{key}")
            continue
        if sub is not None:
            _check_keys(doc[key], sub, f"{prefix}{key}.")


def _number(doc, key, field):
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{field}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ScenarioError(f"{field}: must be finite")
    return float(value)


def scenario_from_dict(doc: dict) -> Scenario:
    """Validate a scenario document and build the :class:`Scenario`."""
    _check_keys(doc, _SCHEMA, "")
    p, c = doc["pursuer"], doc["circle"]
    direction = c["direction"]
    if direction not in _DIRECTIONS:
        raise ScenarioError(f"circle.direction: expected 'cw' or 'ccw', got {direction!r}")
    pursuer = PlanarPose(
        _number(p, "x", "pursuer.x"),
        _number(p, "y", "pursuer.y"),
        _number(p, "heading_rad", "pursuer.heading_rad"),
    )
    positive = {}
    for key, field, sub in (
        ("rho", "rho", doc),
        ("v_p", "v_p", doc),
        ("v_t", "v_t", doc),
        ("r", "circle.r", c),
        ("epsilon", "epsilon", doc),
    ):
        if key not in sub:
            continue
        value = _number(sub, key, field)
        if not value > 0:
            raise ScenarioError(f"{field}: must be positive, got {value!r}")
        positive[key] = value
    circle = TargetCircleSpec(
        center=(_number(c, "cx", "circle.cx"), _number(c, "cy", "circle.cy")),
        radius=positive["r"],
        motion=_DIRECTIONS[direction],
        alpha_init=_number(c, "alpha_init_rad", "circle.alpha_init_rad"),
        speed=positive["v_t"],
    )
    return Scenario(
        pursuer=pursuer,
        rho=positive["rho"],
        v_p=positive["v_p"],
        circle=circle,
        epsilon=positive.get("epsilon", DEFAULT_EPSILON),
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    circle = scenario.circle
    return {
        "pursuer": {
            "x": scenario.pursuer.x,
            "y": scenario.pursuer.y,
            "heading_rad": scenario.pursuer.heading,
        },
        "rho": scenario.rho,
        "v_p": scenario.v_p,
        "circle": {
            "cx": circle.center[0],
            "cy": circle.center[1],
            "r": circle.radius,
            "direction": "cw" if circle.motion is TurnDirection.RIGHT else "ccw",
            "alpha_init_rad": circle.alpha_init,
        },
        "v_t": circle.speed,
        "epsilon": scenario.epsilon,
    }


def load_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return scenario_from_dict(doc)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def solution_report(
    scenario: Scenario, solution: InterceptSolution, verification: VerificationReport
) -> dict:
    path = solution.path
    return {
        "status": "VERIFIED" if verification.passed else "FAILED",
        "scenario": scenario_to_dict(scenario),
        "four_rho_ok": scenario.four_rho_ok,
        "certified": solution.certified,
        "solution": {
            "alpha_star": solution.alpha_star,
            "beta_star": solution.beta_star,
            "t_star": solution.t_star,
            "mode": path.mode.name,
            "phi1": path.phi1,
            "straight_len": path.straight_len,
            "phi2": path.phi2,
            "turn_radius": path.turn_radius,
            "total_len": path.total_len,
            "residual": solution.residual,
            "iterations": solution.iterations,
            "bracket_shifts": solution.bracket_shifts,
        },
        "verification": verification.as_dict(),
    }
