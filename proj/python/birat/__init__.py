"""Kahan discretization of quadratic vector fields and discrete Lotka-Volterra schemes."""

import json
from dataclasses import dataclass, field

import numpy as np

from ._birat import (
    BiratError,
    ConfigError,
    ConstraintViolation,
    NotBirational,
    ParseError,
    QuadraticVectorField,
    SingularStepMatrix,
    enzyme_diml_vf,
    enzyme_vf,
    kahan_inverse_step,
    kahan_step,
    lv_inverse_step,
    lv_step,
    lv_vf,
    multiplier_of_eigenvalue,
    schnakenberg_hopf_b,
    schnakenberg_step,
    symplectic_residual,
)
from . import _birat


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    names: list
    error: str = ""
    warnings: list = field(default_factory=list)

    def __getitem__(self, name):
        return self.states[:, self.names.index(name)]


def classify(params, certify=False):
    """Birational/symplectic classification of a ten-entry parameter list."""
    return json.loads(_birat._classify(params, certify))


def integrate(model="lv", method="kahan", params=None, h=0.01, steps=1, x0=None, tol=1e-9):
    times, states, names, error, warnings = _birat._integrate(model, method, params, h, steps, x0, tol)
    return Trajectory(np.asarray(times), np.asarray(states), list(names), error, list(warnings))


def verify(suite="all", seed=7, tol=None):
    return json.loads(_birat._verify(suite, seed, tol))


__all__ = [
    "BiratError", "ConfigError", "ConstraintViolation", "NotBirational", "ParseError",
    "QuadraticVectorField", "SingularStepMatrix", "Trajectory", "classify", "enzyme_diml_vf",
    "enzyme_vf", "integrate", "kahan_inverse_step", "kahan_step", "lv_inverse_step", "lv_step",
    "lv_vf", "multiplier_of_eigenvalue", "schnakenberg_hopf_b", "schnakenberg_step",
    "symplectic_residual", "verify",
]
