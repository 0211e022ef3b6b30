"""Discrete Schroedingerlet frames: generators, analysis/synthesis and frame checks."""

import json as _json

from . import _schrolet
from ._schrolet import (
    AngularLabel,
    CoefficientTable,
    FiniteSubgroup,
    Generator,
    RadialGrid,
    SamplingGrid,
    SequenceSignal,
    analyze,
    band_test_signal,
    build_generator_2d,
    build_generator_3d,
    frame_inner_exact,
    make_finite_subgroup,
    make_log_grid,
    make_sampling_grid,
    multiplicities,
    propagate,
    run_command,
    synthesize,
)

__all__ = [
    "AngularLabel", "CoefficientTable", "FiniteSubgroup", "Generator", "RadialGrid", "SamplingGrid",
    "SequenceSignal", "analyze", "band_test_signal", "build_generator_2d", "build_generator_3d",
    "check_continuous_admissibility", "check_discrete_conditions", "frame_inner_exact",
    "make_finite_subgroup", "make_log_grid", "make_sampling_grid", "multiplicities", "parseval_report",
    "propagate", "run_command", "synthesize", "weil_constant",
]


def check_continuous_admissibility(g, rescale=1.0, tol=1e-10):
    return _json.loads(_schrolet.check_continuous_admissibility(g, rescale, tol))


def check_discrete_conditions(g, tol=1e-12):
    return _json.loads(_schrolet.check_discrete_conditions(g, tol))


def parseval_report(f, g, s, tol=1e-8):
    return _json.loads(_schrolet.parseval_report(f, g, s, tol))


def weil_constant(phi, d=2, u_min=-3.0, u_max=3.0, n=256, rotations=16):
    """phi(a, R) with R the d x d rotation matrix."""
    return _json.loads(_schrolet.weil_constant(phi, d, u_min, u_max, n, rotations))
