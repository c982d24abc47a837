"""Python bindings for the Plasma Cash simulator."""

import json

from ._core import (
    PlasmaError,
    Simulation,
    SmtConfig,
    SparseMerkleTree,
    scenarios,
    sha256,
    verify_proof,
)
from . import _core

__all__ = [
    "PlasmaError",
    "Simulation",
    "SmtConfig",
    "SparseMerkleTree",
    "run_fuzz",
    "run_proof_bench",
    "run_scenario",
    "scenarios",
    "sha256",
    "verify_proof",
]


def run_scenario(name, seed=0, watchers=True, **params):
    """Run one scripted scenario and return its report as a dict."""
    return json.loads(_core.run_scenario_json(name, seed, watchers, **params))


def run_fuzz(steps=10_000, seed=0, byzantine=True, **kwargs):
    return json.loads(_core.run_fuzz_json(steps, seed, byzantine, **kwargs))


def run_proof_bench(**kwargs):
    return json.loads(_core.run_proof_bench_json(**kwargs))
