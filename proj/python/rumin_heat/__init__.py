# Copyright 2026 The rumin-heat Authors
# SPDX-License-Identifier: Apache-2.0
"""Rumin complex and heat semigroup on Heisenberg groups."""

import json

from . import _core
from ._core import BoundaryMassError, ConfigError, default_config, dump_complex, e0_dim, sha256, suite_names

__all__ = [
    "BoundaryMassError",
    "ConfigError",
    "calderon_run",
    "default_config",
    "dump_complex",
    "e0_dim",
    "heat_run",
    "resolve_config",
    "run_suite",
    "sha256",
    "suite_names",
    "verify_symbolic",
]


def _overrides(overrides):
    return {k: str(v).lower() if isinstance(v, bool) else str(v) for k, v in (overrides or {}).items()}


def resolve_config(config="", overrides=None):
    """Canonical config text after applying dotted-key overrides."""
    return _core.resolve_config(config, _overrides(overrides))


def verify_symbolic(n, strict_intertwining=False):
    return json.loads(_core.verify_symbolic(n, strict_intertwining))


def run_suite(name, config="", overrides=None):
    return json.loads(_core.run_suite(name, config, _overrides(overrides)))


def heat_run(config="", overrides=None):
    """Snapshots are arrays shaped (components, x..., y..., t)."""
    return _core.heat_run(config, _overrides(overrides))


def calderon_run(config="", overrides=None):
    return json.loads(_core.calderon_run(config, _overrides(overrides)))
