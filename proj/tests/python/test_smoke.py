# Copyright 2026 The rumin-heat Authors
# SPDX-License-Identifier: Apache-2.0
import numpy as np
import pytest

import rumin_heat as rh


def test_e0_dimensions():
    assert [rh.e0_dim(1, h) for h in range(4)] == [1, 2, 2, 1]
    assert [rh.e0_dim(2, h) for h in range(6)] == [1, 4, 5, 5, 4, 1]


def test_dump_complex_json():
    import json

    d = json.loads(rh.dump_complex(1, 1))
    assert d["n"] == 1 and d["degree"] == 1


def test_verify_symbolic_n1():
    r = rh.verify_symbolic(1)
    assert r["pass"]
    strict = rh.verify_symbolic(1, strict_intertwining=True)
    assert not strict["pass"]


def test_config_overrides_and_errors():
    text = rh.resolve_config(overrides={"grid.points": 17, "heat.abort_on_boundary": False})
    assert "points = 17" in text
    assert "abort_on_boundary = false" in text
    with pytest.raises(rh.ConfigError):
        rh.resolve_config(overrides={"grid.points": "twelve"})
    with pytest.raises(rh.ConfigError):
        rh.resolve_config(overrides={"grid.nope": 1})


def test_heat_run_dissipative():
    r = rh.heat_run(overrides={"grid.points": 17, "heat.abort_on_boundary": False, "heat.snapshot_every": 2})
    snaps = r["snapshots"]
    assert len(snaps) == len(r["times"]) >= 2
    assert snaps[0].shape == (1, 17, 17, 17)
    assert np.all(np.diff(r["l2"]) <= 1e-12)
    assert r["max_norm_increase"] <= 1e-8


def test_boundary_guard():
    with pytest.raises(rh.BoundaryMassError):
        rh.heat_run(overrides={"grid.points": 17, "grid.L": 1.5, "heat.initial_width": 1.0})


def test_semigroup_suite():
    r = rh.run_suite("semigroup", overrides={"grid.points": 17})
    assert r["pass"]
    assert r["suite"] == "semigroup"
    assert r["columns"] == ["dt", "error", "commuted_error"]


def test_calderon_small():
    r = rh.calderon_run(overrides={"grid.points": 13, "calderon.rho": 1.5, "calderon.dt": 1e-3, "calderon.s_max": 20})
    assert r["reproducing_sign"] == "+1"
    assert r["rel_l2"] < r["rel_l2_opposite_sign"]


def test_sha256():
    assert rh.sha256("abc").startswith("ba7816bf")
