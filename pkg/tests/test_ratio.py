#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

import numpy as np
import pandas
import pytest

from jordannorm.config.defaults import get_cfg
from jordannorm.forms import row_extraction
from jordannorm.grothendieck import (
    INSTANCE_REGISTRY,
    Instance,
    RatioReport,
    export_csv,
    ratio_scan,
    reports_to_frame,
    solve_instance,
)
from jordannorm.grothendieck.ratio import CSV_COLUMNS, hilbert_map


@pytest.fixture
def scan_cfg(cfg):
    cfg.RATIO_SCAN.COUNT = 2
    cfg.WITNESS.ITERS = 150
    return cfg


def test_instance_registry(scan_cfg):
    rng = np.random.default_rng(0)
    for name, kind in [("bilinear", "bilinear"), ("corner", "bilinear"),
                       ("map", "map")]:
        instance = INSTANCE_REGISTRY.get(name)(scan_cfg, rng)
        assert isinstance(instance, Instance)
        assert instance.kind == kind
    assert INSTANCE_REGISTRY.get("map") is hilbert_map


def test_commutative_fraction_one(scan_cfg):
    scan_cfg.RATIO_SCAN.COMMUTATIVE_FRACTION = 1.0
    instance = INSTANCE_REGISTRY.get("bilinear")(
        scan_cfg, np.random.default_rng(5)
    )
    assert set(instance.descriptor["dims_a"]) == {1}
    assert set(instance.descriptor["dims_b"]) == {1}


@pytest.mark.slow
@pytest.mark.parametrize(
    "kind, upper", [("corner", 2.0), ("map", np.sqrt(2.0))]
)
def test_ratio_scan_ranges(scan_cfg, kind, upper):
    scan_cfg.RATIO_SCAN.KIND = kind
    reports = ratio_scan(scan_cfg)
    assert [r.index for r in reports] == [0, 1]
    for r in reports:
        assert r.kind == ("map" if kind == "map" else "bilinear")
        if r.success:
            assert 1.0 - 1e-6 <= r.ratio <= upper + 2e-6
        else:
            assert r.ratio is None
            assert r.failure


@pytest.mark.slow
def test_ratio_scan_is_deterministic(scan_cfg):
    scan_cfg.RATIO_SCAN.KIND = "corner"
    first = [r.as_dict() for r in ratio_scan(scan_cfg, count=1, seed=4)]
    second = [r.as_dict() for r in ratio_scan(scan_cfg, count=1, seed=4)]
    assert first == second


def test_solve_instance_on_row_extraction(scan_cfg):
    instance = Instance("map", row_extraction(2), {"d": 2})
    report = solve_instance(scan_cfg, instance, 0, 0)
    assert report.success, report.failure
    assert report.norm_lower == pytest.approx(1.0, abs=1e-8)
    assert 1.0 - 1e-6 <= report.ratio <= np.sqrt(2.0) + 2e-6


def test_zero_instance_fails(scan_cfg):
    fmap = row_extraction(2).scale(0.0)
    report = solve_instance(scan_cfg, Instance("map", fmap, {}), 3, 0)
    assert not report.success
    assert report.failure == "zero instance"
    assert report.ratio is None


def test_reports_to_csv(tmp_path):
    reports = [
        RatioReport(0, "bilinear", {"d": 2}, 1.0, 1.5, 1e-9),
        RatioReport(1, "map", {"d": 3}, 1.0, failure="witness search stalled"),
    ]
    frame = reports_to_frame(reports)
    assert list(frame.columns) == CSV_COLUMNS
    path = str(tmp_path / "ratios.csv")
    export_csv(reports, path)
    back = pandas.read_csv(path)
    assert list(back.columns) == CSV_COLUMNS
    assert back["ratio"][0] == pytest.approx(1.5)
    assert np.isnan(back["ratio"][1])
    assert list(back["success"]) == [True, False]
    assert back["descriptor"][0] == "{'d': 2}"


@pytest.mark.slow
def test_default_mixed_scan_stays_in_range():
    # 50 instances, about half of them on commutative algebras.
    cfg = get_cfg()
    reports = ratio_scan(cfg)
    assert len(reports) == cfg.RATIO_SCAN.COUNT == 50
    commutative = [set(r.descriptor["dims_a"]) == {1} for r in reports]
    assert any(commutative) and not all(commutative)
    succeeded = [r for r in reports if r.success]
    assert succeeded
    for r in succeeded:
        assert 1.0 - 1e-6 <= r.ratio <= 2.0 + 1e-6, r.as_dict()
