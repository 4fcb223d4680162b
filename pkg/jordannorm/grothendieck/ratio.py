#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Empirical ratios between constructed Jordan bounds and estimated norms."""

import numpy as np
import pandas
from fvcore.common.file_io import PathManager
from fvcore.common.registry import Registry
from fvcore.common.timer import Timer
from tqdm import tqdm

import jordannorm.utils.logging as logging
from jordannorm.algebra import FdAlgebra
from jordannorm.forms import (
    corner_form,
    form_norm,
    hilbertmap_norm,
    random_hilbert_map,
    random_low_rank_form,
)
from jordannorm.grothendieck.factorize import (
    factorize_bilinear,
    factorize_little,
)
from jordannorm.grothendieck.search import (
    find_witness_bilinear,
    find_witness_little,
)
from jordannorm.jsrep import bound
from jordannorm.utils.errors import NormExcessError, WitnessFailure

logger = logging.get_logger(__name__)

INSTANCE_REGISTRY = Registry("INSTANCE")
INSTANCE_REGISTRY.__doc__ = """
Registry for ratio scan instance generators.

The registered object will be called with `obj(cfg, rng)`.
The call should return an `Instance` object.
"""

CSV_COLUMNS = [
    "index",
    "kind",
    "descriptor",
    "norm_lower",
    "jordan_upper",
    "ratio",
    "witness_violation",
    "success",
    "failure",
]


class Instance(object):
    """
    A random bilinear form (kind "bilinear", "corner") or map into a Hilbert
    space (kind "map") with a JSON friendly description.
    """

    def __init__(self, kind, target, descriptor):
        self.kind = kind
        self.target = target
        self.descriptor = descriptor


class RatioReport(object):
    """
    Jordan bound of the constructed factorization against the estimated
    norm of one instance.
    """

    def __init__(
        self,
        index,
        kind,
        descriptor,
        norm_lower,
        jordan_upper=None,
        witness_violation=None,
        failure=None,
    ):
        self.index = int(index)
        self.kind = kind
        self.descriptor = descriptor
        self.norm_lower = float(norm_lower)
        self.jordan_upper = (
            None if jordan_upper is None else float(jordan_upper)
        )
        self.witness_violation = (
            None if witness_violation is None else float(witness_violation)
        )
        self.failure = failure

    @property
    def success(self):
        return self.failure is None

    @property
    def ratio(self):
        if not self.success or self.norm_lower == 0.0:
            return None
        return self.jordan_upper / self.norm_lower

    def as_dict(self):
        return {
            "index": self.index,
            "kind": self.kind,
            "descriptor": self.descriptor,
            "norm_lower": self.norm_lower,
            "jordan_upper": self.jordan_upper,
            "ratio": self.ratio,
            "witness_violation": self.witness_violation,
            "success": self.success,
            "failure": self.failure,
        }


def _random_dims(cfg, rng):
    if rng.random() < cfg.RATIO_SCAN.COMMUTATIVE_FRACTION:
        return [1] * int(rng.integers(2, 5))
    choices = cfg.RATIO_SCAN.BLOCK_CHOICES
    return list(choices[int(rng.integers(len(choices)))])


@INSTANCE_REGISTRY.register()
def bilinear(cfg, rng):
    """Random form of rank at most MAX_RANK on random block algebras."""
    dims_a = _random_dims(cfg, rng)
    dims_b = _random_dims(cfg, rng)
    rank = int(rng.integers(1, cfg.RATIO_SCAN.MAX_RANK + 1))
    form = random_low_rank_form(
        FdAlgebra(dims_a), FdAlgebra(dims_b), rank, rng
    )
    return Instance(
        "bilinear", form, {"dims_a": dims_a, "dims_b": dims_b, "rank": rank}
    )


@INSTANCE_REGISTRY.register()
def corner(cfg, rng):
    """B(x, y) = (y x)_{11} on M_d, d in 2..4."""
    d = int(rng.integers(2, 5))
    return Instance("bilinear", corner_form(d), {"d": d, "family": "corner"})


def hilbert_map(cfg, rng):
    """Random map of rank at most MAX_RANK into C^k, k in 1..3."""
    dims = _random_dims(cfg, rng)
    target_dim = int(rng.integers(1, 4))
    rank = int(rng.integers(1, cfg.RATIO_SCAN.MAX_RANK + 1))
    fmap = random_hilbert_map(FdAlgebra(dims), target_dim, rng, rank)
    return Instance(
        "map", fmap, {"dims": dims, "target_dim": target_dim, "rank": rank}
    )


# Registered under the instance kind it produces.
INSTANCE_REGISTRY._do_register("map", hilbert_map)


def _witness_kwargs(cfg, seed):
    return {
        "iters": cfg.WITNESS.ITERS,
        "seed": seed,
        "step": cfg.WITNESS.STEP,
        "eig_floor": cfg.WITNESS.EIG_FLOOR,
        "patience": cfg.WITNESS.PATIENCE,
        "restarts": cfg.WITNESS.RESTARTS,
        "ascent_steps": cfg.WITNESS.ASCENT_STEPS,
        "tol": cfg.WITNESS.TOL,
    }


def _factorize_kwargs(cfg):
    return {
        "rcond": cfg.FACTORIZE.RCOND,
        "residual_tol": cfg.FACTORIZE.RESIDUAL_TOL,
        "norm_slack": cfg.FACTORIZE.NORM_SLACK,
    }


def solve_instance(cfg, instance, index, seed):
    """
    Estimate the norm, search witness states and factorize one instance.
    Returns:
        report (RatioReport): with a failure reason instead of a bound when
            the witness search or the factorization fails.
    """
    norm_kwargs = {
        "restarts": cfg.NORM.RESTARTS,
        "seed": seed,
        "max_sweeps": cfg.NORM.MAX_SWEEPS,
        "tol": cfg.NORM.TOL,
    }
    if instance.kind == "map":
        estimate = hilbertmap_norm(instance.target, **norm_kwargs)
        search, factorize = find_witness_little, factorize_little
        norm_key = "norm_F"
    else:
        estimate = form_norm(instance.target, **norm_kwargs)
        search, factorize = find_witness_bilinear, factorize_bilinear
        norm_key = "norm_B"
    report = RatioReport(
        index, instance.kind, instance.descriptor, estimate.value
    )
    if estimate.value == 0.0:
        report.failure = "zero instance"
        return report
    kwargs = _witness_kwargs(cfg, seed)
    kwargs[norm_key] = estimate.value
    states, witness = search(instance.target, **kwargs)
    report.witness_violation = witness.max_violation
    if not witness.passed:
        report.failure = "witness search stalled"
        return report
    try:
        rep = factorize(
            instance.target, states, estimate.value, **_factorize_kwargs(cfg)
        )
    except (WitnessFailure, NormExcessError) as e:
        report.failure = "{}: {}".format(type(e).__name__, e)
        return report
    report.jordan_upper = bound(rep)
    return report


def ratio_scan(cfg, count=None, seed=None):
    """
    Ratio of the constructed Jordan bound to the estimated norm over random
    instances of kind cfg.RATIO_SCAN.KIND.
    Args:
        cfg (CfgNode): configs. Details can be found in
            jordannorm/config/defaults.py
        count (int): number of instances, cfg.RATIO_SCAN.COUNT by default.
        seed (int): instance i uses seed + i, cfg.RNG_SEED by default.
    Returns:
        reports (list): one RatioReport per instance, failures included.
    """
    count = cfg.RATIO_SCAN.COUNT if count is None else count
    seed = cfg.RNG_SEED if seed is None else seed
    generator = INSTANCE_REGISTRY.get(cfg.RATIO_SCAN.KIND)
    timer = Timer()
    reports = []
    for i in tqdm(range(count), disable=count == 0):
        rng = np.random.default_rng(seed + i)
        instance = generator(cfg, rng)
        reports.append(solve_instance(cfg, instance, i, seed + i))
    failures = sum(not r.success for r in reports)
    logger.info(
        "Ratio scan of {} {} instances took {:.2f}s, {} failures".format(
            count, cfg.RATIO_SCAN.KIND, timer.seconds(), failures
        )
    )
    return reports


def reports_to_frame(reports):
    """pandas DataFrame with one row per report."""
    rows = []
    for r in reports:
        row = r.as_dict()
        row["descriptor"] = str(row["descriptor"])
        rows.append(row)
    return pandas.DataFrame(rows, columns=CSV_COLUMNS)


def export_csv(reports, path):
    with PathManager.open(path, "w") as f:
        reports_to_frame(reports).to_csv(f, index=False)
    logger.info("Wrote {} ratio reports to {}".format(len(reports), path))
