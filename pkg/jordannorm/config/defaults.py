#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Configs."""
from fvcore.common.config import CfgNode

# -----------------------------------------------------------------------------
# Config definition
# -----------------------------------------------------------------------------
_C = CfgNode()


# ---------------------------------------------------------------------------- #
# Algebra options
# ---------------------------------------------------------------------------- #
_C.ALGEBRA = CfgNode()

# Block sizes of the algebra, e.g. [2, 3] for M_2 + M_3.
_C.ALGEBRA.DIMS = [2]

# Rank of random states, full rank (faithful) if 0.
_C.ALGEBRA.RANDOM_RANK = 0


# ---------------------------------------------------------------------------- #
# Norm estimation options
# ---------------------------------------------------------------------------- #
_C.NORM = CfgNode()

# Number of random starts of the alternating maximization.
_C.NORM.RESTARTS = 32

# Sweep limit per start.
_C.NORM.MAX_SWEEPS = 500

# A start stops once a sweep gains less than this.
_C.NORM.TOL = 1e-12


# ---------------------------------------------------------------------------- #
# GNS options
# ---------------------------------------------------------------------------- #
_C.GNS = CfgNode()

# Gram eigenvalues below KERNEL_TOL times the largest span the kernel.
_C.GNS.KERNEL_TOL = 1e-12

# Random elements used to verify the GNS identities.
_C.GNS.TRIALS = 100

# Largest residual of the GNS identities for the check to pass.
_C.GNS.TOL = 1e-9


# ---------------------------------------------------------------------------- #
# Jordan-Stinespring representation options
# ---------------------------------------------------------------------------- #
_C.JSREP = CfgNode()

# Largest validation residual for a representation to pass.
_C.JSREP.TOL = 1e-8

# Random elements used for the positivity check of sigma.
_C.JSREP.POSITIVITY_TRIALS = 8


# ---------------------------------------------------------------------------- #
# Witness search options
# ---------------------------------------------------------------------------- #
_C.WITNESS = CfgNode()

# Iteration limit of the multiplicative weights search.
_C.WITNESS.ITERS = 400

# Initial multiplicative weights step.
_C.WITNESS.STEP = 0.1

# Floor on the eigenvalues of the density matrices.
_C.WITNESS.EIG_FLOOR = 1e-8

# Iterations without improvement before the step is halved.
_C.WITNESS.PATIENCE = 25

# Random starts of the violation search besides the ratio maximizer.
_C.WITNESS.RESTARTS = 8

# Projected ascent sweeps per start.
_C.WITNESS.ASCENT_STEPS = 60

# Largest violation for witness states to pass.
_C.WITNESS.TOL = 1e-6


# ---------------------------------------------------------------------------- #
# Factorization options
# ---------------------------------------------------------------------------- #
_C.FACTORIZE = CfgNode()

# Relative rank cutoff of the pseudoinverses.
_C.FACTORIZE.RCOND = 1e-10

# Largest reproduction residual on the basis.
_C.FACTORIZE.RESIDUAL_TOL = 1e-8

# Relative slack of the interpolating operator norm over the norm estimate.
_C.FACTORIZE.NORM_SLACK = 1e-6


# ---------------------------------------------------------------------------- #
# Positive form options
# ---------------------------------------------------------------------------- #
_C.POSITIVE = CfgNode()

# Relative tolerance of the Gram matrix positivity test.
_C.POSITIVE.PSD_TOL = 1e-9

# Gram eigenvalues below RANK_TOL times the largest are dropped from F_B.
_C.POSITIVE.RANK_TOL = 1e-12

# Allowed mismatch between the compressed frame and F_B.
_C.POSITIVE.FRAME_TOL = 1e-8

# Largest relative gap between ||B|| and ||F_B||^2.
_C.POSITIVE.NORM_SQUARE_TOL = 1e-5

# Relative slack of the round trip bound over the starting bound.
_C.POSITIVE.ROUNDTRIP_SLACK = 1e-4


# ---------------------------------------------------------------------------- #
# Ratio scan options
# ---------------------------------------------------------------------------- #
_C.RATIO_SCAN = CfgNode()

# Number of random instances.
_C.RATIO_SCAN.COUNT = 50

# Instance generator, options include `bilinear`, `corner` and `map`.
_C.RATIO_SCAN.KIND = "bilinear"

# Non-commutative block structures to draw from.
_C.RATIO_SCAN.BLOCK_CHOICES = [[2], [3], [1, 2]]

# Largest rank of random instances.
_C.RATIO_SCAN.MAX_RANK = 2

# Probability of an all 1x1 (commutative) algebra.
_C.RATIO_SCAN.COMMUTATIVE_FRACTION = 0.5

# Ratios outside [1 - RANGE_SLACK, 2 + RANGE_SLACK] fail the scan.
_C.RATIO_SCAN.RANGE_SLACK = 1e-6

# CSV file written next to the report, no CSV if empty.
_C.RATIO_SCAN.CSV_FILE = "ratios.csv"


# ---------------------------------------------------------------------------- #
# Amplification example options
# ---------------------------------------------------------------------------- #
_C.CB_EXAMPLE = CfgNode()

# Largest matrix size n of the sweep n = 1, ..., N.
_C.CB_EXAMPLE.N = 8


# ---------------------------------------------------------------------------- #
# Report options
# ---------------------------------------------------------------------------- #
_C.REPORT = CfgNode()

# Version of the JSON report layout.
_C.REPORT.SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------- #
# Misc options
# ---------------------------------------------------------------------------- #

# Output directory for run.log and CSV files.
_C.OUTPUT_DIR = "./tmp"

# Base seed; restart or instance i uses RNG_SEED + i.
_C.RNG_SEED = 0


def _assert_and_infer_cfg(cfg):
    # ALGEBRA assertions.
    assert len(cfg.ALGEBRA.DIMS) > 0, "ALGEBRA.DIMS must not be empty"
    assert all(d >= 1 for d in cfg.ALGEBRA.DIMS)
    assert cfg.ALGEBRA.RANDOM_RANK >= 0

    # Search assertions.
    assert cfg.NORM.RESTARTS >= 1, "NORM.RESTARTS must be at least 1"
    assert cfg.NORM.MAX_SWEEPS >= 1
    assert 0.0 < cfg.WITNESS.STEP <= 1.0, "WITNESS.STEP must be in (0, 1]"
    assert cfg.WITNESS.ITERS >= 0
    assert cfg.WITNESS.PATIENCE >= 1
    assert cfg.WITNESS.RESTARTS >= 0
    assert cfg.RATIO_SCAN.COUNT >= 0
    assert cfg.RATIO_SCAN.MAX_RANK >= 1
    assert 0.0 <= cfg.RATIO_SCAN.COMMUTATIVE_FRACTION <= 1.0
    assert cfg.CB_EXAMPLE.N >= 1

    # Tolerance assertions.
    for section, key in [
        ("NORM", "TOL"),
        ("GNS", "KERNEL_TOL"),
        ("GNS", "TOL"),
        ("JSREP", "TOL"),
        ("WITNESS", "EIG_FLOOR"),
        ("WITNESS", "TOL"),
        ("FACTORIZE", "RCOND"),
        ("FACTORIZE", "RESIDUAL_TOL"),
        ("FACTORIZE", "NORM_SLACK"),
        ("POSITIVE", "PSD_TOL"),
        ("POSITIVE", "RANK_TOL"),
        ("POSITIVE", "FRAME_TOL"),
        ("POSITIVE", "NORM_SQUARE_TOL"),
        ("POSITIVE", "ROUNDTRIP_SLACK"),
    ]:
        assert cfg[section][key] > 0, "{}.{} must be positive".format(
            section, key
        )
    return cfg


def get_cfg():
    """
    Get a copy of the default config.
    """
    return _assert_and_infer_cfg(_C.clone())
