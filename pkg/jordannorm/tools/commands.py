#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Subcommands of the jordannorm command line."""

import os

import numpy as np
from fvcore.common.registry import Registry

import jordannorm.utils.logging as logging
import jordannorm.utils.serialization as su
from jordannorm.algebra import FdAlgebra, op_norm, random_state
from jordannorm.algebra.linalg import max_abs
from jordannorm.forms import (
    BilinearForm,
    check_estimate,
    corner_example,
    corner_form,
    form_norm,
    hilbertmap_norm,
)
from jordannorm.gns import gns_construct, verify_gns
from jordannorm.grothendieck import (
    check_witness,
    check_witness_little,
    export_csv,
    factorize_bilinear,
    factorize_little,
    find_witness_bilinear,
    find_witness_little,
    joint_cb_residual,
    ratio_scan,
    recompute_violation,
    reproduction_residual,
    split_four,
    transpose_factorization_example,
)
from jordannorm.jsrep import (
    add,
    basis_images,
    bound,
    evaluate,
    operator_norms,
    validate,
)
from jordannorm.positive import (
    build_fb,
    check_norm_square,
    fb_inner_product_residual,
    is_positive,
    represented_form,
    roundtrip,
)
from jordannorm.utils.errors import (
    FrameMismatchError,
    NormExcessError,
    PositivityError,
    SchemaError,
    WitnessFailure,
)
from jordannorm.utils.report import Report

logger = logging.get_logger(__name__)

COMMAND_REGISTRY = Registry("COMMAND")
COMMAND_REGISTRY.__doc__ = """
Registry for command line subcommands.

The registered object will be called with `obj(cfg, args)`.
The call should return a `Report` object.
"""

# Bilinear and little Grothendieck constants of the constructed bounds.
BILINEAR_CONSTANT = 2.0
LITTLE_CONSTANT = np.sqrt(2.0)


def register(name):
    """Register a subcommand under its command line name."""

    def deco(func):
        COMMAND_REGISTRY._do_register(name, func)
        return func

    return deco


def _inputs(args, count, optional=0):
    """Load the JSON input documents of a subcommand."""
    paths = args.input
    if not count <= len(paths) <= count + optional:
        raise SchemaError(
            "{} expects {} input file(s), got {}".format(
                args.command,
                count if not optional else "{}-{}".format(
                    count, count + optional
                ),
                len(paths),
            )
        )
    return [su.load_json(p) for p in paths]


def _unwrap(doc, key):
    # Accept the report of an earlier command as input.
    if isinstance(doc, dict) and key in doc.get("results", {}):
        return doc["results"][key]
    return doc


def _norm_kwargs(cfg):
    return {
        "restarts": cfg.NORM.RESTARTS,
        "seed": cfg.RNG_SEED,
        "max_sweeps": cfg.NORM.MAX_SWEEPS,
        "tol": cfg.NORM.TOL,
    }


def _witness_kwargs(cfg):
    return {
        "iters": cfg.WITNESS.ITERS,
        "seed": cfg.RNG_SEED,
        "step": cfg.WITNESS.STEP,
        "eig_floor": cfg.WITNESS.EIG_FLOOR,
        "patience": cfg.WITNESS.PATIENCE,
        "restarts": cfg.WITNESS.RESTARTS,
        "ascent_steps": cfg.WITNESS.ASCENT_STEPS,
        "tol": cfg.WITNESS.TOL,
    }


def _estimate(cfg, target):
    if isinstance(target, BilinearForm):
        return form_norm(target, **_norm_kwargs(cfg))
    return hilbertmap_norm(target, **_norm_kwargs(cfg))


def _add_validation(report, rep, cfg):
    validation = validate(
        rep, tol=cfg.JSREP.TOL, positivity_trials=cfg.JSREP.POSITIVITY_TRIALS
    )
    report.add_check(
        "jsrep_valid", validation.max_residual, cfg.JSREP.TOL,
        passed=validation.passed,
    )
    report.results["validation"] = validation.as_dict()


@register("norm")
def norm(cfg, args):
    """Best-found norm of a bilinear form or a map into a Hilbert space."""
    (doc,) = _inputs(args, 1)
    target = su.decode_source(doc)
    report = Report(args.command, cfg, {"source": su.encode_source(target)})
    report.add_tolerance("attained", 1e-10)
    estimate = _estimate(cfg, target)
    if isinstance(target, BilinearForm):
        residuals = check_estimate(target, estimate)
        attained, ball = residuals["attained"], residuals["ball"]
    else:
        attained = abs(
            np.linalg.norm(target(estimate.maximizer_x)) - estimate.value
        )
        ball = max(op_norm(estimate.maximizer_x) - 1.0, 0.0)
    report.add_check("attained", attained, 1e-10)
    report.add_check("unit_ball", ball, 1e-10)
    report.results["estimate"] = su.encode_estimate(estimate)
    return report


@register("cb-example")
def cb_example(cfg, args):
    """
    B(x, y) = (y x)_{11}: norm one, Jordan bound one through the transpose,
    and cb lower bounds n from B_n(X, Y)_{11} = n.
    """
    n_max = cfg.CB_EXAMPLE.N
    report = Report(args.command, cfg, {"n": n_max})
    report.add_tolerance("exact", 1e-12)
    report.add_tolerance("unit_norms", 1e-10)
    sweep = []
    for n in range(1, n_max + 1):
        example = corner_example(n)
        rep = transpose_factorization_example(n)
        corner = example.corner_value()
        reproduction = reproduction_residual(rep, corner_form(n).coeffs)
        report.add_check("corner_value_{}".format(n), abs(corner - n), 1e-12)
        report.add_check(
            "unit_norms_{}".format(n),
            max(abs(example.x_norm - 1.0), abs(example.y_norm - 1.0)),
            1e-10,
        )
        report.add_check(
            "transpose_bound_{}".format(n), abs(bound(rep) - 1.0), 1e-12
        )
        report.add_check(
            "transpose_reproduction_{}".format(n), reproduction, 1e-12
        )
        sweep.append(
            {
                "n": n,
                "corner_value": su.encode_complex(corner),
                "cb_lower_bound": abs(corner)
                / (example.x_norm * example.y_norm),
                "jordan_upper": bound(rep),
                "norm": 1.0,
            }
        )
    report.results["sweep"] = sweep
    return report


@register("gns")
def gns(cfg, args):
    """
    GNS identities for the input state, or for a random state on
    ALGEBRA.DIMS without input.
    """
    docs = _inputs(args, 0, optional=1)
    if docs:
        phi = su.decode_state(_unwrap(docs[0], "state"))
    else:
        rng = np.random.default_rng(cfg.RNG_SEED)
        rank = cfg.ALGEBRA.RANDOM_RANK or None
        phi = random_state(FdAlgebra(cfg.ALGEBRA.DIMS), rng, rank)
    report = Report(args.command, cfg, {"state": su.encode_state(phi)})
    report.add_tolerance("gns", cfg.GNS.TOL)
    data = gns_construct(phi.algebra, phi, kernel_tol=cfg.GNS.KERNEL_TOL)
    residuals = verify_gns(data, trials=cfg.GNS.TRIALS, seed=cfg.RNG_SEED)
    for name in sorted(residuals):
        report.add_check(name, residuals[name], cfg.GNS.TOL)
    report.results["gns"] = su.encode_gns(data)
    return report


@register("js-validate")
def js_validate(cfg, args):
    (doc,) = _inputs(args, 1)
    rep = su.decode_jsrep(_unwrap(doc, "representation"))
    report = Report(args.command, cfg, {"representation": su.encode_jsrep(rep)})
    report.add_tolerance("jsrep", cfg.JSREP.TOL)
    _add_validation(report, rep, cfg)
    report.results["bound"] = bound(rep)
    report.results["operator_norms"] = operator_norms(rep)
    return report


@register("js-eval")
def js_eval(cfg, args):
    """
    Evaluate a representation on the elements of the second input,
    {"elements": [element, ...]}.
    """
    doc, elements_doc = _inputs(args, 2)
    rep = su.decode_jsrep(_unwrap(doc, "representation"))
    raw = None
    if isinstance(elements_doc, dict):
        raw = elements_doc.get("elements")
    if not isinstance(raw, list) or len(raw) != rep.arity:
        raise SchemaError(
            "js-eval needs {} elements under 'elements'".format(rep.arity)
        )
    elements = [
        su.decode_element(x, alg) for x, alg in zip(raw, rep.algebras)
    ]
    report = Report(
        args.command,
        cfg,
        {
            "representation": su.encode_jsrep(rep),
            "elements": [su.encode_element(x) for x in elements],
        },
    )
    report.add_tolerance("jsrep", cfg.JSREP.TOL)
    _add_validation(report, rep, cfg)
    report.results["value"] = su.encode_matrix(evaluate(rep, *elements))
    report.results["bound"] = bound(rep)
    return report


@register("js-sum")
def js_sum(cfg, args):
    """Representation of the sum of two maps with subadditive bound."""
    first, second = _inputs(args, 2)
    rep1 = su.decode_jsrep(_unwrap(first, "representation"))
    rep2 = su.decode_jsrep(_unwrap(second, "representation"))
    report = Report(
        args.command,
        cfg,
        {"first": su.encode_jsrep(rep1), "second": su.encode_jsrep(rep2)},
    )
    report.add_tolerance("additivity", 1e-10)
    total = add(rep1, rep2)
    additivity = max_abs(
        basis_images(total) - basis_images(rep1) - basis_images(rep2)
    )
    excess = bound(total) - bound(rep1) - bound(rep2)
    report.add_check("additivity", additivity, 1e-10)
    report.add_check("subadditivity", excess, 1e-10)
    _add_validation(report, total, cfg)
    report.results["representation"] = su.encode_jsrep(total)
    report.results["bound"] = bound(total)
    report.results["summand_bounds"] = [bound(rep1), bound(rep2)]
    return report


@register("witness-find")
def witness_find(cfg, args):
    """Witness states for a bilinear form or a map into a Hilbert space."""
    (doc,) = _inputs(args, 1)
    target = su.decode_source(doc)
    report = Report(args.command, cfg, {"source": su.encode_source(target)})
    report.add_tolerance("violation", cfg.WITNESS.TOL)
    estimate = _estimate(cfg, target)
    if isinstance(target, BilinearForm):
        states, witness = find_witness_bilinear(
            target, norm_B=estimate.value, **_witness_kwargs(cfg)
        )
    else:
        states, witness = find_witness_little(
            target, norm_F=estimate.value, **_witness_kwargs(cfg)
        )
    report.add_check("violation", witness.max_violation, cfg.WITNESS.TOL)
    report.results["witness"] = su.encode_witness(states)
    report.results["witness_report"] = witness.as_dict()
    report.results["norm"] = estimate.value
    return report


@register("witness-check")
def witness_check(cfg, args):
    """Check given witness states against the estimated norm."""
    source_doc, witness_doc = _inputs(args, 2)
    target = su.decode_source(source_doc)
    states = su.decode_witness(_unwrap(witness_doc, "witness"))
    report = Report(
        args.command,
        cfg,
        {
            "source": su.encode_source(target),
            "witness": su.encode_witness(states),
        },
    )
    report.add_tolerance("violation", cfg.WITNESS.TOL)
    estimate = _estimate(cfg, target)
    check = check_witness if states.kind == "bilinear" else check_witness_little
    witness = check(
        target,
        states,
        estimate.value,
        restarts=cfg.WITNESS.RESTARTS,
        seed=cfg.RNG_SEED,
        ascent_steps=cfg.WITNESS.ASCENT_STEPS,
        tol=cfg.WITNESS.TOL,
    )
    recomputed = recompute_violation(target, states, witness)
    report.add_check("violation", witness.max_violation, cfg.WITNESS.TOL)
    report.add_check(
        "recomputed", abs(recomputed - witness.max_violation), 1e-10
    )
    report.results["witness_report"] = witness.as_dict()
    report.results["norm"] = estimate.value
    return report


def _factorize(cfg, args, kind):
    docs = _inputs(args, 1, optional=1)
    target = su.decode_source(docs[0])
    report = Report(args.command, cfg, {"source": su.encode_source(target)})
    report.add_tolerance("residual", cfg.FACTORIZE.RESIDUAL_TOL)
    report.add_tolerance("norm_slack", cfg.FACTORIZE.NORM_SLACK)
    estimate = _estimate(cfg, target)
    if len(docs) > 1:
        states = su.decode_witness(_unwrap(docs[1], "witness"))
        report.inputs["witness"] = su.encode_witness(states)
    elif kind == "bilinear":
        states, _ = find_witness_bilinear(
            target, norm_B=estimate.value, **_witness_kwargs(cfg)
        )
    else:
        states, _ = find_witness_little(
            target, norm_F=estimate.value, **_witness_kwargs(cfg)
        )
    factorize = factorize_bilinear if kind == "bilinear" else factorize_little
    constant = BILINEAR_CONSTANT if kind == "bilinear" else LITTLE_CONSTANT
    report.results["norm"] = estimate.value
    report.results["witness"] = su.encode_witness(states)
    try:
        rep = factorize(
            target,
            states,
            estimate.value,
            rcond=cfg.FACTORIZE.RCOND,
            residual_tol=cfg.FACTORIZE.RESIDUAL_TOL,
            norm_slack=cfg.FACTORIZE.NORM_SLACK,
        )
    except (WitnessFailure, NormExcessError) as e:
        report.add_failure("factorization", e)
        return report
    target_values = (
        target.coeffs if kind == "bilinear" else target.matrix
    )
    report.add_check(
        "reproduction",
        reproduction_residual(rep, target_values),
        cfg.FACTORIZE.RESIDUAL_TOL,
    )
    report.add_check(
        "bound",
        bound(rep),
        constant * estimate.value * (1.0 + cfg.FACTORIZE.NORM_SLACK),
    )
    _add_validation(report, rep, cfg)
    report.results["representation"] = su.encode_jsrep(rep)
    report.results["bound"] = bound(rep)
    return report


@register("factorize-little")
def factorize_little_command(cfg, args):
    """
    F(a) = S (pi_psi(a) + rho_phi(a)) (xi_psi, xi_phi) with bound at most
    sqrt(2) ||F||.
    """
    return _factorize(cfg, args, "little")


@register("factorize-bilinear")
def factorize_bilinear_command(cfg, args):
    """Bilinear factorization through four GNS spaces, bound <= 2 ||B||."""
    return _factorize(cfg, args, "bilinear")


@register("split4")
def split4(cfg, args):
    """Split a bilinear factorization into its four block pieces."""
    (doc,) = _inputs(args, 1)
    rep = su.decode_jsrep(_unwrap(doc, "representation"))
    report = Report(args.command, cfg, {"representation": su.encode_jsrep(rep)})
    report.add_tolerance("additivity", 1e-10)
    pieces = split_four(rep)
    total = sum(basis_images(piece) for _, piece in pieces)
    whole = basis_images(rep)
    additivity = max_abs(total - whole) / max(1.0, max_abs(whole))
    report.add_check("additivity", additivity, 1e-10)
    report.results["pieces"] = {
        name: {"bound": bound(piece), "representation": su.encode_jsrep(piece)}
        for name, piece in pieces
    }
    report.results["joint_cb_residual"] = joint_cb_residual(rep)
    return report


@register("positive")
def positive(cfg, args):
    """Positivity, F_B and ||B|| = ||F_B||^2 for a form on A x A."""
    (doc,) = _inputs(args, 1)
    form = su.decode_form(doc)
    report = Report(args.command, cfg, {"form": su.encode_form(form)})
    report.add_tolerance("psd", cfg.POSITIVE.PSD_TOL)
    report.add_tolerance("norm_square", cfg.POSITIVE.NORM_SQUARE_TOL)
    is_pos, min_eig = is_positive(form, cfg.POSITIVE.PSD_TOL)
    report.add_check("positive", -min_eig, cfg.POSITIVE.PSD_TOL, passed=is_pos)
    report.results["min_eigenvalue"] = min_eig
    if not is_pos:
        return report
    data = build_fb(
        form, rank_tol=cfg.POSITIVE.RANK_TOL, psd_tol=cfg.POSITIVE.PSD_TOL
    )
    report.add_check(
        "fb_inner_product",
        fb_inner_product_residual(data),
        cfg.POSITIVE.PSD_TOL,
    )
    norms = check_norm_square(
        form,
        data,
        restarts=cfg.NORM.RESTARTS,
        seed=cfg.RNG_SEED,
        tol=cfg.POSITIVE.NORM_SQUARE_TOL,
    )
    report.add_check(
        "norm_square", norms["relative_gap"], cfg.POSITIVE.NORM_SQUARE_TOL
    )
    report.results["fb"] = su.encode_map(data.fb)
    report.results["kernel_dim"] = data.kernel_dim
    report.results["norms"] = norms
    return report


@register("roundtrip-positive")
def roundtrip_positive(cfg, args):
    """
    symmetrize, compress to F_B and square back a representation of a
    positive form.
    """
    (doc,) = _inputs(args, 1)
    rep = su.decode_jsrep(_unwrap(doc, "representation"))
    report = Report(args.command, cfg, {"representation": su.encode_jsrep(rep)})
    report.add_tolerance("roundtrip_slack", cfg.POSITIVE.ROUNDTRIP_SLACK)
    report.add_tolerance("residual", cfg.FACTORIZE.RESIDUAL_TOL)
    form = represented_form(rep)
    try:
        reps, bounds = roundtrip(
            rep,
            form,
            psd_tol=cfg.POSITIVE.PSD_TOL,
            rcond=cfg.FACTORIZE.RCOND,
            frame_tol=cfg.POSITIVE.FRAME_TOL,
            rank_tol=cfg.POSITIVE.RANK_TOL,
        )
    except (PositivityError, FrameMismatchError) as e:
        report.add_failure("roundtrip", e)
        return report
    start = bounds["start"]
    isometry = reps["W"]
    report.add_check(
        "fb_bound_square",
        bounds["fb"] ** 2,
        start * (1.0 + cfg.POSITIVE.NORM_SQUARE_TOL),
    )
    report.add_check(
        "squared_bound",
        bounds["squared"],
        start * (1.0 + cfg.POSITIVE.ROUNDTRIP_SLACK),
    )
    report.add_check(
        "squared_reproduction",
        reproduction_residual(reps["squared"], form.coeffs),
        cfg.FACTORIZE.RESIDUAL_TOL,
    )
    report.add_check(
        "isometry",
        max_abs(isometry.conj().T @ isometry - np.eye(isometry.shape[1])),
        1e-9,
    )
    report.results["bounds"] = bounds
    report.results["fb_representation"] = su.encode_jsrep(reps["fb"])
    report.results["representation"] = su.encode_jsrep(reps["squared"])
    return report


@register("ratio-scan")
def ratio_scan_command(cfg, args):
    """Jordan bound over norm estimate on random instances."""
    report = Report(
        args.command,
        cfg,
        {
            "kind": cfg.RATIO_SCAN.KIND,
            "count": cfg.RATIO_SCAN.COUNT,
            "seed": cfg.RNG_SEED,
        },
    )
    slack = cfg.RATIO_SCAN.RANGE_SLACK
    report.add_tolerance("range_slack", slack)
    upper = LITTLE_CONSTANT if cfg.RATIO_SCAN.KIND == "map" else (
        BILINEAR_CONSTANT
    )
    reports = ratio_scan(cfg)
    ratios = [r.ratio for r in reports if r.success]
    outside = [
        r for r in ratios if not 1.0 - slack <= r <= upper + slack
    ]
    report.add_check("ratios_in_range", len(outside), 0)
    if args.output is not None and cfg.RATIO_SCAN.CSV_FILE:
        path = os.path.join(cfg.OUTPUT_DIR, cfg.RATIO_SCAN.CSV_FILE)
        export_csv(reports, path)
        report.results["csv"] = path
    report.results["reports"] = [r.as_dict() for r in reports]
    report.results["success_fraction"] = (
        len(ratios) / len(reports) if reports else 1.0
    )
    report.results["max_ratio"] = max(ratios) if ratios else None
    return report
