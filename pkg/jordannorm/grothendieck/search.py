#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
Search for witness states by multiplicative weights.

Every iteration computes the worst pair for the current states exactly and
moves each density matrix towards the direction that pair needs,

    rho <- exp(log rho + eta D) / Tr(...),

with D = a^* a or a a^* (b^* b, b b^* on the second algebra) for the unit
norm worst pair. The step halves whenever the ratio has not improved for
`patience` iterations. The search stops as soon as the ratio drops to the
norm; otherwise the best states seen are returned and the paired report
carries the remaining violation.
"""

import numpy as np
import scipy.linalg

import jordannorm.utils.logging as logging
from jordannorm.algebra import State, maximally_mixed
from jordannorm.algebra.linalg import hermitian_part
from jordannorm.forms import form_norm, hilbertmap_norm
from jordannorm.grothendieck.witness import (
    WitnessStates,
    bilinear_quadratic_forms,
    bilinear_ratio,
    check_witness,
    check_witness_little,
    little_quadratic_form,
    little_ratio,
    unit_element_from_vec,
)

logger = logging.get_logger(__name__)


def _floor_log(matrix, floor):
    w, v = np.linalg.eigh(hermitian_part(matrix))
    return (v * np.log(np.clip(w, floor, None))) @ v.conj().T


def _floor(matrix, floor):
    w, v = np.linalg.eigh(hermitian_part(matrix))
    return (v * np.clip(w, floor, None)) @ v.conj().T


def mw_update(state, directions, eta, eig_floor=1e-8):
    """
    One multiplicative weights step on a state.
    Args:
        state (State): current state.
        directions (list): one Hermitian d_i x d_i matrix per block.
        eta (float): step size.
        eig_floor (float): eigenvalues of the densities are kept above this
            floor before and after the step.
    Returns:
        state (State): the updated state, total trace one.
    """
    blocks = [
        scipy.linalg.expm(_floor_log(r, eig_floor) + eta * hermitian_part(d))
        for r, d in zip(state.densities, directions)
    ]
    total = sum(float(np.trace(b).real) for b in blocks)
    blocks = [_floor(b / total, eig_floor) for b in blocks]
    total = sum(float(np.trace(b).real) for b in blocks)
    return State(state.algebra, [b / total for b in blocks])


def _left_square(x):
    return [b.conj().T @ b for b in x.blocks]


def _right_square(x):
    return [b @ b.conj().T for b in x.blocks]


def _run_search(ratio_of, update, states, norm, iters, step, patience,
                eig_floor):
    """
    Shared multiplicative weights loop.
    Args:
        ratio_of (callable): states -> (ratio, worst pair of unit elements).
        update (callable): (states, pair, eta, eig_floor) -> new states.
        states (list): starting states.
        norm (float): target ratio.
    Returns:
        best (list): states with the smallest ratio seen.
        best_ratio (float): that ratio.
        iterations (int): iterations performed.
    """
    best, best_ratio = list(states), np.inf
    eta = step
    stall = 0
    iterations = 0
    for iterations in range(1, iters + 1):
        ratio, pair = ratio_of(states)
        if ratio < best_ratio:
            best, best_ratio = list(states), ratio
            stall = 0
        else:
            stall += 1
        if ratio <= norm:
            break
        if stall >= patience:
            eta *= 0.5
            stall = 0
        states = update(states, pair, eta, eig_floor)
    return best, best_ratio, iterations


def find_witness_bilinear(
    form,
    iters=400,
    seed=0,
    norm_B=None,
    step=0.1,
    eig_floor=1e-8,
    patience=25,
    restarts=8,
    ascent_steps=60,
    tol=1e-6,
):
    """
    Search witness states kappa, lambda, mu, nu for a bilinear form.
    Args:
        form (BilinearForm): the form B.
        iters (int): iteration limit.
        seed (int): seed of the norm estimate and of the witness check.
        norm_B (float, optional): the norm to reach; estimated by `form_norm`
            when omitted.
        step (float): initial multiplicative weights step.
        eig_floor (float): density eigenvalue floor.
        patience (int): iterations without improvement before halving.
        restarts, ascent_steps, tol: passed to `check_witness`.
    Returns:
        states (WitnessStates): the best states found.
        report (WitnessReport): their check against norm_B.
    """
    if norm_B is None:
        norm_B = form_norm(form, restarts=max(restarts, 1), seed=seed).value
    coeffs = form.coeffs
    alg_a, alg_b = form.alg_a, form.alg_b

    def ratio_of(states):
        w = WitnessStates(*states)
        qa, qb = bilinear_quadratic_forms(w)
        ratio, a_vec, b_vec = bilinear_ratio(coeffs, qa, qb)
        pair = (
            unit_element_from_vec(alg_a, a_vec),
            unit_element_from_vec(alg_b, b_vec),
        )
        return ratio, pair

    def update(states, pair, eta, floor):
        kappa, lam, mu, nu = states
        a, b = pair
        return [
            mw_update(kappa, _left_square(a), eta, floor),
            mw_update(lam, _right_square(a), eta, floor),
            mw_update(mu, _left_square(b), eta, floor),
            mw_update(nu, _right_square(b), eta, floor),
        ]

    start = [
        maximally_mixed(alg_a),
        maximally_mixed(alg_a),
        maximally_mixed(alg_b),
        maximally_mixed(alg_b),
    ]
    best, best_ratio, iterations = _run_search(
        ratio_of, update, start, norm_B, iters, step, patience, eig_floor
    )
    states = WitnessStates(*best)
    report = check_witness(
        form, states, norm_B, restarts, seed, ascent_steps, tol
    )
    logger.info(
        "Bilinear witness search: ratio {:.9f} against norm {:.9f} after {} "
        "iterations, violation {:.3e}".format(
            best_ratio, norm_B, iterations, report.max_violation
        )
    )
    return states, report


def find_witness_little(
    fmap,
    iters=400,
    seed=0,
    norm_F=None,
    step=0.1,
    eig_floor=1e-8,
    patience=25,
    restarts=8,
    ascent_steps=60,
    tol=1e-6,
):
    """
    Search witness states psi, phi for a map into a Hilbert space. Arguments
    and results as in `find_witness_bilinear`.
    """
    if norm_F is None:
        norm_F = hilbertmap_norm(
            fmap, restarts=max(restarts, 1), seed=seed
        ).value
    matrix = fmap.matrix
    alg = fmap.alg

    def ratio_of(states):
        q = little_quadratic_form(WitnessStates(psi=states[0], phi=states[1]))
        ratio, a_vec = little_ratio(matrix, q)
        return ratio, (unit_element_from_vec(alg, a_vec),)

    def update(states, pair, eta, floor):
        psi, phi = states
        (a,) = pair
        return [
            mw_update(psi, _left_square(a), eta, floor),
            mw_update(phi, _right_square(a), eta, floor),
        ]

    start = [maximally_mixed(alg), maximally_mixed(alg)]
    best, best_ratio, iterations = _run_search(
        ratio_of, update, start, norm_F, iters, step, patience, eig_floor
    )
    states = WitnessStates(psi=best[0], phi=best[1])
    report = check_witness_little(
        fmap, states, norm_F, restarts, seed, ascent_steps, tol
    )
    logger.info(
        "Little witness search: ratio {:.9f} against norm {:.9f} after {} "
        "iterations, violation {:.3e}".format(
            best_ratio, norm_F, iterations, report.max_violation
        )
    )
    return states, report
