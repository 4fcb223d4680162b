#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
Witness states for the non-commutative Grothendieck inequalities

    |B(a, b)| <= ||B|| sqrt(kappa(a^* a) + lambda(a a^*))
                        sqrt(mu(b^* b) + nu(b b^*)),
    ||F(a)||  <= ||F|| sqrt(psi(a^* a) + phi(a a^*)),

and their numerical verification.

For fixed states both right hand sides are square roots of positive
quadratic forms on the coordinates, so the largest ratio between the two
sides is a generalized singular value. It is computed exactly by whitening
the quadratic forms; directions in their kernels that still see the form give
an infinite ratio. The ratio maximizer then seeds a projected ascent on the
violation |B(a, b)| - ||B|| rhs(a, b) over the unit balls.
"""

import numpy as np

import jordannorm.utils.logging as logging
from jordannorm.algebra import (
    AlgElement,
    adjoint,
    apply_state,
    identity,
    left_gram,
    mul,
    op_norm,
    random_unit_element,
    right_gram,
)
from jordannorm.algebra.linalg import eigh_truncated, spectral_norm
from jordannorm.utils.errors import ShapeError

logger = logging.get_logger(__name__)


class WitnessStates(object):
    """
    States for one of the two inequalities: kappa, lambda on A and mu, nu
    on B for bilinear forms, or psi, phi on A for maps into Hilbert spaces.
    """

    def __init__(self, kappa=None, lam=None, mu=None, nu=None, psi=None,
                 phi=None):
        bilinear = [kappa, lam, mu, nu]
        little = [psi, phi]
        if all(s is not None for s in bilinear) and all(
            s is None for s in little
        ):
            self.kind = "bilinear"
            if kappa.algebra != lam.algebra or mu.algebra != nu.algebra:
                raise ShapeError(
                    "kappa, lambda must share an algebra, as must mu, nu"
                )
        elif all(s is not None for s in little) and all(
            s is None for s in bilinear
        ):
            self.kind = "little"
            if psi.algebra != phi.algebra:
                raise ShapeError("psi and phi must share an algebra")
        else:
            raise ValueError(
                "Give either kappa, lam, mu, nu or psi, phi as witness states"
            )
        self.kappa = kappa
        self.lam = lam
        self.mu = mu
        self.nu = nu
        self.psi = psi
        self.phi = phi

    def states(self):
        """Named states in a fixed order."""
        if self.kind == "bilinear":
            return [("kappa", self.kappa), ("lambda", self.lam),
                    ("mu", self.mu), ("nu", self.nu)]
        return [("psi", self.psi), ("phi", self.phi)]

    def __repr__(self):
        return "WitnessStates(kind={})".format(self.kind)


class WitnessReport(object):
    """
    Largest violation found for a set of witness states.
    """

    def __init__(self, max_violation, worst_pair, norm_estimate_used, ratio,
                 tol=1e-6):
        """
        Args:
            max_violation (float): largest |lhs| - norm * rhs found over the
                unit balls; positive means the inequality fails.
            worst_pair (tuple): (a, b) attaining it, (a,) for maps.
            norm_estimate_used (float): the norm the inequality was checked
                with.
            ratio (float): supremum of |lhs| / rhs for these states
                (inf when a kernel direction of rhs sees the form).
            tol (float): the violation allowed for `passed`.
        """
        self.max_violation = float(max_violation)
        self.worst_pair = worst_pair
        self.norm_estimate_used = float(norm_estimate_used)
        self.ratio = float(ratio)
        self.tol = tol

    @property
    def passed(self):
        return self.max_violation <= self.tol

    def as_dict(self):
        return {
            "max_violation": self.max_violation,
            "norm_estimate_used": self.norm_estimate_used,
            "ratio": self.ratio,
            "tol": self.tol,
            "passed": self.passed,
        }


def bilinear_quadratic_forms(w):
    """
    Matrices Qa, Qb with vec(a)^H Qa vec(a) = kappa(a^* a) + lambda(a a^*)
    and vec(b)^H Qb vec(b) = mu(b^* b) + nu(b b^*).
    """
    qa = left_gram(w.kappa) + right_gram(w.lam)
    qb = left_gram(w.mu) + right_gram(w.nu)
    return qa, qb


def little_quadratic_form(w):
    """Q with vec(a)^H Q vec(a) = psi(a^* a) + phi(a a^*)."""
    return left_gram(w.psi) + right_gram(w.phi)


def _quad(q, v):
    return max(float(np.real(np.vdot(v, q @ v))), 0.0)


def _split_kernel(q, rel_tol):
    n = q.shape[0]
    w, u, _ = eigh_truncated(q, rel_tol)
    full_w, full_u = np.linalg.eigh(0.5 * (q + q.conj().T))
    kernel = full_u[:, np.argsort(full_w)[: n - w.size]]
    return w, u, kernel


def bilinear_ratio(coeffs, qa, qb, rel_tol=1e-12, kernel_tol=1e-9):
    """
    sup |vec(a)^T C vec(b)| / sqrt(vec(a)^H Qa vec(a) vec(b)^H Qb vec(b)).
    Returns:
        ratio (float): the supremum, inf if the form sees a kernel direction.
        a_vec, b_vec (ndarray): coordinates attaining it.
    """
    scale = max(spectral_norm(coeffs), 1e-300)
    if not np.any(coeffs):
        return 0.0, np.eye(qa.shape[0])[0], np.eye(qb.shape[0])[0]
    # With alpha = conj(vec(a)) the numerator is alpha^H C vec(b) and the
    # first quadratic form becomes alpha^H conj(Qa) alpha.
    wa, ua, ka = _split_kernel(np.conj(qa), rel_tol)
    wb, ub, kb = _split_kernel(qb, rel_tol)
    if ka.shape[1] > 0:
        seen = ka.conj().T @ coeffs
        row = int(np.argmax(np.linalg.norm(seen, axis=1)))
        if np.linalg.norm(seen[row]) > kernel_tol * scale:
            alpha = ka[:, row]
            b_vec = (alpha.conj() @ coeffs).conj()
            return np.inf, np.conj(alpha), b_vec / np.linalg.norm(b_vec)
    if kb.shape[1] > 0:
        seen = coeffs @ kb
        col = int(np.argmax(np.linalg.norm(seen, axis=0)))
        if np.linalg.norm(seen[:, col]) > kernel_tol * scale:
            alpha = seen[:, col] / np.linalg.norm(seen[:, col])
            return np.inf, np.conj(alpha), kb[:, col]
    whitened = (ua.conj().T @ coeffs @ ub) / np.sqrt(wa)[:, None]
    whitened = whitened / np.sqrt(wb)[None, :]
    x, s, yh = np.linalg.svd(whitened)
    alpha = ua @ (x[:, 0] / np.sqrt(wa))
    b_vec = ub @ (yh[0].conj() / np.sqrt(wb))
    return float(s[0]), np.conj(alpha), b_vec


def little_ratio(matrix, q, rel_tol=1e-12, kernel_tol=1e-9):
    """
    sup ||M vec(a)|| / sqrt(vec(a)^H Q vec(a)).
    Returns:
        ratio (float): the supremum, inf if M sees a kernel direction of Q.
        a_vec (ndarray): coordinates attaining it.
    """
    if not np.any(matrix):
        return 0.0, np.eye(q.shape[0])[0]
    scale = spectral_norm(matrix)
    w, u, kernel = _split_kernel(q, rel_tol)
    if kernel.shape[1] > 0:
        seen = np.linalg.norm(matrix @ kernel, axis=0)
        col = int(np.argmax(seen))
        if seen[col] > kernel_tol * scale:
            return np.inf, kernel[:, col]
    whitened = (matrix @ u) / np.sqrt(w)[None, :]
    _, s, yh = np.linalg.svd(whitened)
    return float(s[0]), u @ (yh[0].conj() / np.sqrt(w))


def witness_ratio(target, w):
    """
    Exact supremum of |lhs| / rhs over all arguments for fixed witness
    states; `target` is a BilinearForm for bilinear states and a HilbertMap
    for psi, phi.
    """
    if w.kind == "bilinear":
        qa, qb = bilinear_quadratic_forms(w)
        return bilinear_ratio(target.coeffs, qa, qb)[0]
    return little_ratio(target.matrix, little_quadratic_form(w))[0]


def unit_element_from_vec(alg, vec):
    x = AlgElement.from_vec(alg, vec)
    norm = op_norm(x)
    if norm == 0.0:
        return identity(alg)
    return x.scale(1.0 / norm)


def _project_ball(alg, vec):
    # Clip singular values of every block at one.
    blocks = []
    for block in alg.vec_to_blocks(vec):
        u, s, vh = np.linalg.svd(block)
        blocks.append((u * np.minimum(s, 1.0)) @ vh)
    return alg.blocks_to_vec(blocks)


def _ascend(objective, gradients, projections, start, steps):
    """
    Alternating projected gradient ascent with backtracking over the blocks
    of variables in `start`.
    """
    point = list(start)
    value = objective(point)
    step = [1.0] * len(point)
    for _ in range(steps):
        improved = False
        for i in range(len(point)):
            grad = gradients[i](point)
            if not np.any(grad):
                continue
            while step[i] > 1e-12:
                trial = list(point)
                trial[i] = projections[i](point[i] + step[i] * grad)
                trial_value = objective(trial)
                if trial_value > value:
                    point, value = trial, trial_value
                    step[i] *= 2.0
                    improved = True
                    break
                step[i] *= 0.5
        if not improved:
            break
    return point, value


def check_witness(form, w, norm_B, restarts=8, seed=0, ascent_steps=60,
                  tol=1e-6):
    """
    Search for violations of the bilinear inequality.
    Args:
        form (BilinearForm): the form B.
        w (WitnessStates): bilinear witness states.
        norm_B (float): the norm the inequality is checked with.
        restarts (int): random unit starts besides the ratio maximizer;
            restart i is seeded with seed + i.
        seed (int): base seed.
        ascent_steps (int): projected ascent sweeps per start.
        tol (float): violation allowed for the report to pass.
    Returns:
        report (WitnessReport): largest violation over all starts, ties going
            to the earliest start.
    """
    if w.kind != "bilinear":
        raise ValueError("check_witness needs bilinear witness states")
    if w.kappa.algebra != form.alg_a or w.mu.algebra != form.alg_b:
        raise ShapeError("Witness states live on the wrong algebras")
    coeffs = form.coeffs
    qa, qb = bilinear_quadratic_forms(w)
    alg_a, alg_b = form.alg_a, form.alg_b

    def violation(point):
        a, b = point
        lhs = abs(a @ coeffs @ b)
        return lhs - norm_B * np.sqrt(_quad(qa, a)) * np.sqrt(_quad(qb, b))

    def grad_a(point):
        a, b = point
        s = a @ coeffs @ b
        phase = s / abs(s) if abs(s) > 0 else 1.0
        g = phase * np.conj(coeffs @ b)
        qa_val = _quad(qa, a)
        if qa_val > 0:
            g = g - norm_B * np.sqrt(_quad(qb, b)) * (qa @ a) / np.sqrt(qa_val)
        return g

    def grad_b(point):
        a, b = point
        s = a @ coeffs @ b
        phase = s / abs(s) if abs(s) > 0 else 1.0
        g = phase * np.conj(coeffs.T @ a)
        qb_val = _quad(qb, b)
        if qb_val > 0:
            g = g - norm_B * np.sqrt(_quad(qa, a)) * (qb @ b) / np.sqrt(qb_val)
        return g

    ratio, a_vec, b_vec = bilinear_ratio(coeffs, qa, qb)
    starts = [
        (
            unit_element_from_vec(alg_a, a_vec).vec(),
            unit_element_from_vec(alg_b, b_vec).vec(),
        )
    ]
    for i in range(restarts):
        rng = np.random.default_rng(seed + i)
        starts.append(
            (
                random_unit_element(alg_a, rng).vec(),
                random_unit_element(alg_b, rng).vec(),
            )
        )
    best_value, best_point = None, None
    for start in starts:
        point, value = _ascend(
            violation,
            [grad_a, grad_b],
            [
                lambda v: _project_ball(alg_a, v),
                lambda v: _project_ball(alg_b, v),
            ],
            start,
            ascent_steps,
        )
        if best_value is None or value > best_value:
            best_value, best_point = value, point
    worst_pair = (
        AlgElement.from_vec(alg_a, best_point[0]),
        AlgElement.from_vec(alg_b, best_point[1]),
    )
    return WitnessReport(best_value, worst_pair, norm_B, ratio, tol)


def check_witness_little(fmap, w, norm_F, restarts=8, seed=0,
                         ascent_steps=60, tol=1e-6):
    """
    Search for violations of ||F(a)|| <= ||F|| sqrt(psi(a^* a) + phi(a a^*)).
    Arguments and result as in `check_witness`; worst_pair is (a,).
    """
    if w.kind != "little":
        raise ValueError("check_witness_little needs psi, phi witness states")
    if w.psi.algebra != fmap.alg:
        raise ShapeError("Witness states live on the wrong algebra")
    matrix = fmap.matrix
    gram = matrix.conj().T @ matrix
    q = little_quadratic_form(w)
    alg = fmap.alg

    def violation(point):
        (a,) = point
        return np.linalg.norm(matrix @ a) - norm_F * np.sqrt(_quad(q, a))

    def grad(point):
        (a,) = point
        length = np.linalg.norm(matrix @ a)
        g = gram @ a / length if length > 0 else np.zeros_like(a)
        q_val = _quad(q, a)
        if q_val > 0:
            g = g - norm_F * (q @ a) / np.sqrt(q_val)
        return g

    ratio, a_vec = little_ratio(matrix, q)
    starts = [(unit_element_from_vec(alg, a_vec).vec(),)]
    for i in range(restarts):
        rng = np.random.default_rng(seed + i)
        starts.append((random_unit_element(alg, rng).vec(),))
    best_value, best_point = None, None
    for start in starts:
        point, value = _ascend(
            violation,
            [grad],
            [lambda v: _project_ball(alg, v)],
            start,
            ascent_steps,
        )
        if best_value is None or value > best_value:
            best_value, best_point = value, point
    return WitnessReport(
        best_value,
        (AlgElement.from_vec(alg, best_point[0]),),
        norm_F,
        ratio,
        tol,
    )


def recompute_violation(form, w, report):
    """
    Violation of the reported worst pair evaluated from scratch.
    """
    if w.kind == "bilinear":
        a, b = report.worst_pair
        lhs = abs(form(a, b))
        rhs_a = apply_state(w.kappa, mul(adjoint(a), a)).real + apply_state(
            w.lam, mul(a, adjoint(a))
        ).real
        rhs_b = apply_state(w.mu, mul(adjoint(b), b)).real + apply_state(
            w.nu, mul(b, adjoint(b))
        ).real
        return lhs - report.norm_estimate_used * np.sqrt(
            max(rhs_a, 0.0) * max(rhs_b, 0.0)
        )
    (a,) = report.worst_pair
    lhs = np.linalg.norm(form(a))
    rhs = apply_state(w.psi, mul(adjoint(a), a)).real + apply_state(
        w.phi, mul(a, adjoint(a))
    ).real
    return lhs - report.norm_estimate_used * np.sqrt(max(rhs, 0.0))
