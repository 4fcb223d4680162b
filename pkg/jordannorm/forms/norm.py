#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
Norm estimation for bilinear forms and maps into Hilbert spaces.

Both suprema are searched by alternating maximization. With one argument
fixed the problem is a linear functional on the other algebra, whose norm and
maximizer are exact (trace norm duality), so every half step is exact and the
value never decreases. The result is a certified lower bound of the norm; it
is not certified to be the global maximum.
"""

import numpy as np

import jordannorm.utils.logging as logging
from jordannorm.algebra import (
    functional_from_vector,
    functional_norm,
    op_norm,
    random_unit_element,
    zero,
)
from jordannorm.forms.bilinear import eval_form

logger = logging.get_logger(__name__)


class NormEstimate(object):
    """
    Best-found lower bound of a norm together with the elements attaining it.
    """

    def __init__(
        self,
        value,
        maximizer_x,
        maximizer_y=None,
        converged=True,
        restarts_used=0,
        sweeps=0,
    ):
        """
        Args:
            value (float): the lower bound.
            maximizer_x (AlgElement): maximizer in the (first) algebra.
            maximizer_y (AlgElement): maximizer in the second algebra, None for
                maps into Hilbert spaces.
            converged (bool): whether the winning restart met the stopping
                tolerance before the sweep limit.
            restarts_used (int): number of restarts performed.
            sweeps (int): sweeps used by the winning restart.
        """
        self.value = float(value)
        self.maximizer_x = maximizer_x
        self.maximizer_y = maximizer_y
        self.converged = bool(converged)
        self.restarts_used = int(restarts_used)
        self.sweeps = int(sweeps)

    def __repr__(self):
        return "NormEstimate(value={:.12g}, converged={}, restarts={})".format(
            self.value, self.converged, self.restarts_used
        )


def _ascent_form(coeffs, alg_a, alg_b, x, max_sweeps, tol):
    value = -1.0
    converged = False
    sweeps = 0
    y = None
    for sweeps in range(1, max_sweeps + 1):
        # y -> B(x, y) is the functional with coefficients C^T vec(x).
        _, y = functional_norm(
            functional_from_vector(alg_b, coeffs.T @ x.vec()), alg_b
        )
        new_value, x = functional_norm(
            functional_from_vector(alg_a, coeffs @ y.vec()), alg_a
        )
        if new_value - value < tol:
            value = max(value, new_value)
            converged = True
            break
        value = new_value
    return x, y, converged, sweeps


def form_norm(form, restarts=32, seed=0, max_sweeps=500, tol=1e-12):
    """
    Lower bound of sup{|B(x, y)| : ||x|| <= 1, ||y|| <= 1}.
    Args:
        form (BilinearForm): the form B.
        restarts (int): number of random unit starts; restart i is seeded
            with seed + i.
        seed (int): base seed.
        max_sweeps (int): sweep limit per restart.
        tol (float): a restart stops once one sweep gains less than tol.
    Returns:
        estimate (NormEstimate): best value over the restarts, ties going to
            the lowest restart index.
    """
    assert restarts >= 1, "Need at least one restart, got {}".format(restarts)
    if form.is_zero():
        return NormEstimate(
            0.0, zero(form.alg_a), zero(form.alg_b), True, 0, 0
        )
    best = None
    for i in range(restarts):
        rng = np.random.default_rng(seed + i)
        x0 = random_unit_element(form.alg_a, rng)
        x, y, converged, sweeps = _ascent_form(
            form.coeffs, form.alg_a, form.alg_b, x0, max_sweeps, tol
        )
        value = abs(eval_form(form, x, y))
        if best is None or value > best.value:
            best = NormEstimate(value, x, y, converged, restarts, sweeps)
    if not best.converged:
        logger.warning(
            "Best restart stopped at the sweep limit ({})".format(max_sweeps)
        )
    return best


def hilbertmap_norm(fmap, restarts=32, seed=0, max_sweeps=500, tol=1e-12):
    """
    Lower bound of sup{||F(a)|| : ||a|| <= 1}, searched as
    sup{|<F(a), z>| : ||a|| <= 1, ||z|| <= 1}.
    Args:
        fmap (HilbertMap): the map F.
        restarts, seed, max_sweeps, tol: as in `form_norm`.
    Returns:
        estimate (NormEstimate): maximizer_y is None.
    """
    assert restarts >= 1, "Need at least one restart, got {}".format(restarts)
    alg = fmap.alg
    if fmap.is_zero():
        return NormEstimate(0.0, zero(alg), None, True, 0, 0)
    matrix = fmap.matrix
    best = None
    for i in range(restarts):
        rng = np.random.default_rng(seed + i)
        a = random_unit_element(alg, rng)
        value = -1.0
        converged = False
        sweeps = 0
        for sweeps in range(1, max_sweeps + 1):
            image = matrix @ a.vec()
            length = np.linalg.norm(image)
            if length == 0.0:
                # Started in the kernel, move along the first coordinate.
                z = np.zeros(fmap.target_dim, dtype=np.complex128)
                z[0] = 1.0
            else:
                z = image / length
            # a -> <F(a), z> has coefficients M^T conj(z).
            new_value, a = functional_norm(
                functional_from_vector(alg, matrix.T @ z.conj()), alg
            )
            if new_value - value < tol:
                value = max(value, new_value)
                converged = True
                break
            value = new_value
        value = float(np.linalg.norm(fmap(a)))
        if best is None or value > best.value:
            best = NormEstimate(value, a, None, converged, restarts, sweeps)
    return best


def check_estimate(form, estimate, tol=1e-10):
    """
    Residuals of the NormEstimate contract for a bilinear form: the value is
    attained by the maximizers and both lie in the unit ball.
    Returns:
        residuals (dict): `attained` and `ball` residuals.
    """
    attained = abs(
        abs(eval_form(form, estimate.maximizer_x, estimate.maximizer_y))
        - estimate.value
    )
    ball = max(
        op_norm(estimate.maximizer_x) - 1.0,
        op_norm(estimate.maximizer_y) - 1.0,
        0.0,
    )
    return {
        "attained": attained,
        "ball": ball,
        "passed": attained <= tol and ball <= tol,
    }
