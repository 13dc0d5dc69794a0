# Copyright 2026 The dimcert developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import logging
import math
from functools import partial

import numpy as np
from scipy.optimize import minimize

from dimcert.bounds.pm_bound import pm_bound, fidelity_matrix
from dimcert.bounds.simplex_optimizer import optimize_q_exact
from dimcert.correlations.generators import classical_realization
from dimcert.dataloading import run_tasks
from dimcert.defaults import SEARCH_RESTARTS, SEARCH_TOL_TARGET, SEARCH_MAX_ITER, SEARCH_GRAD_TOL, \
    POVM_REGULARIZATION, SEED
from dimcert.realization.realization import Realization, verify_realization

# optimized q is only tried for the lower bound check when exact enumeration is cheap
_LOWER_BOUND_EXACT_MAX_N = 10

ADVISORY_NOTE = "not_found is advisory only, impossibility is certified by lower bounds alone"


def _dagger(x):
    return np.conj(np.swapaxes(x, -1, -2))


def n_params(shape, d):
    n, m, k = shape
    return 2 * (n + m * k) * d * d


def pack(g, f):
    z = np.concatenate([g.ravel(), f.ravel()])
    return np.concatenate([z.real, z.imag])


def unpack(theta, shape, d):
    """real parameter vector -> factors G (N, d, d) of the states and F (M, K, d, d) of the effects"""
    n, m, k = shape
    half = len(theta) // 2
    z = theta[:half] + 1j * theta[half:]
    g = z[:n * d * d].reshape(n, d, d)
    f = z[n * d * d:].reshape(m, k, d, d)
    return g, f


def _forward(g, f, eps):
    d = g.shape[-1]
    w = g @ _dagger(g)
    t = np.trace(w, axis1=1, axis2=2).real
    rho = w / t[:, None, None]
    b = f @ _dagger(f)
    s, u = np.linalg.eigh(b.sum(axis=1) + eps * np.eye(d))
    t_half = (u * s[:, None, :] ** -0.5) @ _dagger(u)  # S^{-1/2}
    pi = t_half[:, None] @ b @ t_half[:, None]
    return t, rho, b, s, u, t_half, pi


def residual_objective(theta, target, d, eps=POVM_REGULARIZATION):
    """Squared residual sum_{x,y,b} (Tr(rho_x Pi_b^y) - p(b|x,y))^2 and its gradient with respect to theta.

    rho_x = G_x G_x^+ / Tr(G_x G_x^+) and Pi_b^y = S_y^{-1/2} F_b^y F_b^y^+ S_y^{-1/2} with
    S_y = sum_b F_b^y F_b^y^+ + eps * I, so every theta describes valid states and measurements.
    The derivative through S^{-1/2} uses the divided differences of s -> s^{-1/2} in the eigenbasis of S.
    """
    shape = target.shape
    g, f = unpack(theta, shape, d)
    t, rho, b, s, u, t_half, pi = _forward(g, f, eps)
    eye = np.eye(d)

    r = np.einsum('xij,ybji->xyb', rho, pi).real - target
    value = float(np.sum(r ** 2))
    r2 = 2. * r

    # states
    e = np.einsum('xyb,ybij->xij', r2, pi)
    tr_e_rho = np.einsum('xij,xji->x', e, rho).real
    e_tilde = (e - tr_e_rho[:, None, None] * eye) / t[:, None, None]
    grad_g = 2. * e_tilde @ g

    # measurements
    c = np.einsum('xyb,xij->ybij', r2, rho)
    direct = t_half[:, None] @ c @ t_half[:, None]
    x = np.einsum('ybij,yjk,ybkl->yil', b, t_half, c)
    h_hat = _dagger(u) @ (x + _dagger(x)) @ u
    sq = np.sqrt(s)
    divided = -1. / (sq[:, :, None] * sq[:, None, :] * (sq[:, :, None] + sq[:, None, :]))
    through_s = u @ (divided * h_hat) @ _dagger(u)
    grad_f = 2. * (direct + through_s[:, None]) @ f

    return value, pack(grad_g, grad_f)


def realization_from_params(theta, shape, d, eps=POVM_REGULARIZATION):
    """Builds the Realization for theta. The measurements are normalized without regularization whenever S is
    invertible, so they sum to the identity up to rounding."""
    g, f = unpack(theta, shape, d)
    s_min = np.linalg.eigvalsh((f @ _dagger(f)).sum(axis=1)).min()
    _, rho, _, _, _, _, pi = _forward(g, f, 0. if s_min > 1e-14 else eps)
    # symmetrize away rounding so the Hermiticity checks are exact
    rho = 0.5 * (rho + _dagger(rho))
    pi = 0.5 * (pi + _dagger(pi))
    return Realization(rho, pi)


def classical_warm_start(p, d):
    """Parameters reproducing classical_realization(p) padded to dimension d (d >= N)."""
    real = classical_realization(p, dim=d)
    f = np.sqrt(np.clip(np.diagonal(real.povms, axis1=2, axis2=3).real, 0., None))
    f = f[..., None] * np.eye(d)
    return pack(np.array(real.states), f)


def random_start(shape, d, seed_seq):
    rng = np.random.default_rng(seed_seq)
    return rng.standard_normal(n_params(shape, d))


def _run_restart(theta0, target, d, max_iter, grad_tol, eps):
    res = minimize(residual_objective, theta0, args=(target, d, eps), jac=True, method="L-BFGS-B",
                   options={"maxiter": max_iter, "maxfun": 2 * max_iter, "gtol": grad_tol,
                            "ftol": np.finfo(float).eps})
    realization = realization_from_params(res.x, target.shape, d, eps)
    residual = float(np.abs(realization.induced_correlation() - target).max())
    return residual, res.x, int(res.nit)


class SearchOutcome(object):

    def __init__(self, status, realization, residual, restarts_used, seed, dim, best_restart=None, annotation=None,
                 lower_bound=None):
        self.status = status
        self.realization = realization
        self.residual = residual
        self.restarts_used = restarts_used
        self.seed = seed
        self.dim = dim
        self.best_restart = best_restart
        self.annotation = annotation
        self.lower_bound = lower_bound

    @property
    def found(self):
        return self.status == "found"

    def to_dict(self):
        return {"status": self.status, "residual": self.residual, "restarts_used": self.restarts_used,
                "seed": self.seed, "dim": self.dim, "best_restart": self.best_restart,
                "annotation": self.annotation, "lower_bound": self.lower_bound, "note": ADVISORY_NOTE}

    def __repr__(self):
        return "SearchOutcome(%s, residual=%r, d=%d)" % (self.status, self.residual, self.dim)


def dimension_lower_bound(p):
    """Best integer lower bound over the q values worth trying: uniform, and the optimal q for small N."""
    fid = fidelity_matrix(p)
    lb = pm_bound(p, fidelity=fid).dimension_lb
    if p.n_preparations <= _LOWER_BOUND_EXACT_MAX_N:
        q = optimize_q_exact(fid).q_star
        lb = max(lb, pm_bound(p, q, fidelity=fid).dimension_lb)
    return lb


def search_realization(p, d, restarts=SEARCH_RESTARTS, seed=SEED, tol_target=SEARCH_TOL_TARGET, force=False,
                       max_iter=SEARCH_MAX_ITER, grad_tol=SEARCH_GRAD_TOL, eps=POVM_REGULARIZATION, num_threads=1):
    """Looks for d-dimensional states and measurements reproducing p.

    Each restart runs L-BFGS on the unconstrained squared residual from its own seeded Gaussian start; with d >= N
    restart 0 starts from the classical realization instead. The best restart (lowest residual, then lowest index)
    wins, so the outcome only depends on (seed, restarts).

    If the fidelity bound already proves D(p) > d the search is skipped unless force is set.
    """
    if d < 1 or int(d) != d:
        raise ValueError("d must be a positive integer, got %r" % d)
    if restarts < 1:
        raise ValueError("restarts must be >= 1, got %r" % restarts)
    if tol_target <= 0:
        raise ValueError("tol_target must be positive, got %r" % tol_target)
    d = int(d)

    lower_bound = dimension_lower_bound(p)
    annotation = "impossible_by_lower_bound" if lower_bound > d else None
    if annotation is not None and not force:
        logging.info("RealizationSearch: lower bound %d > d = %d, skipping search" % (lower_bound, d))
        return SearchOutcome("not_found", None, math.inf, 0, seed, d, annotation=annotation, lower_bound=lower_bound)

    target = np.array(p.probs)
    starts = [random_start(p.shape, d, child) for child in np.random.SeedSequence(seed).spawn(restarts)]
    if d >= p.n_preparations:
        starts[0] = classical_warm_start(p, d)

    worker = partial(_run_restart, target=target, d=d, max_iter=max_iter, grad_tol=grad_tol, eps=eps)
    results = run_tasks(starts, worker, num_threads)

    best = None
    for i, (residual, theta, nit) in enumerate(results):
        logging.debug("RealizationSearch: restart %d residual %.3e after %d iterations" % (i, residual, nit))
        if best is None or residual < results[best][0]:
            best = i
    realization = realization_from_params(results[best][1], p.shape, d, eps)
    residual = verify_realization(realization, p)
    status = "found" if residual <= tol_target else "not_found"
    return SearchOutcome(status, realization if status == "found" else None, residual, restarts, seed, d,
                         best_restart=best, annotation=annotation, lower_bound=lower_bound)
