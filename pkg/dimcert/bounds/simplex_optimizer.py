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
from functools import partial

import numpy as np

from dimcert.bounds.pm_bound import as_matrix
from dimcert.correlations.model import SimplexWeights
from dimcert.dataloading import run_tasks
from dimcert.defaults import EXACT_MAX_N, HEURISTIC_RESTARTS, HEURISTIC_MAX_ITER, HEURISTIC_STEP_TOL, SEED, \
    SIMPLEX_TOL
from dimcert.exceptions import TooLargeError

# supports above this size are enumerated in chunks that can go to worker processes
_FACES_PER_TASK = 4096
_FEASIBILITY_TOL = 1e-12
_TIE_RTOL = 1e-12


class StQPResult(object):
    """Minimizer of q^T A q over the probability simplex."""

    def __init__(self, q_star, value, certified_global, method, stationary_points_examined, restarts=0, seed=None):
        self.q_star = q_star
        self.value = value
        self.certified_global = certified_global
        self.method = method
        self.stationary_points_examined = stationary_points_examined
        self.restarts = restarts
        self.seed = seed

    def to_dict(self):
        ret = {"q_star": self.q_star.weights, "value": self.value, "certified_global": self.certified_global,
               "method": self.method, "stationary_points_examined": self.stationary_points_examined,
               "restarts": self.restarts}
        if self.seed is not None:
            ret["seed"] = self.seed
        return ret

    def __repr__(self):
        return "StQPResult(value=%r, method=%s, certified_global=%r)" % (self.value, self.method,
                                                                         self.certified_global)


def simplex_projection(v):
    """Euclidean projection of v onto {q : q >= 0, sum(q) = 1}, sort based, O(N log N)."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.
    ind = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - css / ind > 0)[0][-1]
    theta = css[rho] / (rho + 1.)
    return np.maximum(v - theta, 0.)


def _support_size(q):
    return int(np.sum(q > _FEASIBILITY_TOL))


def _is_better(candidate, incumbent):
    """Total order used by every reduction: smaller value, then larger support, then lexicographically smaller q.

    candidate and incumbent are (value, q) pairs, values closer than a relative 1e-12 count as equal.
    """
    if incumbent is None:
        return True
    v1, q1 = candidate
    v2, q2 = incumbent
    if abs(v1 - v2) > _TIE_RTOL * max(abs(v1), abs(v2)):
        return v1 < v2
    s1, s2 = _support_size(q1), _support_size(q2)
    if s1 != s2:
        return s1 > s2
    return tuple(np.round(q1, 12)) < tuple(np.round(q2, 12))


def _reduce(candidates):
    best = None
    for cand in candidates:
        if _is_better(cand, best):
            best = cand
    return best


def solve_face(a, support):
    """Stationary point of q^T A q on the relative interior of the face spanned by support.

    Solves the bordered system A_S q_S = lambda 1, sum(q_S) = 1 in the least-norm sense. Returns the full length q, or
    None if the system is inconsistent or its solution leaves the face. Faces whose solution set is not a single point
    are still covered: the solution set then touches a smaller face with the same objective value.
    """
    n = a.shape[0]
    k = len(support)
    kkt = np.zeros((k + 1, k + 1))
    kkt[:k, :k] = a[np.ix_(support, support)]
    kkt[:k, k] = 1.
    kkt[k, :k] = 1.
    rhs = np.zeros(k + 1)
    rhs[k] = 1.
    z = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    if np.abs(kkt.dot(z) - rhs).max() > 1e-9 * max(1., np.abs(a).max()):
        return None
    q_s = z[:k]
    if q_s.min() < -_FEASIBILITY_TOL:
        return None
    q_s = np.clip(q_s, 0., None)
    q = np.zeros(n)
    q[support] = q_s / q_s.sum()
    return q


def _enumerate_faces(masks, a):
    """worker: best KKT point over a range of support bitmasks, plus how many faces produced one"""
    n = a.shape[0]
    bits = 1 << np.arange(n)
    found = 0
    best = None
    for mask in range(*masks):
        support = np.flatnonzero(mask & bits)
        q = solve_face(a, support)
        if q is None:
            continue
        found += 1
        cand = (float(q.dot(a).dot(q)), q)
        if _is_better(cand, best):
            best = cand
    return found, best


def optimize_q_exact(a, max_n=EXACT_MAX_N, num_threads=1):
    """Global minimum of q^T A q over the simplex by enumerating the KKT points of all 2^N - 1 faces.

    The minimizer lies in the relative interior of some face and is a stationary point there, so the best feasible
    stationary point over all faces (vertices included) is the global optimum. Cost grows like 2^N.

    Args:
        a: FidelityMatrix or symmetric ndarray

        max_n (int): refuse larger instances with TooLargeError

        num_threads (int): worker processes for the enumeration. Does not change the result
    """
    a = as_matrix(a)
    n = a.shape[0]
    if n > max_n:
        raise TooLargeError(n, max_n)
    n_faces = 2 ** n
    chunks = [(lo, min(lo + _FACES_PER_TASK, n_faces)) for lo in range(1, n_faces, _FACES_PER_TASK)]
    results = run_tasks(chunks, partial(_enumerate_faces, a=a), num_threads)
    examined = sum(r[0] for r in results)
    value, q = _reduce(r[1] for r in results if r[1] is not None)
    logging.debug("StQP: %d faces, %d feasible stationary points" % (n_faces - 1, examined))
    return StQPResult(SimplexWeights(q, tol=SIMPLEX_TOL), value, True, "face_enumeration", examined)


def projected_gradient_descent(a, q0, max_iter=HEURISTIC_MAX_ITER, step_tol=HEURISTIC_STEP_TOL):
    """Fixed step 1/(2L) with L the largest absolute row sum of A, projecting back onto the simplex each step."""
    a = as_matrix(a)
    lipschitz = np.abs(a).sum(axis=1).max()
    step = 1. / (2. * lipschitz) if lipschitz > 0 else 1.
    q = simplex_projection(q0)
    for _ in range(max_iter):
        q_new = simplex_projection(q - step * 2. * a.dot(q))
        moved = np.linalg.norm(q_new - q)
        q = q_new
        if moved < step_tol:
            break
    return float(q.dot(a).dot(q)), q


def _descend(q0, a, max_iter):
    return projected_gradient_descent(a, q0, max_iter=max_iter)


def starting_points(n, restarts, seed):
    """uniform, the n vertices, then one flat Dirichlet sample per restart, each drawn from its own child stream"""
    starts = [np.ones(n) / n] + [np.eye(n)[i] for i in range(n)]
    for child in np.random.SeedSequence(seed).spawn(restarts):
        starts.append(np.random.default_rng(child).dirichlet(np.ones(n)))
    return starts


def optimize_q_heuristic(a, restarts=HEURISTIC_RESTARTS, seed=SEED, max_iter=HEURISTIC_MAX_ITER, num_threads=1):
    """Multistart projected gradient descent. No optimality certificate, deterministic for a fixed seed."""
    if restarts < 1:
        raise ValueError("restarts must be >= 1, got %r" % restarts)
    a = as_matrix(a)
    starts = starting_points(a.shape[0], restarts, seed)
    results = run_tasks(starts, partial(_descend, a=a, max_iter=max_iter), num_threads)
    value, q = _reduce(results)
    q = q / q.sum()
    return StQPResult(SimplexWeights(q, tol=SIMPLEX_TOL), float(q.dot(a).dot(q)), False, "multistart_pgd",
                      len(starts), restarts=restarts, seed=seed)


def optimize_q(a, exact_threshold=EXACT_MAX_N, restarts=HEURISTIC_RESTARTS, seed=SEED, num_threads=1):
    """Exact face enumeration when N <= exact_threshold, multistart descent otherwise."""
    n = as_matrix(a).shape[0]
    if n <= exact_threshold:
        return optimize_q_exact(a, max_n=exact_threshold, num_threads=num_threads)
    logging.info("StQP: N = %d above exact threshold %d, falling back to multistart descent" % (n, exact_threshold))
    return optimize_q_heuristic(a, restarts=restarts, seed=seed, num_threads=num_threads)
