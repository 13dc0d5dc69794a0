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

import numpy as np

from dimcert.bounds.bell_bounds import ceil_with_slack, bell_bound_eq1, bell_bound_eq2
from dimcert.correlations.model import BellCorrelation, as_simplex_weights
from dimcert.defaults import DEGENERATE_DENOMINATOR, CEIL_SLACK
from dimcert.exceptions import DegenerateDenominatorError, ShapeMismatchError


class FidelityMatrix(object):
    """a[x][x'] = min_y ( sum_b sqrt(p(b|x,y)) sqrt(p(b|x',y)) )^2

    i.e. the squared Bhattacharyya coefficient of the two outcome distributions, minimized over measurements.
    argmin_y records which measurement attains the minimum (smallest y on ties).
    """

    def __init__(self, a, argmin_y):
        a = np.array(a, dtype=float)
        argmin_y = np.array(argmin_y, dtype=int)
        a.flags.writeable = False
        argmin_y.flags.writeable = False
        self.a = a
        self.argmin_y = argmin_y

    @property
    def n(self):
        return self.a.shape[0]

    def quadratic_form(self, q):
        q = np.asarray(q, dtype=float)
        return float(q.dot(self.a).dot(q))

    def to_dict(self):
        return {"a": self.a, "argmin_y": self.argmin_y}


def as_matrix(a):
    """FidelityMatrix or anything array-like -> square float ndarray"""
    if isinstance(a, FidelityMatrix):
        return a.a
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ShapeMismatchError("expected a non-empty square matrix, got shape %s" % (a.shape,))
    return a


def fidelity_matrix(p):
    # slices accepted within tol are scaled to sum to one, so A[x][x] = 1 and the bound never exceeds N
    sums = p.probs.sum(axis=2, keepdims=True)
    sq = np.sqrt(p.probs / np.where(sums > 0, sums, 1.))
    bc = np.einsum('xyb,zyb->xzy', sq, sq) ** 2
    argmin_y = bc.argmin(axis=2)
    a = bc.min(axis=2)
    # the einsum is symmetric up to summation order
    a = 0.5 * (a + a.T)
    return FidelityMatrix(a, argmin_y)


class PMBoundReport(object):

    def __init__(self, q_used, raw_bound, denominator, trivial_ub, q_source, optimizer=None):
        self.q_used = q_used
        self.raw_bound = raw_bound
        self.denominator = denominator
        self.dimension_lb = min(trivial_ub, ceil_with_slack(raw_bound))
        self.trivial_ub = trivial_ub
        self.q_source = q_source
        self.optimizer = optimizer

    def to_dict(self):
        ret = {"raw_bound": self.raw_bound, "dimension_lb": self.dimension_lb, "denominator": self.denominator,
               "trivial_ub": self.trivial_ub, "q_source": self.q_source, "q_used": self.q_used.weights}
        if self.optimizer is not None:
            ret["optimizer"] = self.optimizer.to_dict()
        return ret

    def __repr__(self):
        return "PMBoundReport(raw_bound=%r, dimension_lb=%d, q_source=%s)" % (self.raw_bound, self.dimension_lb,
                                                                              self.q_source)


def pm_bound(p, q=None, fidelity=None, q_source=None, optimizer=None):
    """Lower bound on the dimension needed to produce p:

        D(p) >= ( sum_{x,x'} q_x q_x' A[x][x'] )^-1

    valid for every probability vector q (uniform if None).

    :param fidelity: precomputed fidelity_matrix(p), pass it when evaluating many q
    :param q_source: 'uniform', 'user' or 'optimized'. Inferred if None
    """
    n = p.n_preparations
    if q_source is None:
        q_source = "uniform" if q is None else "user"
    q = as_simplex_weights(q, n)
    if fidelity is None:
        fidelity = fidelity_matrix(p)
    denominator = fidelity.quadratic_form(q.weights / q.weights.sum())
    if denominator < DEGENERATE_DENOMINATOR:
        raise DegenerateDenominatorError("q^T A q = %r vanishes" % denominator, denominator=denominator)
    raw = 1. / denominator
    return PMBoundReport(q, raw, denominator, n, q_source, optimizer)


def diagonal_sum(fidelity, q=None):
    """sum_x q_x^2 A[x][x]; for uniform q this is exactly 1/N, which is why disjoint supports force D(p) = N."""
    a = as_matrix(fidelity)
    q = as_simplex_weights(q, a.shape[0]).weights
    return float(np.sum(q ** 2 * np.diag(a)))


def pm_to_bell(p, q=None):
    """Bell correlation of the proof construction.

    Alice holds the classical register |x> with weight q_x and reads it out with her single setting, Bob measures the
    prepared state as in the PM scenario: r(x,b|y) = q_x p(b|x,y). The shared state itself is never built.
    Result is indexed [0][y][x][b].
    """
    q = as_simplex_weights(q, p.n_preparations)
    r = q.weights[:, None, None] * p.probs  # [x][y][b]
    return BellCorrelation(np.transpose(r, (1, 0, 2))[None], tol=p.tol)


def check_dominance(p, q=None, slack=CEIL_SLACK):
    """Compares the two Bell bounds of pm_to_bell(p, q). A case where eq1 beats eq2 is logged, never raised."""
    r = pm_to_bell(p, q)
    eq1, eq2 = bell_bound_eq1(r), bell_bound_eq2(r)
    dominated = eq2 >= eq1 - slack
    if not dominated:
        logging.warning("PMBound: dominance counterexample, eq1 = %r > eq2 = %r" % (eq1, eq2))
    return dominated, eq1, eq2
