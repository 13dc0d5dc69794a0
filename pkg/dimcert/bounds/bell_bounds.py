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

import numpy as np

from dimcert.correlations.manipulations import swap_parties
from dimcert.defaults import CEIL_SLACK, DEGENERATE_DENOMINATOR
from dimcert.exceptions import DegenerateDenominatorError


def ceil_with_slack(value, slack=CEIL_SLACK):
    """Rounds a real lower bound up to an integer dimension without turning float dust like 2.0000000001 into 3."""
    if math.isinf(value):
        return value
    return max(1, int(math.ceil(value - slack)))


def setting_pair_denominators(probs):
    """For every pair of Bob settings (y, y') returns

        sum_{b,b'} min_x ( sum_a sqrt(r(a,b|x,y)) sqrt(r(a,b'|x,y')) )^2

    probs is indexed [x][y][a][b]. Result has shape (Y, Y).
    """
    sq = np.sqrt(probs)
    inner = np.einsum('xyab,xzac->xyzbc', sq, sq)
    return (inner ** 2).min(axis=0).sum(axis=(2, 3))


def _bound_from_denominators(denominators, label):
    """Outer max of the inverted denominators; ties go to the lowest index pair."""
    degenerate = denominators < DEGENERATE_DENOMINATOR
    if degenerate.all():
        raise DegenerateDenominatorError("every setting pair of %s has a vanishing denominator: the correlation has "
                                         "no finite-dimensional realization under exact arithmetic" % label,
                                         bound=label)
    if degenerate.any():
        pair = tuple(int(i) for i in np.argwhere(degenerate)[0])
        logging.warning("BellBound: %s is unbounded, denominator vanishes for setting pair %s" % (label, pair))
        return math.inf, pair
    best, best_pair = -1., None
    n = denominators.shape[0]
    for i in range(n):
        for j in range(n):
            value = 1. / denominators[i, j]
            if value > best:
                best, best_pair = value, (i, j)
    return best, best_pair


def bell_bound_eq1_with_argmax(r):
    return _bound_from_denominators(setting_pair_denominators(r.probs), "eq1")


def bell_bound_eq2_with_argmax(r):
    return _bound_from_denominators(setting_pair_denominators(swap_parties(r).probs), "eq2")


def bell_bound_eq1(r):
    """max_{y,y'} ( sum_{b,b'} min_x ( sum_a sqrt(r(a,b|x,y)) sqrt(r(a,b'|x,y')) )^2 )^-1

    Lower bound on both local dimensions. Returns math.inf if the denominator vanishes for some (y, y'), raises
    DegenerateDenominatorError if it vanishes for all of them.
    """
    return bell_bound_eq1_with_argmax(r)[0]


def bell_bound_eq2(r):
    """Same as bell_bound_eq1 with the roles of (a, x) and (b, y) exchanged."""
    return bell_bound_eq2_with_argmax(r)[0]


class BellBoundReport(object):

    def __init__(self, bound_eq1, bound_eq2, argmax_eq1, argmax_eq2):
        self.bound_eq1 = bound_eq1
        self.bound_eq2 = bound_eq2
        self.best = max(bound_eq1, bound_eq2)
        self.best_integer = ceil_with_slack(self.best)
        # eq1 maximizes over Bob's (y, y'), eq2 over Alice's (x, x')
        if bound_eq1 >= bound_eq2:
            self.winner, self.argmax_settings = "eq1", argmax_eq1
        else:
            self.winner, self.argmax_settings = "eq2", argmax_eq2

    @property
    def unbounded(self):
        return math.isinf(self.best)

    def to_dict(self):
        return {"bound_eq1": self.bound_eq1, "bound_eq2": self.bound_eq2, "best": self.best,
                "best_integer": self.best_integer, "winner": self.winner,
                "argmax_settings": list(self.argmax_settings),
                "note": "both bounds hold for either local dimension"}

    def __repr__(self):
        return "BellBoundReport(eq1=%r, eq2=%r)" % (self.bound_eq1, self.bound_eq2)


def bell_bound(r):
    """Evaluates both Bell-scenario bounds and packages them together with the maximizing setting pair."""
    eq1, pair1 = bell_bound_eq1_with_argmax(r)
    eq2, pair2 = bell_bound_eq2_with_argmax(r)
    return BellBoundReport(eq1, eq2, pair1, pair2)
