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

import numpy as np

from dimcert.correlations.model import PMCorrelation, BellCorrelation, SimplexWeights
from dimcert.exceptions import ShapeMismatchError


def _check_permutation(perm, size, what):
    perm = np.asarray(perm, dtype=int)
    if perm.shape != (size,) or not np.array_equal(np.sort(perm), np.arange(size)):
        raise ShapeMismatchError("%s must be a permutation of range(%d)" % (what, size))
    return perm


def swap_parties(r):
    """r'(b,a|y,x) = r(a,b|x,y)"""
    return BellCorrelation(np.transpose(r.probs, (1, 0, 3, 2)), tol=r.tol)


def relabel_bell_outcomes(r, perm, party="a"):
    """New outcome perm[i] of the chosen party carries the old outcome i, identically for every setting."""
    if party == "a":
        perm = _check_permutation(perm, r.n_outcomes_a, "outcome permutation")
        probs = np.empty_like(r.probs)
        probs[:, :, perm, :] = r.probs
    elif party == "b":
        perm = _check_permutation(perm, r.n_outcomes_b, "outcome permutation")
        probs = np.empty_like(r.probs)
        probs[:, :, :, perm] = r.probs
    else:
        raise ValueError("party must be 'a' or 'b', got %r" % party)
    return BellCorrelation(probs, tol=r.tol)


def relabel_pm_outcomes(p, perm, measurement=None):
    """Relabels outcomes of one measurement (or of all of them if measurement is None)."""
    perm = _check_permutation(perm, p.n_outcomes, "outcome permutation")
    probs = np.array(p.probs)
    ys = range(p.n_measurements) if measurement is None else [measurement]
    for y in ys:
        probs[:, y, perm] = p.probs[:, y, :]
    return PMCorrelation(probs, tol=p.tol)


def permute_preparations(p, perm, q=None):
    """Preparation perm[x] of the result is preparation x of p. q is permuted along if given."""
    perm = _check_permutation(perm, p.n_preparations, "preparation permutation")
    probs = np.empty_like(p.probs)
    probs[perm] = p.probs
    ret = PMCorrelation(probs, tol=p.tol)
    if q is None:
        return ret
    w = np.empty(len(q))
    w[perm] = q.weights
    return ret, SimplexWeights(w)


def delete_measurement(p, y):
    if p.n_measurements < 2:
        raise ShapeMismatchError("cannot delete the only measurement")
    if not 0 <= y < p.n_measurements:
        raise ShapeMismatchError("measurement %d does not exist" % y)
    return PMCorrelation(np.delete(p.probs, y, axis=1), tol=p.tol)
