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

from dimcert.defaults import PROBABILITY_TOL
from dimcert.exceptions import NegativeProbabilityError, NormalizationError, ShapeMismatchError


def _frozen(arr):
    arr = np.array(arr, dtype=float, copy=True)
    arr.flags.writeable = False
    return arr


def _check_dims(dims, names):
    for d, name in zip(dims, names):
        if int(d) != d or d < 1:
            raise ShapeMismatchError("%s must be a positive integer, got %r" % (name, d), field=name)


def _clamp_and_check(probs, slice_axes, tol, index_names):
    """Clamps entries in [-tol, 0) to 0, then checks that every slice over slice_axes sums to one.

    Returns the clamped array. All violations are collected before raising.
    """
    negatives = np.argwhere(probs < -tol)
    if len(negatives) > 0:
        violations = [dict(list(zip(index_names, [int(i) for i in idx])) + [("value", float(probs[tuple(idx)]))])
                      for idx in negatives]
        raise NegativeProbabilityError("%d entries are negative beyond tolerance %g" % (len(violations), tol),
                                       violations=violations)
    probs = np.where(probs < 0, 0., probs)

    sums = probs.sum(axis=slice_axes)
    bad = np.argwhere(np.abs(sums - 1.) > tol)
    if len(bad) > 0:
        violations = [dict(list(zip(index_names, [int(i) for i in idx])) + [("sum", float(sums[tuple(idx)]))])
                      for idx in bad]
        raise NormalizationError("%d slices are not normalized within tolerance %g" % (len(violations), tol),
                                 violations=violations)
    return probs


class PMCorrelation(object):
    """Prepare-and-measure correlation p(b|x,y).

    probs is indexed [x][y][b]: preparation, measurement, outcome. Instances are immutable, the probability tensor is a
    read-only numpy array. Use validate_pm to build one from untrusted data.
    """

    def __init__(self, probs, labels=None, tol=PROBABILITY_TOL):
        self.probs = _frozen(probs)
        self.labels = dict(labels) if labels else None
        self.tol = tol

    @property
    def n_preparations(self):
        return self.probs.shape[0]

    @property
    def n_measurements(self):
        return self.probs.shape[1]

    @property
    def n_outcomes(self):
        return self.probs.shape[2]

    @property
    def shape(self):
        return self.probs.shape

    def __eq__(self, other):
        return isinstance(other, PMCorrelation) and self.shape == other.shape and np.array_equal(self.probs,
                                                                                                   other.probs)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return "PMCorrelation(N=%d, M=%d, K=%d)" % self.shape


class BellCorrelation(object):
    """Bipartite Bell correlation r(a,b|x,y), indexed [x][y][a][b]."""

    def __init__(self, probs, tol=PROBABILITY_TOL):
        self.probs = _frozen(probs)
        self.tol = tol

    @property
    def n_settings_a(self):
        return self.probs.shape[0]

    @property
    def n_settings_b(self):
        return self.probs.shape[1]

    @property
    def n_outcomes_a(self):
        return self.probs.shape[2]

    @property
    def n_outcomes_b(self):
        return self.probs.shape[3]

    @property
    def shape(self):
        return self.probs.shape

    def __eq__(self, other):
        return isinstance(other, BellCorrelation) and self.shape == other.shape and np.array_equal(self.probs,
                                                                                                     other.probs)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return "BellCorrelation(X=%d, Y=%d, A=%d, B=%d)" % self.shape


class SimplexWeights(object):
    """A probability vector q over the preparations."""

    def __init__(self, weights, tol=PROBABILITY_TOL):
        weights = np.array(weights, dtype=float).ravel()
        if weights.size == 0 or not np.all(np.isfinite(weights)):
            raise ShapeMismatchError("weights must be a non-empty finite vector")
        negatives = np.flatnonzero(weights < -tol)
        if len(negatives) > 0:
            raise NegativeProbabilityError("q has negative entries",
                                           violations=[{"x": int(i), "value": float(weights[i])} for i in negatives])
        weights = np.where(weights < 0, 0., weights)
        total = weights.sum()
        if abs(total - 1.) > tol:
            raise NormalizationError("q sums to %r" % float(total), violations=[{"sum": float(total)}])
        self.weights = _frozen(weights)

    @classmethod
    def uniform(cls, n):
        return cls(np.ones(n) / n)

    @classmethod
    def point_mass(cls, n, x):
        w = np.zeros(n)
        w[x] = 1.
        return cls(w)

    def __len__(self):
        return len(self.weights)

    def __eq__(self, other):
        return isinstance(other, SimplexWeights) and np.array_equal(self.weights, other.weights)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return "SimplexWeights(%s)" % np.array2string(self.weights, precision=6)

    def to_dict(self):
        return {"weights": self.weights}


def as_simplex_weights(q, n):
    """Accepts None (uniform), a SimplexWeights or anything array-like of length n."""
    if q is None:
        return SimplexWeights.uniform(n)
    if not isinstance(q, SimplexWeights):
        q = SimplexWeights(q)
    if len(q) != n:
        raise ShapeMismatchError("q has length %d but the correlation has %d preparations" % (len(q), n),
                                 expected=n, got=len(q))
    return q


def validate_pm(probs, dims=None, labels=None, tol=PROBABILITY_TOL):
    """Builds a PMCorrelation from a raw [x][y][b] tensor.

    :param probs: nested lists or array of shape (N, M, K)
    :param dims: optional (N, M, K) the tensor must match
    :param labels: optional dict with keys 'x', 'y', 'b' mapping to lists of strings
    :param tol: entries >= -tol are accepted (negatives are clamped to 0), slices must sum to one within tol
    """
    if dims is not None:
        _check_dims(dims, ("N", "M", "K"))
    if isinstance(probs, PMCorrelation):
        probs = probs.probs
    try:
        probs = np.array(probs, dtype=float)
    except (TypeError, ValueError):
        raise ShapeMismatchError("probability tensor is ragged or not numeric")
    if probs.ndim != 3 or 0 in probs.shape:
        raise ShapeMismatchError("PM tensor must be non-empty with 3 axes [x][y][b], got shape %s" % (probs.shape,),
                                 got=list(probs.shape))
    if dims is not None and tuple(int(d) for d in dims) != probs.shape:
        raise ShapeMismatchError("tensor shape %s does not match declared (N, M, K) = %s" %
                                 (probs.shape, tuple(dims)), expected=list(dims), got=list(probs.shape))
    if not np.all(np.isfinite(probs)):
        raise ShapeMismatchError("PM tensor contains non-finite entries")
    if labels:
        for key, size in zip(("x", "y", "b"), probs.shape):
            if key in labels and labels[key] is not None and len(labels[key]) != size:
                raise ShapeMismatchError("%d labels given for index %s of size %d" % (len(labels[key]), key, size),
                                         field="labels." + key)
    probs = _clamp_and_check(probs, (2,), tol, ("x", "y", "b"))
    return PMCorrelation(probs, labels=labels, tol=tol)


def validate_bell(probs, dims=None, tol=PROBABILITY_TOL):
    """Builds a BellCorrelation from a raw [x][y][a][b] tensor; every (x, y) joint distribution must sum to one."""
    if dims is not None:
        _check_dims(dims, ("XA", "YB", "A", "B"))
    if isinstance(probs, BellCorrelation):
        probs = probs.probs
    try:
        probs = np.array(probs, dtype=float)
    except (TypeError, ValueError):
        raise ShapeMismatchError("probability tensor is ragged or not numeric")
    if probs.ndim != 4 or 0 in probs.shape:
        raise ShapeMismatchError("Bell tensor must be non-empty with 4 axes [x][y][a][b], got shape %s" %
                                 (probs.shape,), got=list(probs.shape))
    if dims is not None and tuple(int(d) for d in dims) != probs.shape:
        raise ShapeMismatchError("tensor shape %s does not match declared (XA, YB, A, B) = %s" %
                                 (probs.shape, tuple(dims)), expected=list(dims), got=list(probs.shape))
    if not np.all(np.isfinite(probs)):
        raise ShapeMismatchError("Bell tensor contains non-finite entries")
    probs = _clamp_and_check(probs, (2, 3), tol, ("x", "y", "a", "b"))
    return BellCorrelation(probs, tol=tol)


def no_signaling_violations(r, tol=PROBABILITY_TOL):
    """Advisory check, the bounds do not need no-signaling.

    Returns a list of dicts describing every marginal that depends on the remote setting by more than tol.
    """
    probs = r.probs
    violations = []
    alice = probs.sum(axis=3)  # [x][y][a]
    bob = probs.sum(axis=2)  # [x][y][b]
    for x in range(probs.shape[0]):
        spread = alice[x].max(axis=0) - alice[x].min(axis=0)
        for a in np.flatnonzero(spread > tol):
            violations.append({"party": "A", "x": x, "a": int(a), "spread": float(spread[a])})
    for y in range(probs.shape[1]):
        spread = bob[:, y].max(axis=0) - bob[:, y].min(axis=0)
        for b in np.flatnonzero(spread > tol):
            violations.append({"party": "B", "y": y, "b": int(b), "spread": float(spread[b])})
    if violations:
        logging.warning("BellCorrelation: %d no-signaling violations (advisory only)" % len(violations))
    return violations
