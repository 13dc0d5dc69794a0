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

import math

import numpy as np
from scipy.special import entr

from dimcert.bounds.bell_bounds import ceil_with_slack
from dimcert.bounds.pm_bound import pm_bound
from dimcert.correlations.generators import gen_rac, bit
from dimcert.defaults import CEIL_SLACK, ZERO_PRODUCT_THRESHOLD
from dimcert.exceptions import NotBinaryError, WrongScenarioError, OutOfRangeError

WITNESS_KINDS = ("compressibility", "quadratic", "det_w2", "psd_rank_lb", "nayak")


class WitnessReport(object):

    def __init__(self, witness_kind, value, implied_dimension_lb, triggered, details=None):
        assert witness_kind in WITNESS_KINDS, "unknown witness kind %r" % witness_kind
        assert implied_dimension_lb is None or implied_dimension_lb >= 1
        self.witness_kind = witness_kind
        self.value = value
        self.implied_dimension_lb = implied_dimension_lb
        self.triggered = triggered
        self.details = details if details is not None else {}

    def to_dict(self):
        return {"witness_kind": self.witness_kind, "value": self.value,
                "implied_dimension_lb": self.implied_dimension_lb, "triggered": self.triggered,
                "details": self.details}

    def __repr__(self):
        return "WitnessReport(%s, value=%r, triggered=%r)" % (self.witness_kind, self.value, self.triggered)


def separating_measurements(p, threshold=ZERO_PRODUCT_THRESHOLD):
    """sep[x, x', y] is True if p(.|x,y) and p(.|x',y) have disjoint supports."""
    products = p.probs[:, None] * p.probs[None, :]  # [x][x'][y][b]
    return (products <= threshold).all(axis=3)


def check_incompressible(p, threshold=ZERO_PRODUCT_THRESHOLD):
    """Sufficient condition for D(p) = N: every pair of preparations is perfectly distinguished by some measurement."""
    n = p.n_preparations
    sep = separating_measurements(p, threshold).any(axis=2)
    offdiag = ~np.eye(n, dtype=bool)
    unseparated = [[int(x), int(z)] for x, z in np.argwhere(~sep & offdiag) if x < z]
    triggered = len(unseparated) == 0
    return WitnessReport("compressibility", None, n if triggered else None, triggered,
                         {"unseparated_pairs": unseparated})


def quadratic_witness(p, d=2):
    """sum_{x,x'} max_y |p(1|x,y) - p(1|x',y)|^2 <= (1 - 1/d) N^2 for every d-dimensional realization.

    Binary outcomes only. triggered means dimension d is ruled out; the implied bound is the smallest d' that is not.
    """
    if p.n_outcomes != 2:
        raise NotBinaryError("the quadratic witness needs K = 2 outcomes, got K = %d" % p.n_outcomes,
                             n_outcomes=p.n_outcomes)
    if d < 1:
        raise OutOfRangeError("d must be >= 1, got %r" % d, field="d")
    n = p.n_preparations
    p1 = p.probs[:, :, 1]
    value = float((np.abs(p1[:, None, :] - p1[None, :, :]) ** 2).max(axis=2).sum())
    triggered = value > (1. - 1. / d) * n ** 2 + CEIL_SLACK
    # value <= N(N-1) since the diagonal vanishes, so the denominator stays >= N
    implied = min(n, ceil_with_slack(n ** 2 / (n ** 2 - value)))
    return WitnessReport("quadratic", value, implied, bool(triggered),
                         {"d": d, "threshold": (1. - 1. / d) * n ** 2})


def w2_matrix(p):
    """rows are measurements, columns the preparation pairs (0, 1) and (2, 3) of p(0|x,y) differences"""
    q0 = p.probs[:, :, 0]
    return np.array([[q0[0, y] - q0[1, y], q0[2, y] - q0[3, y]] for y in range(2)])


def det_w2_witness(p):
    """Determinant witness for N = 4, M = 2, K = 2. |det W2| = 2 forces all entries to be +-1, which in turn makes p
    incompressible, so D(p) = 4."""
    if p.shape != (4, 2, 2):
        raise WrongScenarioError("det W2 needs (N, M, K) = (4, 2, 2), got %s" % (p.shape,), shape=list(p.shape))
    w2 = w2_matrix(p)
    value = float(np.linalg.det(w2))
    triggered = abs(abs(value) - 2.) <= CEIL_SLACK
    if triggered:
        assert np.allclose(np.abs(w2), 1., atol=1e-6), "det(W2) = 2 with entries %s" % w2
        assert check_incompressible(p).triggered, "det(W2) = 2 but p is compressible"
    return WitnessReport("det_w2", value, 4 if triggered else None, bool(triggered), {"w2": w2})


def stacked_outcome_matrix(p):
    """The KM x N matrix with rows (y, b) and entries p(b|x,y). D(p) is at least its PSD-rank."""
    n, m, k = p.shape
    return np.transpose(p.probs, (1, 2, 0)).reshape(m * k, n)


def psd_rank_lower_bound(p):
    """max_y sum_b max_x p(b|x,y), the PSD-rank bound applied to each measurement separately. Never exceeds K."""
    per_measurement = p.probs.max(axis=0).sum(axis=1)
    value = float(per_measurement.max())
    assert value <= p.n_outcomes + 1e-12
    details = {"per_measurement": per_measurement, "argmax_y": int(per_measurement.argmax())}
    if p.n_measurements == 1:
        details["note"] = "with a single measurement D(p) equals the PSD-rank of the N x K matrix p(b|x)"
    lb = ceil_with_slack(value)
    return WitnessReport("psd_rank_lb", value, lb, lb > 1, details)


def binary_entropy(beta):
    return float((entr(beta) + entr(1. - beta)) / math.log(2.))


def nayak_bound(beta, m):
    """ceil(2^((1 - H(beta)) m)): dimension needed by any m-bit random access code with success probability beta."""
    if not 0.5 <= beta <= 1.:
        raise OutOfRangeError("beta must lie in [1/2, 1], got %r" % beta, field="beta")
    if int(m) != m or m < 1:
        raise OutOfRangeError("m must be a positive integer, got %r" % m, field="m")
    return ceil_with_slack(2. ** ((1. - binary_entropy(beta)) * m))


def rac_worst_case_beta(p):
    """Smallest probability of decoding bit y of x correctly, for data shaped like an m-bit random access code."""
    n, m, k = p.shape
    if k != 2 or n != 2 ** m:
        raise WrongScenarioError("expected N = 2^M preparations and K = 2, got %s" % (p.shape,))
    correct = [p.probs[x, y, bit(x, y, m)] for x in range(n) for y in range(m)]
    return float(min(correct))


def nayak_witness(p):
    """Nayak's bound evaluated at the worst case success probability of RAC-shaped data."""
    beta = rac_worst_case_beta(p)
    m = p.n_measurements
    if beta < 0.5:
        return WitnessReport("nayak", beta, 1, False, {"m": m, "note": "worst case success below 1/2"})
    lb = nayak_bound(beta, m)
    return WitnessReport("nayak", beta, lb, lb > 1, {"m": m, "entropy": binary_entropy(beta)})


def compare_rac_bounds(m, betas):
    """For each beta: the fidelity bound with uniform q on gen_rac(m, beta) against Nayak's bound.

    Returns a list of dicts with keys beta, eq3_raw, eq3_lb, nayak_lb, winner ('eq3', 'nayak' or 'tie').
    """
    rows = []
    for beta in betas:
        report = pm_bound(gen_rac(m, beta))
        nayak = nayak_bound(beta, m)
        if report.dimension_lb > nayak:
            winner = "eq3"
        elif report.dimension_lb < nayak:
            winner = "nayak"
        else:
            winner = "tie"
        rows.append({"beta": float(beta), "eq3_raw": report.raw_bound, "eq3_lb": report.dimension_lb,
                     "nayak_lb": nayak, "winner": winner})
    return rows


def beta_grid(beta_min, beta_max, step):
    """beta_min, beta_min + step, ... up to beta_max inclusive, without accumulating rounding errors"""
    if step <= 0:
        raise OutOfRangeError("step must be positive, got %r" % step, field="step")
    if beta_max < beta_min:
        raise OutOfRangeError("beta_max < beta_min", field="beta_max")
    count = int(math.floor((beta_max - beta_min) / step + 1e-9)) + 1
    return [round(beta_min + i * step, 12) for i in range(count)]


def winning_intervals(rows, winner):
    """Maximal runs of consecutive scan rows won by winner, as [first beta, last beta] pairs."""
    intervals = []
    start = prev = None
    for row in rows:
        if row["winner"] == winner:
            if start is None:
                start = row["beta"]
            prev = row["beta"]
        elif start is not None:
            intervals.append([start, prev])
            start = None
    if start is not None:
        intervals.append([start, prev])
    return intervals
