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

from dimcert.correlations.model import validate_pm, as_simplex_weights
from dimcert.exceptions import OutOfRangeError, ShapeMismatchError
from dimcert.realization.realization import Realization

MAX_BITS = 20


def bit(x, y, m):
    """y-th bit of the m-bit string x, y = 0 is the most significant bit."""
    return (x >> (m - 1 - y)) & 1


def _bit_table(m):
    xs = np.arange(2 ** m)
    return np.stack([(xs >> (m - 1 - y)) & 1 for y in range(m)], axis=1)  # [x][y]


def _check_m(m):
    if int(m) != m or not 1 <= m <= MAX_BITS:
        raise OutOfRangeError("number of bits must be in [1, %d], got %r" % (MAX_BITS, m), field="m")
    return int(m)


def _check_beta(beta, name="beta"):
    if not 0.5 <= beta <= 1.:
        raise OutOfRangeError("%s must lie in [1/2, 1], got %r" % (name, beta), field=name)
    return float(beta)


def gen_rac(m, beta):
    """Random access code statistics: N = 2^m bit strings, measurement y decodes bit y with success probability beta.

    p(b|x,y) = beta if b == x_y else 1 - beta
    """
    m = _check_m(m)
    beta = _check_beta(beta)
    bits = _bit_table(m)
    probs = np.empty((2 ** m, m, 2))
    probs[:, :, 0] = np.where(bits == 0, beta, 1. - beta)
    probs[:, :, 1] = np.where(bits == 1, beta, 1. - beta)
    return validate_pm(probs)


def gen_toy(m):
    """p(b|x,y) = delta(b, x_y): every bit can be read out perfectly. Incompressible, D(p) = 2^m."""
    return gen_rac(m, 1.)


def gen_degraded_rac(m, beta, n_degraded, degraded_beta):
    """RAC where the first n_degraded preparations decode each bit with degraded_beta only.

    Nayak's bound looks at the worst case success probability and collapses on such data while the fidelity bound
    still sees the good preparations.
    """
    base = gen_rac(m, beta)
    degraded_beta = _check_beta(degraded_beta, "degraded_beta")
    if not 0 <= n_degraded <= base.n_preparations:
        raise OutOfRangeError("n_degraded must be in [0, %d]" % base.n_preparations, field="n_degraded")
    probs = np.array(base.probs)
    bits = _bit_table(m)[:n_degraded]
    probs[:n_degraded, :, 0] = np.where(bits == 0, degraded_beta, 1. - degraded_beta)
    probs[:n_degraded, :, 1] = np.where(bits == 1, degraded_beta, 1. - degraded_beta)
    return validate_pm(probs)


def gen_nonconvexity_pair():
    """The two correlations p_1, p_2 whose even mixture leaves the qubit set.

    Preparations are bit pairs x = (x_1, x_2) stored at index 2 * x_1 + x_2, measurements y = 0, 1 stand for y = 1, 2
    and outcome 2 means "not certain":
        p_i(b|x, y) = delta(b, x_i) if y == i else delta(b, 2)
    """
    ret = []
    for i in range(2):
        probs = np.zeros((4, 2, 3))
        for x in range(4):
            for y in range(2):
                if y == i:
                    probs[x, y, bit(x, i, 2)] = 1.
                else:
                    probs[x, y, 2] = 1.
        ret.append(validate_pm(probs))
    return ret[0], ret[1]


def mix(ps, weights):
    """Entrywise convex combination sum_i weights[i] * ps[i]."""
    ps = list(ps)
    if not ps:
        raise ShapeMismatchError("nothing to mix")
    weights = as_simplex_weights(weights, len(ps))
    shape = ps[0].shape
    for p in ps[1:]:
        if p.shape != shape:
            raise ShapeMismatchError("cannot mix correlations of shapes %s and %s" % (shape, p.shape))
    probs = np.zeros(shape)
    for w, p in zip(weights.weights, ps):
        probs += w * p.probs
    return validate_pm(probs)


def classical_realization(p, dim=None):
    """The diagonal realization proving D(p) <= N.

    rho_x = |x><x| and Pi_b^y = sum_z p(b|z,y) |z><z|. With dim > N the extra basis vectors are assigned to outcome 0.
    """
    n, m, k = p.shape
    dim = n if dim is None else dim
    if dim < n:
        raise ShapeMismatchError("the classical realization needs dim >= N = %d, got %d" % (n, dim))
    states = np.zeros((n, dim, dim), dtype=complex)
    states[np.arange(n), np.arange(n), np.arange(n)] = 1.
    povms = np.zeros((m, k, dim, dim), dtype=complex)
    for y in range(m):
        for b in range(k):
            diag = np.zeros(dim)
            diag[:n] = p.probs[:, y, b]
            if b == 0:
                diag[n:] = 1.
            povms[y, b] = np.diag(diag)
    return Realization(states, povms)
