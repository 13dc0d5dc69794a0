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

from dimcert.correlations.io import parse_json, read_source, write_target
from dimcert.defaults import REALIZATION_TOL
from dimcert.exceptions import InvalidRealizationError, ShapeMismatchError, ParseError
from dimcert.serialization import dumps


class Realization(object):
    """Explicit states rho_x and POVMs Pi_b^y on C^d.

    states has shape (N, d, d), povms has shape (M, K, d, d), both complex. The induced correlation is
    p(b|x,y) = Tr(rho_x Pi_b^y).
    """

    def __init__(self, states, povms):
        states = np.array(states, dtype=complex)
        povms = np.array(povms, dtype=complex)
        if states.ndim != 3 or states.shape[1] != states.shape[2]:
            raise ShapeMismatchError("states must have shape (N, d, d), got %s" % (states.shape,))
        if povms.ndim != 4 or povms.shape[2:] != states.shape[1:]:
            raise ShapeMismatchError("povms must have shape (M, K, d, d) matching the states, got %s" %
                                     (povms.shape,))
        states.flags.writeable = False
        povms.flags.writeable = False
        self.states = states
        self.povms = povms

    @property
    def dim(self):
        return self.states.shape[1]

    @property
    def shape(self):
        """(N, M, K) of the induced correlation"""
        return self.states.shape[0], self.povms.shape[0], self.povms.shape[1]

    def induced_correlation(self):
        return np.einsum('xij,ybji->xyb', self.states, self.povms).real

    def invariant_violations(self, tol=REALIZATION_TOL):
        violated = []
        eye = np.eye(self.dim)
        for x, rho in enumerate(self.states):
            if np.abs(rho - rho.conj().T).max() > tol:
                violated.append("state %d is not Hermitian" % x)
                continue
            if np.linalg.eigvalsh(rho).min() < -tol:
                violated.append("state %d is not positive semidefinite" % x)
            if abs(np.trace(rho) - 1.) > tol:
                violated.append("state %d does not have unit trace" % x)
        for y, povm in enumerate(self.povms):
            for b, effect in enumerate(povm):
                if np.abs(effect - effect.conj().T).max() > tol:
                    violated.append("effect (y=%d, b=%d) is not Hermitian" % (y, b))
                elif np.linalg.eigvalsh(effect).min() < -tol:
                    violated.append("effect (y=%d, b=%d) is not positive semidefinite" % (y, b))
            if np.abs(povm.sum(axis=0) - eye).max() > tol:
                violated.append("measurement %d does not sum to the identity" % y)
        return violated

    def to_dict(self):
        return {"type": "realization", "dim": self.dim,
                "states": [_interleave(s) for s in self.states],
                "povms": [[_interleave(e) for e in povm] for povm in self.povms]}

    def __repr__(self):
        return "Realization(d=%d, N=%d, M=%d, K=%d)" % ((self.dim,) + self.shape)


def _interleave(matrix):
    """complex matrix -> row-major rows of [re, im] pairs"""
    return [[[float(v.real), float(v.imag)] for v in row] for row in matrix]


def _deinterleave(rows, field):
    arr = np.array(rows, dtype=float)
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise ParseError("complex entries must be [re, im] pairs", field=field)
    return arr[..., 0] + 1j * arr[..., 1]


def realization_from_dict(doc):
    if not isinstance(doc, dict) or doc.get("type", "realization") != "realization":
        raise ParseError("not a realization document", field="type")
    for name in ("states", "povms"):
        if name not in doc:
            raise ParseError("missing field", field=name)
    try:
        states = _deinterleave(doc["states"], "states")
        povms = _deinterleave(doc["povms"], "povms")
    except (TypeError, ValueError):
        raise ParseError("malformed complex matrices")
    ret = Realization(states, povms)
    if "dim" in doc and doc["dim"] != ret.dim:
        raise ShapeMismatchError("declared dim %r does not match matrices of size %d" % (doc["dim"], ret.dim))
    return ret


def load_realization(source):
    return realization_from_dict(parse_json(read_source(source)))


def save_realization(realization, target):
    write_target(dumps(realization) + "\n", target)


def verify_realization(realization, p, tol=REALIZATION_TOL):
    """Returns max_{x,y,b} |Tr(rho_x Pi_b^y) - p(b|x,y)|.

    Raises InvalidRealizationError if the states or measurements violate their defining constraints within tol.
    """
    if realization.shape != p.shape:
        raise ShapeMismatchError("realization induces shape %s, correlation has %s" % (realization.shape, p.shape))
    violated = realization.invariant_violations(tol)
    if violated:
        raise InvalidRealizationError("realization violates %d invariants" % len(violated), violated=violated)
    return float(np.abs(realization.induced_correlation() - p.probs).max())
