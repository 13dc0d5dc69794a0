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


from dimcert.bounds.pm_bound import pm_to_bell
from dimcert.correlations.manipulations import swap_parties, relabel_bell_outcomes, relabel_pm_outcomes, \
    permute_preparations, delete_measurement
from dimcert.correlations.model import as_simplex_weights
from dimcert.transforms.abstract_transforms import AbstractTransform


class PMToBellTransform(AbstractTransform):
    """Replaces data_dict[pm_key] (with weights data_dict[q_key], uniform if absent) by the Bell correlation
    r(x, b|0, y) = q_x p(b|x, y), stored under output_key.

    Args:
        keep_pm (bool): if False the PM correlation is removed from the dict
    """

    def __init__(self, pm_key="pm", q_key="q", output_key="bell", keep_pm=True):
        self.pm_key = pm_key
        self.q_key = q_key
        self.output_key = output_key
        self.keep_pm = keep_pm

    def __call__(self, **data_dict):
        p = data_dict[self.pm_key]
        q = as_simplex_weights(data_dict.get(self.q_key), p.n_preparations)
        data_dict[self.output_key] = pm_to_bell(p, q)
        data_dict[self.q_key] = q
        if not self.keep_pm:
            del data_dict[self.pm_key]
        return data_dict


class SwapPartiesTransform(AbstractTransform):
    def __init__(self, bell_key="bell"):
        self.bell_key = bell_key

    def __call__(self, **data_dict):
        data_dict[self.bell_key] = swap_parties(data_dict[self.bell_key])
        return data_dict


class RelabelOutcomesTransform(AbstractTransform):
    """Permutes outcome labels.

    Acts on the PM correlation under data_dict['pm'] (party=None, optionally a single measurement) or on one party
    ('a' or 'b') of the Bell correlation under data_dict['bell'].
    """

    def __init__(self, perm, party=None, measurement=None, pm_key="pm", bell_key="bell"):
        self.perm = perm
        self.party = party
        self.measurement = measurement
        self.pm_key = pm_key
        self.bell_key = bell_key

    def __call__(self, **data_dict):
        if self.party is None:
            data_dict[self.pm_key] = relabel_pm_outcomes(data_dict[self.pm_key], self.perm, self.measurement)
        else:
            data_dict[self.bell_key] = relabel_bell_outcomes(data_dict[self.bell_key], self.perm, self.party)
        return data_dict


class PermutePreparationsTransform(AbstractTransform):
    """Permutes the preparations of the PM correlation and, if present, the weights q with them."""

    def __init__(self, perm, pm_key="pm", q_key="q"):
        self.perm = perm
        self.pm_key = pm_key
        self.q_key = q_key

    def __call__(self, **data_dict):
        q = data_dict.get(self.q_key)
        if q is None:
            data_dict[self.pm_key] = permute_preparations(data_dict[self.pm_key], self.perm)
        else:
            p = data_dict[self.pm_key]
            data_dict[self.pm_key], data_dict[self.q_key] = permute_preparations(
                p, self.perm, as_simplex_weights(q, p.n_preparations))
        return data_dict


class DeleteMeasurementTransform(AbstractTransform):
    def __init__(self, y, pm_key="pm"):
        self.y = y
        self.pm_key = pm_key

    def __call__(self, **data_dict):
        data_dict[self.pm_key] = delete_measurement(data_dict[self.pm_key], self.y)
        return data_dict
