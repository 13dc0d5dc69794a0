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

from .model import PMCorrelation, BellCorrelation, SimplexWeights, validate_pm, validate_bell, \
    no_signaling_violations
from .io import load_pm, save_pm, load_bell, save_bell, load_correlation
from .manipulations import swap_parties, relabel_bell_outcomes, relabel_pm_outcomes, permute_preparations, \
    delete_measurement
