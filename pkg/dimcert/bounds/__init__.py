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

from .bell_bounds import BellBoundReport, bell_bound, bell_bound_eq1, bell_bound_eq2
from .pm_bound import FidelityMatrix, PMBoundReport, fidelity_matrix, pm_bound, pm_to_bell
from .simplex_optimizer import StQPResult, optimize_q, optimize_q_exact, optimize_q_heuristic
from . import witnesses
