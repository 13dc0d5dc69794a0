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

# Default numerical settings shared by the library functions and the command line.

# correlation validation
PROBABILITY_TOL = 1e-9

# slack used whenever a real-valued bound is rounded up to a dimension
CEIL_SLACK = 1e-9

# denominators below this are treated as zero
DEGENERATE_DENOMINATOR = 1e-15

# products of probabilities below this count as disjoint supports
ZERO_PRODUCT_THRESHOLD = 1e-12

# simplex optimizer
EXACT_MAX_N = 20
HEURISTIC_RESTARTS = 64
HEURISTIC_MAX_ITER = 100000
HEURISTIC_STEP_TOL = 1e-12
SIMPLEX_TOL = 1e-10

# realization search
SEARCH_RESTARTS = 64
SEARCH_TOL_TARGET = 1e-6
SEARCH_MAX_ITER = 20000
SEARCH_GRAD_TOL = 1e-10
POVM_REGULARIZATION = 1e-12
REALIZATION_TOL = 1e-10

SEED = 1
