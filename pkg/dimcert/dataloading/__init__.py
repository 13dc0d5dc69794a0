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

from .task_loader import SlimTaskLoaderBase, StridedTaskLoader
from .multi_threaded_runner import MultiThreadedRunner
from .single_threaded_runner import SingleThreadedRunner


def run_tasks(tasks, worker_fn, num_threads=1):
    """Applies worker_fn to every task, in parallel if num_threads > 1. Results come back in task order."""
    tasks = list(tasks)
    if num_threads is None or num_threads <= 1 or len(tasks) <= 1:
        return SingleThreadedRunner(StridedTaskLoader(tasks), worker_fn).run()
    return MultiThreadedRunner(StridedTaskLoader(tasks, num_threads), worker_fn, num_threads).run()
