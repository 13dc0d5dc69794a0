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

class SingleThreadedRunner(object):
    """
    Runs the tasks in the calling process. Same interface and result order as MultiThreadedRunner, use it for
    debugging or when only one thread is requested.
    Args:
        task_loader (SlimTaskLoaderBase): hands out (index, task) pairs

        worker_fn (callable): function task -> result
    """
    def __init__(self, task_loader, worker_fn):
        self.task_loader = task_loader
        self.worker_fn = worker_fn
        self.task_loader.number_of_threads_in_multithreaded = 1
        self.task_loader.set_thread_id(0)

    def __iter__(self):
        for _, task in self.task_loader:
            yield self.worker_fn(task)

    def run(self):
        return list(self)
