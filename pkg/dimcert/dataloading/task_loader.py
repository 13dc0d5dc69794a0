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

from abc import ABCMeta, abstractmethod


class SlimTaskLoaderBase(metaclass=ABCMeta):

    def __init__(self, tasks, number_of_threads_in_multithreaded=1):
        """
        Hands out (index, task) pairs to a worker. Derive from this class and override generate_next_task().

        Each worker of MultiThreadedRunner holds its own copy of the loader and knows its thread_id, use that to make
        sure every task is handed out exactly once across all workers.

        :param tasks: list of picklable task payloads, stored in self._data
        :param number_of_threads_in_multithreaded: number of workers that share the task list
        """
        self._data = list(tasks)
        self.number_of_threads_in_multithreaded = number_of_threads_in_multithreaded
        self.thread_id = 0

    def set_thread_id(self, thread_id):
        self.thread_id = thread_id

    def __len__(self):
        return len(self._data)

    def __iter__(self):
        return self

    def __next__(self):
        return self.generate_next_task()

    @abstractmethod
    def generate_next_task(self):
        '''override this
        Return the next (index, task) pair for this worker or raise StopIteration
        '''
        pass


class StridedTaskLoader(SlimTaskLoaderBase):
    """Worker thread_id gets tasks thread_id, thread_id + T, thread_id + 2T, ... where T is the number of workers.

    Reading the per-worker result queues round robin therefore returns results in task order, whatever T is.
    """

    def __init__(self, tasks, number_of_threads_in_multithreaded=1):
        super(StridedTaskLoader, self).__init__(tasks, number_of_threads_in_multithreaded)
        self.current_position = None

    def reset(self):
        self.current_position = self.thread_id

    def generate_next_task(self):
        if self.current_position is None:
            self.reset()
        idx = self.current_position
        if idx < len(self._data):
            self.current_position = idx + self.number_of_threads_in_multithreaded
            return idx, self._data[idx]
        self.current_position = None
        raise StopIteration
