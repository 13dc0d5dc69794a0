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

import logging
import traceback
from multiprocessing import Event, Process, Queue
from queue import Empty, Full

END = "end"


def producer(queue, task_loader, worker_fn, thread_id, abort_event):
    try:
        task_loader.set_thread_id(thread_id)
        item = None

        while True:
            # check if abort event was set
            if not abort_event.is_set():

                if item is None:
                    try:
                        index, task = next(task_loader)
                        item = (index, worker_fn(task))
                    except StopIteration:
                        item = END

                try:
                    queue.put(item, timeout=0.2)
                    if item is END:
                        break
                    item = None
                except Full:
                    # queue was full because items in it were not consumed. Try again.
                    pass
            else:
                break

    except KeyboardInterrupt:
        abort_event.set()
        raise KeyboardInterrupt

    except Exception:
        logging.error("MultiThreadedRunner: exception in worker %d\n%s" % (thread_id, traceback.format_exc()))
        abort_event.set()


class MultiThreadedRunner(object):
    """ Runs independent tasks in background processes and returns their results in task order.

    Every worker holds a copy of the task loader and picks the tasks that belong to its thread id (see
    StridedTaskLoader). Each worker has its own queue and the queues are read one after the other, so the order of the
    results and hence every reduction done on them does not depend on the number of processes.

    Args:
        task_loader (SlimTaskLoaderBase): hands out (index, task) pairs

        worker_fn (callable): picklable function task -> result

        num_processes (int): number of processes. Capped at the number of tasks

        num_cached_per_queue (int): number of results cached per process
    """
    def __init__(self, task_loader, worker_fn, num_processes, num_cached_per_queue=2):
        assert num_processes >= 1, "need at least one process"
        self.task_loader = task_loader
        self.worker_fn = worker_fn
        self.num_tasks = len(task_loader)
        self.num_processes = max(1, min(num_processes, self.num_tasks))
        self.task_loader.number_of_threads_in_multithreaded = self.num_processes
        self.num_cached_per_queue = num_cached_per_queue
        self._queues = []
        self._processes = []
        self.abort_event = Event()

    def __iter__(self):
        if self.num_tasks == 0:
            return
        self._start()
        try:
            for j in range(self.num_tasks):
                item = self.__get_next_item(j % self.num_processes)
                index, result = item
                assert index == j, "MultiThreadedRunner: results out of order (%d != %d)" % (index, j)
                yield result
            for i in range(self.num_processes):
                assert self.__get_next_item(i) == END
            self._join()
        finally:
            self._finish()

    def run(self):
        return list(self)

    def __get_next_item(self, queue_idx):
        while True:
            if self.abort_event.is_set():
                self._finish()
                raise RuntimeError("MultiThreadedRunner.abort_event was set, something went wrong. Maybe one of "
                                   "your workers crashed")
            try:
                return self._queues[queue_idx].get(timeout=0.2)
            except Empty:
                pass

    def _start(self):
        if len(self._processes) == 0:
            self.abort_event.clear()
            logging.debug("MultiThreadedRunner: starting %d workers for %d tasks" % (self.num_processes,
                                                                                    self.num_tasks))
            for i in range(self.num_processes):
                self._queues.append(Queue(self.num_cached_per_queue))
                self._processes.append(Process(target=producer, args=(self._queues[i], self.task_loader,
                                                                      self.worker_fn, i, self.abort_event)))
                self._processes[-1].daemon = True
                self._processes[-1].start()
        else:
            logging.debug("MultiThreadedRunner Warning: start() has been called but workers are already running")

    def _join(self):
        for p in self._processes:
            p.join(timeout=5)

    def _finish(self):
        if len(self._processes) != 0:
            for i, p in enumerate(self._processes):
                if p.is_alive():
                    p.terminate()
                self._queues[i].close()
                self._queues[i].join_thread()
            logging.debug("MultiThreadedRunner: workers terminated")
            self._queues = []
            self._processes = []

    def __del__(self):
        self._finish()
