"""Min-heap of collision events with lazy invalidation.

Events are never removed from the heap when they become stale. Each event
records the per-particle version counters at the time it was scheduled, and
is discarded when it reaches the top of the heap if any of them moved on.
"""

from collections import namedtuple
from heapq import heapify, heappush, heappop
import itertools


# j = -1 marks a re-prediction (recheck) event for particle i
Event = namedtuple('Event', ('time', 'seq', 'i', 'j', 'version_i', 'version_j'))

RECHECK = -1


class EventQueue():
  def __init__(self):
    self.data = []
    self._seq = itertools.count()

  def __len__(self):
    return len(self.data)

  def __iter__(self):
    for event in self.data:
      yield event

  def push(self, time, i, j, version_i, version_j=-1):
    # seq breaks ties between equal times deterministically
    heappush(self.data, Event(time, next(self._seq), i, j, version_i, version_j))

  def pop(self) -> Event:
    return heappop(self.data)

  def top(self) -> Event:
    return self.data[0]

  def isempty(self) -> bool:
    return len(self.data) == 0

  def discard_stale(self, is_valid):
    while self.data and not is_valid(self.data[0]):
      heappop(self.data)

  def pop_valid(self, is_valid):
    self.discard_stale(is_valid)
    if not self.data:
      return None
    return heappop(self.data)

  def compact(self, is_valid):
    self.data = [e for e in self.data if is_valid(e)]
    heapify(self.data)
