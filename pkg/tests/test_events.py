from unruh_gas.simulation import Event, EventQueue, RECHECK


def test_pops_in_time_order():
  queue = EventQueue()
  for time, i in ((3.0, 0), (1.0, 1), (2.0, 2)):
    queue.push(time, i, RECHECK, 0)
  assert len(queue) == 3
  assert [queue.pop().i for _ in range(3)] == [1, 2, 0]
  assert queue.isempty()

def test_ties_break_by_push_order():
  queue = EventQueue()
  queue.push(1.0, 5, 6, 0, 0)
  queue.push(1.0, 2, 3, 0, 0)
  assert queue.pop().i == 5
  assert queue.pop().i == 2

def test_event_fields():
  queue = EventQueue()
  queue.push(0.5, 1, RECHECK, 7)
  event = queue.top()
  assert isinstance(event, Event)
  assert (event.time, event.i, event.j, event.version_i, event.version_j) == (0.5, 1, -1, 7, -1)

def test_stale_events_are_skipped():
  versions = [0, 0]
  is_valid = lambda e: versions[e.i] == e.version_i
  queue = EventQueue()
  queue.push(1.0, 0, RECHECK, 0)
  queue.push(2.0, 1, RECHECK, 0)
  versions[0] = 1

  queue.discard_stale(is_valid)
  assert queue.top().i == 1
  assert queue.pop_valid(is_valid).i == 1
  assert queue.pop_valid(is_valid) is None

def test_compact_keeps_valid_events():
  queue = EventQueue()
  for i in range(10):
    queue.push(float(10 - i), i, RECHECK, i % 2)
  queue.compact(lambda e: e.version_i == 0)
  assert len(queue) == 5
  assert [queue.pop().i for _ in range(5)] == [8, 6, 4, 2, 0]
  assert list(EventQueue()) == []
