import numpy as np
import pytest

from wbanroute.simulator import Event, EventLog, EventQueue
from wbanroute.utility import EventKind


def test_earliest_event_first():
    queue = EventQueue()
    queue.schedule(Event(5.0, EventKind.SIM_END))
    queue.schedule(Event(3.0, EventKind.HELLO_TICK))
    assert queue.next_event().time_s == 3.0
    assert queue.next_event().time_s == 5.0
    assert queue.next_event() is None
    assert queue.processed == 2


def test_equal_times_are_fifo():
    queue = EventQueue()
    first = queue.at(3.0, EventKind.THERMAL_TICK, "first")
    second = queue.at(3.0, EventKind.HELLO_TICK, "second")
    assert first.seq < second.seq
    assert queue.next_event().payload == "first"
    assert queue.next_event().payload == "second"


def test_scheduling_in_the_past_is_rejected():
    queue = EventQueue()
    queue.at(2.0, EventKind.TDMA_FRAME)
    queue.next_event()
    assert queue.now == 2.0
    queue.at(2.0, EventKind.TDMA_FRAME)
    with pytest.raises(ValueError):
        queue.at(1.5, EventKind.TDMA_FRAME)


def test_extraction_matches_a_sort_of_insertions():
    rng = np.random.default_rng(7)
    times = rng.integers(0, 1000, size=100_000).astype(float)
    queue = EventQueue()
    for index, time_s in enumerate(times):
        queue.at(float(time_s), EventKind.PACKET_ORIGIN, index)
    expected = sorted(range(len(times)), key=lambda i: (times[i], i))
    extracted = []
    while len(queue):
        extracted.append(queue.next_event().payload)
    assert extracted == expected


def test_event_log_round_trip(tmp_path):
    path = tmp_path / "events.jsonl"
    log = EventLog(str(path))
    log.record(0.5, "transmit", 3, 7, {"to": 4})
    log.record(0.6, "sleep", 4)
    log.flush()
    records = EventLog.parse(path.read_text())
    assert records == log.records
    assert list(records[0]) == ["time", "kind", "node", "seq", "detail"]
    assert records[1]["seq"] is None
    assert len(log.of_kind("sleep")) == 1


def test_disabled_event_log_keeps_nothing():
    log = EventLog()
    log.record(0.1, "transmit", 1, 1)
    assert log.records == []
