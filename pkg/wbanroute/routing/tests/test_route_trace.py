import os

from wbanroute.routing import RouteTrace, RouteRecord


def test_trace_text_and_parse(tmp_path):
    path = os.path.join(str(tmp_path), "routes.txt")
    trace = RouteTrace(path)
    trace.record(0.0, 0, [0, 1, 4, 9], 3.0, "initial")
    trace.record(35.5, 0, [0, 1, 2, 3, 9], 4.25, "hotspot")
    trace.record(36.0, 5, [5, 6, 7, 8, 9], 4.0, "initial")
    trace.flush()
    with open(path) as infile:
        text = infile.read()
    assert text == trace.to_text()
    assert text.splitlines()[0] == "time|src|hops|cost|trigger"
    assert text.splitlines()[2] == "35.5|0|0-1-2-3-9|4.25|hotspot"
    records = RouteTrace.parse(text)
    assert records == trace.records
    assert [r.hops for r in trace.for_source(0)] == [(0, 1, 4, 9), (0, 1, 2, 3, 9)]


def test_record_line():
    record = RouteRecord.from_line("1.0|2|2-3|0.5|refresh\n")
    assert record == RouteRecord(1.0, 2, (2, 3), 0.5, "refresh")
