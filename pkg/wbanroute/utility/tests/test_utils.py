import warnings

import pytest

from wbanroute.utility import (
    spawn_streams,
    parse_id_list,
    parse_float_list,
    clamp,
    KnownWarningSilencer,
    flatten_list_of_lists,
    RNG_STREAMS,
)


def test_spawn_streams_is_deterministic():
    first = spawn_streams(7)
    second = spawn_streams(7)
    assert set(first) == set(RNG_STREAMS)
    for name in RNG_STREAMS:
        assert first[name].random() == second[name].random()


def test_spawn_streams_are_independent():
    streams = spawn_streams(7)
    draws = {name: streams[name].random() for name in RNG_STREAMS}
    assert len(set(draws.values())) == len(RNG_STREAMS)


def test_parse_id_list():
    assert parse_id_list("1,2,3") == [1, 2, 3]
    assert parse_id_list("1-5") == [1, 2, 3, 4, 5]
    assert parse_id_list("1-3, 7") == [1, 2, 3, 7]
    assert parse_id_list("") == []
    with pytest.raises(ValueError):
        parse_id_list("5-1")
    with pytest.raises(ValueError):
        parse_id_list("a")


def test_parse_float_list():
    assert parse_float_list("1,2.5") == [1.0, 2.5]


def test_clamp():
    assert clamp(2.0, 0.0, 1.0) == 1.0
    assert clamp(-1.0, 0.0, 1.0) == 0.0
    assert clamp(0.3, 0.0, 1.0) == 0.3


def test_known_warning_silencer():
    with warnings.catch_warnings(record=True) as caught:
        with KnownWarningSilencer():
            warnings.warn("silenced")
    assert not caught


def test_known_warning_silencer_restores_filters():
    class Known(UserWarning):
        pass

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        before = list(warnings.filters)
        with KnownWarningSilencer(Known):
            warnings.warn("known", Known)
            with pytest.raises(UserWarning):
                warnings.warn("unrelated")
        assert list(warnings.filters) == before
        with pytest.raises(Known):
            warnings.warn("known again", Known)


def test_flatten_list_of_lists():
    assert flatten_list_of_lists([[1], [2, 3]]) == [1, 2, 3]
