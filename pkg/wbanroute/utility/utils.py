from typing import Dict, List, Optional, Sequence, Type
import warnings

import numpy as np


RNG_STREAMS = ("topology", "prr", "phase", "traffic", "link")


def spawn_streams(seed: int, names: Sequence[str] = RNG_STREAMS) -> Dict[str, np.random.Generator]:
    """Derive one independent random generator per concern from
    the master seed, so that changing one knob does not perturb the
    randomness of the others.

    Args:
        seed:
            the master seed of the run
        names:
            the names of the streams, in spawn order

    Returns:
        dict:
            stream name to ``numpy.random.Generator``
    """
    children = np.random.SeedSequence(seed).spawn(len(names))
    return {name: np.random.default_rng(child) for name, child in zip(names, children)}


def parse_id_list(text: str) -> List[int]:
    """Parse ``"1,2,3"`` or ``"1-5"`` (or a mix such as ``"1-3,7"``)
    into a list of integers, keeping the given order.

    Raises:
        ValueError: if a token is not an integer or a range
    """
    values: List[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "-" in token[1:]:
            first, last = token.split("-", 1)
            start, stop = int(first), int(last)
            if stop < start:
                raise ValueError(f"Empty range {token!r}")
            values.extend(range(start, stop + 1))
        else:
            values.append(int(token))
    return values


def parse_float_list(text: str) -> List[float]:
    """Parse a comma separated list of reals"""
    return [float(token) for token in text.split(",") if token.strip()]


def clamp(value: float, low: float, high: float) -> float:
    return max(low, min(high, value))


class KnownWarningSilencer:
    """Ignore the given warning categories within a ``with``
    statement, every warning when none is given. The filters in place
    before entering are restored on exit.

    Examples::

        with KnownWarningSilencer(ScenarioWarning):
            run(cfg)
    """

    def __init__(self, *categories: Type[Warning]) -> None:
        self.categories = categories or (Warning,)
        self._saved: Optional[warnings.catch_warnings] = None

    def __enter__(self) -> "KnownWarningSilencer":
        self._saved = warnings.catch_warnings()
        self._saved.__enter__()
        for category in self.categories:
            warnings.simplefilter("ignore", category)
        return self

    def __exit__(self, type, value, traceback) -> None:
        if self._saved is not None:
            self._saved.__exit__(type, value, traceback)
            self._saved = None


def flatten_list_of_lists(list_: list) -> list:
    """Flatten a list of lists
    Args:
        list_ (list):
            the list to flatten
    Returns:
        list:
            the flattened list
    """
    return [item for sublist in list_ for item in sublist]
