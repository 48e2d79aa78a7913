from .events import Event, EventQueue
from .event_log import EventLog
from .run_result import RunResult
from .simulator import Simulator, InvariantViolation, run

__all__ = [
    "Event",
    "EventQueue",
    "EventLog",
    "RunResult",
    "Simulator",
    "InvariantViolation",
    "run",
]
