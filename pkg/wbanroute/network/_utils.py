from typing import Optional


class ParseError(Exception):
    """Raised when a scenario document cannot be parsed. Carries
    the offending line number and field name when known."""

    def __init__(
        self, message: str, line: Optional[int] = None, field: Optional[str] = None
    ) -> None:
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field {field!r}")
        prefix = f"[{', '.join(location)}] " if location else ""
        super().__init__(prefix + message)


class ValidationError(Exception):
    """Raised when a scenario violates one of its invariants"""

    def __init__(self, message: str, field: Optional[str] = None) -> None:
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class TopologyUnreachable(Exception):
    """Raised when no placement connects every sensor to a sink
    within the retry bound: the range is too small for the density"""

    pass


class ScenarioWarning(UserWarning):
    """Issued for a valid scenario whose settings distort the model"""

    pass
