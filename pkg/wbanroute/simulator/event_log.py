import json
from typing import Any, Dict, List, Optional

from wbanroute.utility.custom_types import NodeId


class EventLog:
    """Newline-delimited JSON records ``time, kind, node, seq,
    detail``. Nothing is kept unless a path is given or ``keep`` is
    set."""

    KEYS = ("time", "kind", "node", "seq", "detail")

    def __init__(self, path: Optional[str] = None, keep: bool = False) -> None:
        self.path = path
        self.enabled = bool(path) or keep
        self.records: List[Dict[str, Any]] = []

    def record(
        self,
        time: float,
        kind: str,
        node: Optional[NodeId] = None,
        seq: Optional[int] = None,
        detail: Optional[Dict[str, Any]] = None,
    ) -> None:
        if not self.enabled:
            return
        self.records.append(
            {"time": time, "kind": kind, "node": node, "seq": seq, "detail": detail or {}}
        )

    def of_kind(self, kind: str) -> List[Dict[str, Any]]:
        return [r for r in self.records if r["kind"] == kind]

    def to_text(self) -> str:
        return "".join(json.dumps(r) + "\n" for r in self.records)

    @staticmethod
    def parse(text: str) -> List[Dict[str, Any]]:
        return [json.loads(line) for line in text.splitlines() if line.strip()]

    def flush(self) -> None:
        if self.path:
            with open(self.path, "w") as outfile:
                outfile.write(self.to_text())
