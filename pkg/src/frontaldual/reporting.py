"""Verification report records shared by the checkers and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"


@dataclass
class Report:
    """Outcome of one named check.

    ``residuals`` holds canonical polynomial strings (or formatted numbers)
    witnessing failures; ``branches`` records case-split structure for the
    exhaustive checks; ``data`` carries check-specific extras such as maximum
    residuals and their locations.
    """

    check_name: str
    status: str
    residuals: list[str] = field(default_factory=list)
    branches: list[dict[str, Any]] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_name": self.check_name,
            "status": self.status,
            "residuals": list(self.residuals),
            "branches": [dict(b) for b in self.branches],
            "data": dict(self.data),
        }

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)


def combined_status(reports: list[Report]) -> str:
    return PASS if all(r.passed for r in reports) else FAIL
