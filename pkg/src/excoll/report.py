"""Uniform result record for every exhaustive verifier in the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List


@dataclass
class LemmaReport:
    """Outcome of one finite exhaustive verification.

    ``counterexamples`` is empty exactly when the verified statement survived
    the whole search window; each entry is a JSON-serializable description of
    one violation.
    """

    lemma_id: str
    n: int
    window: str
    counterexamples: List[Any] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "n": self.n,
            "window": self.window,
            "passed": self.passed,
            "counterexamples": self.counterexamples,
            "elapsed": round(self.elapsed, 6),
        }

    def summary(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.counterexamples)})"
        return f"{self.lemma_id:>8}  n={self.n:<3} {status:<12} window={self.window}"
