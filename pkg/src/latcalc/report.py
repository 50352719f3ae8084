"""Line-oriented report records.

One record per line, tab-separated: operation, verdict, witness, seed.
Report bodies are deterministic functions of the inputs and seed; timing is
never written into them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = ["ReportEntry", "render_tsv", "write_report"]

PASS = "PASS"
FAIL = "FAIL"
EXPECTED_FAIL_PASS = "expected-fail: PASS"


@dataclass(frozen=True)
class ReportEntry:
    operation: str
    verdict: str  # PASS / FAIL / "expected-fail: PASS" / a value string
    witness: str = ""
    seed: int = 0

    @property
    def unexpected_failure(self) -> bool:
        return self.verdict == FAIL

    def line(self) -> str:
        clean = lambda s: str(s).replace("\t", " ").replace("\n", " ")
        return "\t".join(
            [clean(self.operation), clean(self.verdict), clean(self.witness), str(self.seed)]
        )


def render_tsv(entries: Iterable[ReportEntry]) -> str:
    return "".join(entry.line() + "\n" for entry in entries)


def write_report(path: str, entries: Sequence[ReportEntry]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_tsv(entries))
