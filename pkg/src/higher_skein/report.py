"""Pass/fail records shared by the verification batteries."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    failures: list = field(default_factory=list)
    details: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def fail(self, msg):
        self.failures.append(msg)

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status} {self.name}"]
        lines += [f"    {f}" for f in self.failures]
        return "\n".join(lines)
