"""Shared check-report plumbing for the verification suite."""

from dataclasses import dataclass

PASS = "PASS"
FAIL = "FAIL"
INFO = "INFO"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: str
    witness: str | None = None

    @property
    def ok(self):
        return self.status != FAIL


def check(check_id, ok, witness=None):
    return CheckResult(check_id, PASS if ok else FAIL, None if ok else witness)


def info(check_id, witness):
    return CheckResult(check_id, INFO, witness)


class VerifyReport:
    """Ordered collection of checks; every check id appears exactly once."""

    def __init__(self):
        self.results = []
        self._seen = set()

    def add(self, result):
        if result.check_id in self._seen:
            raise ValueError(f"duplicate check id {result.check_id}")
        self._seen.add(result.check_id)
        self.results.append(result)

    def extend(self, results):
        for r in results:
            self.add(r)

    @property
    def failures(self):
        return [r for r in self.results if r.status == FAIL]

    @property
    def all_ok(self):
        return not self.failures

    def summary(self):
        n_pass = sum(1 for r in self.results if r.status == PASS)
        n_fail = len(self.failures)
        n_info = sum(1 for r in self.results if r.status == INFO)
        return f"{n_pass} passed, {n_fail} failed, {n_info} informational"

    def lines(self):
        out = []
        for r in self.results:
            line = f"[{r.status}] {r.check_id}"
            if r.witness:
                line += f" -- {r.witness}"
            out.append(line)
        out.append(self.summary())
        return out
