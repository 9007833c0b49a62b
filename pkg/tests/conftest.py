"""Prints a one-line verdict per acceptance criterion after the run."""

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for status in ("passed", "skipped", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            match = _CRITERION.search(getattr(rep, "nodeid", ""))
            if not match:
                continue
            num = int(match.group(1))
            if status == "passed":
                results[num] = "PASS"
            elif status == "skipped":
                reason = ""
                if isinstance(getattr(rep, "longrepr", None), tuple):
                    reason = rep.longrepr[2]
                results[num] = ("SKIPPED-DATA" if "SKIPPED-DATA" in reason
                                else "SKIPPED")
            else:
                results[num] = "FAIL"
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(f"[criterion {num}] {results[num]}")
