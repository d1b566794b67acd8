import re

_NOTES = {}
_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def acceptance_note(criterion: int, text: str) -> None:
    """Stash a measured-value summary for the terminal report."""
    _NOTES[int(criterion)] = text


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m and getattr(rep, "when", "call") == "call":
                outcomes[int(m.group(1))] = status
    if not outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(outcomes):
        word = "PASS" if outcomes[num] == "passed" else "FAIL"
        note = _NOTES.get(num, "")
        terminalreporter.write_line(f"criterion {num:2d}: {word}  {note}".rstrip())
