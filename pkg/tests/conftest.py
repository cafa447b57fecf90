GATE_LINES = []


def record_gate_line(line):
    GATE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # surface the acceptance gate verdicts even under captured output
    if GATE_LINES:
        terminalreporter.section("acceptance gate")
        for line in GATE_LINES:
            terminalreporter.write_line(line)
