def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[num])
    missing = [n for n in range(1, 14) if n not in RESULTS]
    if missing:
        terminalreporter.write_line(f"criteria not run: {missing}")
