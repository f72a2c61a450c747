import pytest

from harmdenom import _pykernels

try:
    from harmdenom import _kernels
except ImportError:  # extension not built
    _kernels = None

BACKENDS = {"python": _pykernels}
if _kernels is not None:
    BACKENDS["cython"] = _kernels


@pytest.fixture(params=sorted(BACKENDS))
def kern(request):
    return BACKENDS[request.param]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        item.config._criteria.append((number, title, report.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not config._criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(config._criteria):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title}")
