import pytest

_criteria = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion for the summary."""
    name = request.node.name
    _criteria[name] = "FAIL"

    def done(label, ok=True):
        _criteria.pop(name, None)
        _criteria[label] = "PASS" if ok else "FAIL"
        assert ok, label

    yield done


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in sorted(_criteria.items()):
        terminalreporter.write_line("%s  %s" % (outcome, label))
