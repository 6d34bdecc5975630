import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

_CRITERIA: dict[int, tuple[str, str, str]] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        if report.outcome == "passed" and props.get("soft_ok") is False:
            status = "PASS (soft check missed)"
        _CRITERIA[props["criterion"]] = (status, props.get("title", ""), props.get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status, title, detail = _CRITERIA[num]
        line = f"criterion {num:2d} {status}: {title}"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture
def criterion(record_property):
    """Tag the running test as acceptance criterion ``num``; returns a detail recorder."""

    def tag(num: int, title: str):
        record_property("criterion", num)
        record_property("title", title)

        def note(**kv):
            for key, value in kv.items():
                if key == "soft_ok":
                    record_property("soft_ok", bool(value))
                else:
                    record_property("detail", value)

        return note

    return tag
