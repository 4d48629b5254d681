import os

import pytest
from hypothesis import HealthCheck, settings

from crossmod.presentations import CORPUS, S3_PRESENTATION, enumerate_presentation

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow],
    derandomize=bool(os.environ.get("CROSSMOD_DERANDOMIZE")),
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def s3():
    """(presentation, group, word map) for the S3 presentation with named relators."""
    return enumerate_presentation(S3_PRESENTATION)


@pytest.fixture(scope="session")
def corpus():
    return {name: enumerate_presentation(text) for name, text in CORPUS.items()}


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    order = sorted(results, key=lambda k: (int(k.split()[0]), k))
    for key in order:
        ok, detail = results[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}")
