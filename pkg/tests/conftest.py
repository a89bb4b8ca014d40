import importlib

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")


def naive_reduce(letters, out=None):
    """Stack reduction over plain lists; the ground truth for everything else."""
    out = [] if out is None else out
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def naive_inverse(letters):
    return [-x for x in reversed(letters)]


def naive_power(letters, n):
    base = letters if n >= 0 else naive_inverse(letters)
    out = []
    for _ in range(abs(n)):
        naive_reduce(base, out)
    return out


def naive_substitute(letters, images):
    inverses = [naive_inverse(img) for img in images]
    out = []
    for x in letters:
        naive_reduce(images[x - 1] if x > 0 else inverses[-x - 1], out)
    return out


def ivanov_letters():
    """Raw letters of the 8-block formula, spelled out without the word engine."""
    c = [1, 2, -1, -2]
    raw = []
    for e, x in ((100, 1), (200, 1), (300, -1), (400, -1), (500, 2), (600, 2), (700, -2), (800, -2)):
        raw += c * e + [x]
    return raw


@pytest.fixture(params=["python", "cython"])
def kernel(request):
    if request.param == "python":
        return importlib.import_module("mrq._purekernels")
    try:
        return importlib.import_module("mrq._speedups")
    except ImportError:
        pytest.skip("compiled extension not built")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
