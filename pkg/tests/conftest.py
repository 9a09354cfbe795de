import numpy as np
import pytest

from vwdg.basis import make_basis
from vwdg.wavespeed import ElasticConstants


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def ec():
    return ElasticConstants(0.5, 1.5)


@pytest.fixture(params=[0, 1, 2, 3])
def basis(request):
    return make_basis(request.param)


ACCEPTANCE_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = {}


@pytest.fixture
def acceptance(request):
    """Record ``(criterion, ok, detail)`` outcomes for the terminal summary."""
    results = request.config.stash[ACCEPTANCE_KEY]

    def record(criterion, ok, detail):
        results.setdefault(criterion, []).append((bool(ok), detail))
        print(f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(ACCEPTANCE_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        failed = [d for ok, d in results[k] if not ok]
        if failed:
            terminalreporter.write_line(f"FAIL criterion {k}: {len(failed)}/{len(results[k])} checks failed; "
                                        + "; ".join(failed))
        else:
            terminalreporter.write_line(f"PASS criterion {k}: {len(results[k])} checks")
