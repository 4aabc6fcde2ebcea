import contextlib

import numpy as np
import pytest

from bestprox import EuclideanSpace, Hyperplane, ProximalMap, pair_separation

_VERDICTS = []


class _Verdict:
    """Collects one PASS/FAIL line per acceptance criterion.

    ``with verdict("label") as check: check(ok, detail)``; an exception inside
    the block is recorded as FAIL before it propagates.
    """

    @contextlib.contextmanager
    def __call__(self, label):
        state = {}

        def check(ok, detail=""):
            state.update(ok=bool(ok), detail=detail)

        try:
            yield check
        except Exception as exc:
            _VERDICTS.append((label, False, f"raised {type(exc).__name__}: {exc}"))
            raise
        ok = state.get("ok", False)
        _VERDICTS.append((label, ok, state.get("detail", "")))
        print(f"{'PASS' if ok else 'FAIL'}  {label}  {state.get('detail', '')}")
        assert ok, f"{label}: {state.get('detail', '')}"


@pytest.fixture
def verdict():
    return _Verdict()


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _VERDICTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")


@pytest.fixture
def plane():
    return EuclideanSpace(2)


@pytest.fixture
def lines_pair(plane):
    """A: y = 0, B: y = 1."""
    return pair_separation(plane, Hyperplane([0, 1], 0), Hyperplane([0, 1], 1))


def halving_map(pair, k=0.5):
    """T(x, 0) = (x / 2, 1)."""
    return ProximalMap.affine(pair, np.array([[0.5, 0], [0, 0]]), np.array([0.0, 1.0]), k)


@pytest.fixture
def halving(lines_pair):
    return halving_map(lines_pair)
