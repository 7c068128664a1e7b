import os
import time

import pytest

from orbitforge import gf2, oracle
from orbitforge import quadform as qf
from orbitforge.quadform import WittType


def pytest_collection_modifyitems(config, items):
    if os.environ.get("ORBITFORGE_LARGE") == "1":
        return
    skip = pytest.mark.skip(reason="set ORBITFORGE_LARGE=1 to run the o_8 criterion")
    for item in items:
        if "large" in item.keywords:
            item.add_marker(skip)


class TimedResult:
    def __init__(self, result, elapsed):
        self.result = result
        self.elapsed = elapsed
        self.report = result.report
        self.ok = result.ok
        self.diff = result.diff


_cache: dict = {}


def reconciled(q, n_dim, type_flag, flavor="O", large=False):
    """Session-cached oracle reconciliation for one space."""
    key = (q, n_dim, type_flag, flavor, large)
    if key not in _cache:
        wt = {"odd": WittType.ODD_DEFECTIVE, "+": WittType.PLUS, "-": WittType.MINUS}[type_flag]
        space = qf.standard_space(gf2.field_of_order(q), n_dim, wt)
        t0 = time.perf_counter()
        result = oracle.reconcile(space, flavor, large=large)
        _cache[key] = TimedResult(result, time.perf_counter() - t0)
    return _cache[key]


@pytest.fixture(scope="session")
def spaces():
    return reconciled
