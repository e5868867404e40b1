from functools import lru_cache

import pytest

from quarticfd.domain import build_domain
from quarticfd.presets import get_preset
from quarticfd.units import unit_group


@lru_cache(maxsize=None)
def context(name):
    """(preset, field, lattice, unit group) for a preset, computed once per session."""
    p = get_preset(name)
    field, lat = p.field(), p.lattice()
    return p, field, lat, unit_group(lat, field)


@lru_cache(maxsize=None)
def domain(name):
    p, field, lat, units = context(name)
    return build_domain(field, lat, units, p.seed)


@pytest.fixture(scope="session")
def ctx():
    return context


@pytest.fixture(scope="session")
def dom():
    return domain


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
