import pytest
from hypothesis import HealthCheck, settings

from gradalg.field import field_for_group
from gradalg.groups import Subgroup, make_group, trivial_bicharacter, trivial_subgroup

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def z2():
    G = make_group([2])
    T = trivial_subgroup(G)
    return G, T, trivial_bicharacter(T), field_for_group(G)


@pytest.fixture
def klein():
    G = make_group([2, 2])
    return G, Subgroup(G, G.elements)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = next((m for name, m in list(sys.modules.items())
                if name.split(".")[-1] == "test_acceptance"), None)
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
