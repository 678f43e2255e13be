import os

import pytest
from hypothesis import HealthCheck, settings
from sympy.combinatorics import Permutation, PermutationGroup

from semiab import zoo

DATA = os.path.join(os.path.dirname(__file__), "data")

settings.register_profile("semiab", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("semiab")

SMALL = zoo.known_names(16)
SMALL_ABELIAN = [n for n in SMALL if zoo.group(n).is_abelian]


def data(name):
    return os.path.join(DATA, name)


def regular(G):
    """sympy permutation group of left translations; element g is the
    permutation sending 0 to g."""
    if G.order == 1:
        return PermutationGroup([Permutation([0])])
    return PermutationGroup([Permutation(list(map(int, G.table[g])))
                             for g in G.generators])


def ids(perm_group):
    return sorted(int(p(0)) for p in perm_group.generate())


@pytest.fixture
def Z(request):
    return zoo.group


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
