import pytest

from algebra.catalog import catalog_names, catalog_semigroup
from algebra.rees import make_left_group, make_rectangular_band
from algebra.semigroup import cyclic_group, make_semigroup, monoid_completion


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def z3():
    return cyclic_group(3)


@pytest.fixture
def band2x2():
    return make_rectangular_band(2, 2)


@pytest.fixture
def left_group_z2():
    return make_left_group(cyclic_group(2), 2)


@pytest.fixture
def rees_normal():
    return catalog_semigroup("rees-z2-normal")


@pytest.fixture
def chain2():
    return catalog_semigroup("chain2")


@pytest.fixture
def non_associative_table():
    # (0*0)*0 = 1*0 = 1 but 0*(0*0) = 0*1 = 0
    return [[1, 0], [1, 1]]


@pytest.fixture
def left_zero_table():
    return make_semigroup([[0, 0], [1, 1]])


def small_catalog_monoids(max_order: int = 6):
    """(name, monoid completion) for every catalog entry within the order bound."""
    out = []
    for name in catalog_names():
        M = monoid_completion(catalog_semigroup(name))
        if M.order <= max_order:
            out.append((name, M))
    return out
