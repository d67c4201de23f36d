import pytest

from carlitz.fields import FieldConfig


@pytest.fixture(scope="session")
def cfg3():
    """Desk default: q = 3, residue field F_3, theta = -pi^-2."""
    return FieldConfig(3, ram=2, default_prec=120)


@pytest.fixture(scope="session")
def cfg2():
    return FieldConfig(2, ram=1, default_prec=80)


@pytest.fixture(scope="session")
def cfg4():
    """q = 4 = 2^2, residue field F_4."""
    return FieldConfig(2, m=2, ram=3, default_prec=80)


@pytest.fixture(scope="session")
def cfg9():
    """q = 3 with residue extension F_9."""
    return FieldConfig(3, e=2, ram=2, default_prec=80)


@pytest.fixture(scope="session")
def cfg_ram6():
    """q = 3 at ramification q(q-1), where sigma(zeta) exists."""
    return FieldConfig(3, ram=6, default_prec=120)
