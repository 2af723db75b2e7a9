import pytest

from gqt.field import build_field
from gqt.kernel import enumerate_kernel
from gqt.linalg import standard_form


@pytest.fixture(scope="session")
def gf4():
    return build_field(2, 2)


@pytest.fixture(scope="session")
def gf9():
    return build_field(3, 2)


@pytest.fixture(scope="session")
def form4_dim2(gf4):
    return standard_form(gf4, 2)


@pytest.fixture(scope="session")
def form4_dim4(gf4):
    return standard_form(gf4, 4)


@pytest.fixture(scope="session")
def form9_dim4(gf9):
    return standard_form(gf9, 4)


@pytest.fixture(scope="session")
def kernel_q2(form4_dim4):
    return enumerate_kernel(form4_dim4)


@pytest.fixture(scope="session")
def kernel_q3(form9_dim4):
    return enumerate_kernel(form9_dim4)
