import pytest

from ibpsc import scheme
from ibpsc.backend import DrbgSource

SUITE_SEED = b"ibpsc-test-suite"


@pytest.fixture(scope="session")
def params_master():
    # one authority for the whole run; setup costs a pairing and two mults
    return scheme.setup("bls12-381", DrbgSource(SUITE_SEED))


@pytest.fixture(scope="session")
def params(params_master):
    return params_master[0]


@pytest.fixture(scope="session")
def master(params_master):
    return params_master[1]


@pytest.fixture(scope="session")
def alice(params, master):
    return scheme.keygen(params, master, b"alice")


@pytest.fixture(scope="session")
def bob(params, master):
    return scheme.keygen(params, master, b"bob")
