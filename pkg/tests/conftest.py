import pytest

from seqcert import R_DEF, S_DEF, build_terms


@pytest.fixture(scope="session")
def r_store():
    # recurrence-built terms 0..1002; summation agreement is itself under test
    return build_terms(R_DEF, 1002)


@pytest.fixture(scope="session")
def s_store():
    return build_terms(S_DEF, 202)
