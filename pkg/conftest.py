import os

os.environ["GV_LOG_LEVEL"] = "WARNING"
import pytest

from app.core.families import build_family
from app.core.lie_core import Family, FamilySpec, LieAlgebraData
from app.core.split_basis import SplitBasisData
from app.utils.settings import Settings

Built = tuple[LieAlgebraData, SplitBasisData]


@pytest.fixture(scope="session")
def settings() -> Settings:
    return Settings(_env_file=None)  # type: ignore[call-arg]


@pytest.fixture(scope="session")
def sl2() -> Built:
    return build_family(FamilySpec(Family.SL_PROJ, 1))


@pytest.fixture(scope="session")
def sl3() -> Built:
    return build_family(FamilySpec(Family.SL_PROJ, 2))


@pytest.fixture(scope="session")
def so2() -> Built:
    return build_family(FamilySpec(Family.SO_CONF, 2))


@pytest.fixture(scope="session")
def so3() -> Built:
    return build_family(FamilySpec(Family.SO_CONF, 3))


@pytest.fixture(scope="session")
def su1() -> Built:
    return build_family(FamilySpec(Family.SU_CR, 1))


@pytest.fixture(scope="session")
def sp0() -> Built:
    return build_family(FamilySpec(Family.SP, 0))


@pytest.fixture(scope="session")
def f4() -> Built:
    return build_family(FamilySpec(Family.F4))
