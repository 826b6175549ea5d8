import numpy as np
import pytest

from nativeternary.config import settings
from nativeternary.schemas import SchemeConfig
from nativeternary.services.codec import TernaryCodec
from nativeternary.services.container import ContainerService


@pytest.fixture(name="rng")
def fixture_rng():
    """
    Fixture that provides a seeded random generator.

    Returns:
        np.random.Generator: A generator seeded from the settings.
    """

    return np.random.default_rng(settings.default_seed)


@pytest.fixture(name="default_config", scope="session")
def fixture_default_config():
    """
    Fixture for the primary scheme: delimiter 11, balanced mapping.

    Returns:
        SchemeConfig: The default configuration.
    """

    return SchemeConfig()


@pytest.fixture(name="codec")
def fixture_codec(default_config: SchemeConfig):
    """
    Fixture to provide a codec for the primary scheme.

    Returns:
        TernaryCodec: The codec.
    """

    return TernaryCodec(default_config)


@pytest.fixture(name="container")
def fixture_container():
    """
    Fixture to provide a container service.

    Returns:
        ContainerService: The service.
    """

    return ContainerService()


from .fixtures import *  # pylint: disable=wildcard-import,unused-wildcard-import,wrong-import-position
