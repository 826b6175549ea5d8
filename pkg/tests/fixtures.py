import numpy as np
import pytest

from nativeternary.data.model_shapes import get_bitnet_manifest
from nativeternary.schemas import LayerSpec, ModelManifest, SchemeConfig, TensorSpec
from nativeternary.services.codec import TernaryCodec
from nativeternary.utils.dataclasses_utils import Event
from tests.utils import SINGLE_CONFIGS


@pytest.fixture(name="scheme_config", params=SINGLE_CONFIGS, ids=lambda c: c.describe())
def fixture_scheme_config(request):
    """
    Fixture that runs a test once per single-delimiter configuration
    (four delimiters, two mappings).

    Returns:
        SchemeConfig: One configuration per parameter.
    """

    return request.param


@pytest.fixture(name="table_events")
def fixture_table_events():
    """
    Fixture for the event sequence [-1, 0, +1, boundary 2].

    Returns:
        list[Event]: The events.
    """

    return [Event.data(-1), Event.data(0), Event.data(1), Event.boundary(2)]


@pytest.fixture(name="bitnet_manifest", scope="session")
def fixture_bitnet_manifest():
    """
    Fixture for the 24-block, 170-tensor layout with one weight per tensor.

    Returns:
        ModelManifest: The manifest.
    """

    return get_bitnet_manifest()


@pytest.fixture(name="toy_manifest")
def fixture_toy_manifest():
    """
    Fixture for a small three-layer model.

    Returns:
        ModelManifest: The manifest.
    """

    return ModelManifest(
        layers=[
            LayerSpec(
                name="embed",
                tensors=[TensorSpec(name="weight", elements=6, shape=[2, 3])],
            ),
            LayerSpec(
                name="block",
                tensors=[
                    TensorSpec(name="q", elements=4),
                    TensorSpec(name="k", elements=5),
                ],
            ),
            LayerSpec(name="head", tensors=[TensorSpec(name="out", elements=3)]),
        ]
    )


@pytest.fixture(name="toy_weights")
def fixture_toy_weights(toy_manifest: ModelManifest, rng: np.random.Generator):
    """
    Fixture for balanced random weights matching the toy manifest.

    Returns:
        np.ndarray: The weights.
    """

    return rng.integers(-1, 2, size=toy_manifest.weight_count)


@pytest.fixture(name="unsigned_codec")
def fixture_unsigned_codec():
    """
    Fixture for delimiter 11 with the unsigned mapping.

    Returns:
        TernaryCodec: The codec.
    """

    return TernaryCodec(SchemeConfig.from_options(mapping="unsigned"))
