import io
from typing import Optional

import numpy as np

from nativeternary.main import run
from nativeternary.schemas import LayerSpec, ModelManifest, SchemeConfig, TensorSpec
from nativeternary.utils.dataclasses_utils import DualSymbol, Event
from nativeternary.utils.enums import BitPair, Mapping, Namespace

SINGLE_CONFIGS = [
    SchemeConfig(delimiter=delimiter, mapping=mapping)
    for delimiter in BitPair.get_list()
    for mapping in Mapping.get_list()
]


def random_events(
    rng: np.random.Generator,
    config: SchemeConfig,
    max_events: int = 40,
    boundary_probability: float = 0.25,
    max_level: int = 5,
) -> list[Event]:
    """
    Builds a random event sequence with no two adjacent boundaries.

    Args:
        rng: Random generator.
        config: Supplies the trit domain.
        max_events: Upper bound on the sequence length.
        boundary_probability: Chance of a boundary where one is allowed.
        max_level: Largest boundary level.

    Returns:
        list[Event]: The events.
    """

    domain = config.mapping.domain
    events: list[Event] = []
    for _ in range(int(rng.integers(0, max_events + 1))):
        previous_boundary = bool(events) and events[-1].is_boundary
        if not previous_boundary and rng.random() < boundary_probability:
            events.append(Event.boundary(int(rng.integers(1, max_level + 1))))
        else:
            events.append(Event.data(int(domain[rng.integers(0, 3)])))
    return events


def random_symbols(rng: np.random.Generator, max_symbols: int = 12) -> list[DualSymbol]:
    return [
        DualSymbol(
            Namespace.A if rng.random() < 0.5 else Namespace.B,
            tuple(int(bit) for bit in rng.integers(0, 2, size=rng.integers(0, 9))),
        )
        for _ in range(int(rng.integers(0, max_symbols + 1)))
    ]


def random_manifest(rng: np.random.Generator, max_elements: int = 10_000) -> ModelManifest:
    """
    Builds a toy manifest with 1-8 layers of 1-10 tensors each.
    """

    return ModelManifest(
        layers=[
            LayerSpec(
                name=f"layer{layer}",
                tensors=[
                    TensorSpec(
                        name=f"t{tensor}",
                        elements=int(rng.integers(1, max_elements + 1)),
                    )
                    for tensor in range(int(rng.integers(1, 11)))
                ],
            )
            for layer in range(int(rng.integers(1, 9)))
        ]
    )


def run_cli(argv: list[str], stdin: bytes = b"") -> tuple[int, bytes, bytes]:
    """
    Runs the command line in process.

    Args:
        argv: Arguments without the program name.
        stdin: Bytes fed to standard input.

    Returns:
        tuple: Exit code, standard output and standard error.
    """

    stdout, stderr = io.BytesIO(), io.BytesIO()
    code = run(argv, io.BytesIO(stdin), stdout, stderr)
    return code, stdout.getvalue(), stderr.getvalue()


def pairs_of(data: bytes, pair_count: Optional[int] = None) -> list[str]:
    """
    Lists the pair labels of packed bytes, most significant pair first.
    """

    labels = [
        f"{byte >> shift & 0b11:02b}" for byte in data for shift in (6, 4, 2, 0)
    ]
    return labels if pair_count is None else labels[:pair_count]
