import numpy as np

PAIRS_PER_BYTE = 4
PAIR_SHIFTS = np.array([6, 4, 2, 0], dtype=np.uint8)


def required_bytes(pair_count: int) -> int:
    """
    Number of bytes needed to hold a pair count, including the padded tail.

    Args:
        pair_count: Number of 2-bit pairs.

    Returns:
        int: ceil(pair_count / 4).
    """

    return -(-pair_count // PAIRS_PER_BYTE)


def pack_pairs(pairs: np.ndarray) -> bytes:
    """
    Packs 2-bit pair values most-significant-first, four per byte.

    Pair index 0 lands in bits 7-6 of byte 0. A trailing partial byte is
    zero-padded.

    Args:
        pairs: Array of integers in [0, 3].

    Returns:
        bytes: The packed byte string.
    """

    pairs = np.asarray(pairs, dtype=np.uint8)
    padding = (-len(pairs)) % PAIRS_PER_BYTE

    if padding:
        pairs = np.concatenate([pairs, np.zeros(padding, dtype=np.uint8)])

    grouped = pairs.reshape(-1, PAIRS_PER_BYTE)
    packed = np.bitwise_or.reduce(grouped << PAIR_SHIFTS, axis=1)

    return packed.astype(np.uint8).tobytes()


def unpack_pairs(data: bytes, pair_count: int) -> np.ndarray:
    """
    Unpacks the first pair_count pairs of a packed byte string.

    Args:
        data: Packed bytes, most-significant pair first.
        pair_count: Number of pairs to return; padding beyond it is ignored.

    Returns:
        np.ndarray: uint8 array of pair values.
    """

    if pair_count == 0:
        return np.zeros(0, dtype=np.uint8)

    raw = np.frombuffer(data, dtype=np.uint8, count=required_bytes(pair_count))
    pairs = (raw[:, None] >> PAIR_SHIFTS) & 0b11

    return pairs.reshape(-1)[:pair_count]
