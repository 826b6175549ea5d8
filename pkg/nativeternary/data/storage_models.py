from nativeternary.config import Settings, settings
from nativeternary.schemas import StorageModel

NATIVETERNARY = "NativeTernary"
GGUF_Q2_K = "GGUF Q2_K"
GGUF_Q4_0 = "GGUF Q4_0"
GGUF_INT8 = "GGUF int8"

# scale label -> weight count, as compared in the published size table
MODEL_SCALES = {
    "Small": 1_000_000,
    "Medium": 125_000_000,
    "Large": 1_000_000_000,
}

# a 2B-parameter ternary decoder with 24 blocks and 170 tensors
REFERENCE_MODEL_WEIGHTS = 2_000_000_000
REFERENCE_BOUNDARY_RATIO = 460


def get_storage_models(app_settings: Settings = settings) -> list[StorageModel]:
    """
    Returns the storage formats compared against NativeTernary.

    NativeTernary comes first and carries no per-tensor header; its boundary
    bits are accounted separately from the manifest.

    Returns:
        list[StorageModel]: NativeTernary followed by the GGUF modes.
    """

    return [
        StorageModel(
            name=NATIVETERNARY,
            bits_per_weight=app_settings.nativeternary_bits_per_weight,
        ),
        StorageModel(
            name=GGUF_Q2_K,
            bits_per_weight=app_settings.gguf_q2k_bits_per_weight,
            per_tensor_header_bytes=app_settings.gguf_tensor_header_bytes,
        ),
        StorageModel(
            name=GGUF_Q4_0,
            bits_per_weight=app_settings.gguf_q4_0_bits_per_weight,
            per_tensor_header_bytes=app_settings.gguf_tensor_header_bytes,
        ),
        StorageModel(
            name=GGUF_INT8,
            bits_per_weight=app_settings.gguf_int8_bits_per_weight,
            per_tensor_header_bytes=app_settings.gguf_tensor_header_bytes,
        ),
    ]


def get_storage_model(name: str, app_settings: Settings = settings) -> StorageModel:
    """
    Looks up one storage model by name.

    Raises:
        KeyError: If no model has that name.
    """

    models = {model.name: model for model in get_storage_models(app_settings)}
    return models[name]


STORAGE_NOTES = {
    NATIVETERNARY: "Exact, zero waste",
    GGUF_Q2_K: "Best current quantization",
    GGUF_Q4_0: "Common default",
    GGUF_INT8: "Naive ternary storage",
}
