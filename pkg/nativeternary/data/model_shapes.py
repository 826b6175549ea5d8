from nativeternary.schemas import LayerSpec, ModelManifest, TensorSpec

TRANSFORMER_BLOCK_TENSORS = (
    "attn_q",
    "attn_k",
    "attn_v",
    "attn_o",
    "ffn_gate",
    "ffn_up",
    "ffn_down",
)


def get_bitnet_manifest(
    layer_count: int = 24, elements_per_tensor: int = 1
) -> ModelManifest:
    """
    Returns the tensor layout of a BitNet b1.58 2B4T-style decoder.

    Every block holds the seven attention and feed-forward projections; the
    token embedding opens the first block and the output head closes the
    last, giving layer_count * 7 + 2 tensors (170 for 24 layers).

    Args:
        layer_count: Number of transformer blocks.
        elements_per_tensor: Element count given to every tensor; the real
            model's sizes do not change the boundary arithmetic.

    Returns:
        ModelManifest: The synthetic manifest.
    """

    layers = []
    for index in range(layer_count):
        names = list(TRANSFORMER_BLOCK_TENSORS)
        if index == 0:
            names.insert(0, "token_embd")
        if index == layer_count - 1:
            names.append("output")

        layers.append(
            LayerSpec(
                name=f"blk.{index}",
                tensors=[
                    TensorSpec(name=name, elements=elements_per_tensor)
                    for name in names
                ],
            )
        )

    return ModelManifest(layers=layers)
