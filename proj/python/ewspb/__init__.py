"""Scalable 3-D wavelet video codec bindings."""

try:
    from ewspb._ewspb import (  # noqa: F401
        Spec,
        decode_file,
        encode_file,
        forward,
        inverse,
        make_synthetic,
        psnr_files,
        weight_table,
        zerotree_ratios,
    )
except ImportError:  # build-tree layout: extension next to the package dir
    from _ewspb import (  # noqa: F401
        Spec,
        decode_file,
        encode_file,
        forward,
        inverse,
        make_synthetic,
        psnr_files,
        weight_table,
        zerotree_ratios,
    )

__all__ = [
    "Spec",
    "forward",
    "inverse",
    "weight_table",
    "zerotree_ratios",
    "encode_file",
    "decode_file",
    "psnr_files",
    "make_synthetic",
]
