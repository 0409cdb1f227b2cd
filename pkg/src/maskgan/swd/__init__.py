from .pyramid import PyramidLevel, collapse_pyramid, laplacian_pyramid
from .patches import PatchDescriptorSet, extract_patches, normalize_descriptors
from .distance import projection_directions, sliced_wasserstein
from .report import SWDReport, array_source, shard_source, swd_report

__all__ = [
    "PyramidLevel",
    "collapse_pyramid",
    "laplacian_pyramid",
    "PatchDescriptorSet",
    "extract_patches",
    "normalize_descriptors",
    "projection_directions",
    "sliced_wasserstein",
    "SWDReport",
    "array_source",
    "shard_source",
    "swd_report",
]
