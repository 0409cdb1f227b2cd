from .landmarks import (
    FACIAL_GROUPS,
    LANDMARK_COUNT,
    LandmarkSet,
    filter_outliers,
    landmarks_to_edge_map,
    line_pixels,
    load_landmark_file,
    parse_landmark_line,
)
from .synthetic import (
    APPEARANCE_COUNTS,
    MASK_CLASS_COUNT,
    PALETTE,
    make_synthetic_pair,
    palette_color_std,
)
from .boundary import boundary_overlap, region_outline, segment_foreground
from .shards import (
    DatasetShard,
    ShardManifest,
    batch_iterator,
    build_synthetic_shard,
    downsample_shard,
    load_shard,
    write_shard,
)

__all__ = [
    "FACIAL_GROUPS",
    "LANDMARK_COUNT",
    "LandmarkSet",
    "filter_outliers",
    "landmarks_to_edge_map",
    "line_pixels",
    "load_landmark_file",
    "parse_landmark_line",
    "APPEARANCE_COUNTS",
    "MASK_CLASS_COUNT",
    "PALETTE",
    "make_synthetic_pair",
    "palette_color_std",
    "boundary_overlap",
    "region_outline",
    "segment_foreground",
    "DatasetShard",
    "ShardManifest",
    "batch_iterator",
    "build_synthetic_shard",
    "downsample_shard",
    "load_shard",
    "write_shard",
]
