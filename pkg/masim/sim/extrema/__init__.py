from .peak_detector import (
    DistanceRecord,
    distances_of,
    feed,
    feed_chunk,
    is_peak,
    PeakDetectorState,
)
