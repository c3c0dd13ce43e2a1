from .cluster import (
    ClusterResult, RawHourlySeries, cluster_representative_days, default_seed,
)
from .loader import (
    DatasetManifest, DatasetValidationError, LoadError, load_dataset,
    load_manifest,
)
from .transform import (
    BASELINE, LIMITED_SC, SCENARIOS, WITHOUT_SC, apply_scenario,
    scale_material_supply,
)

__all__ = [
    "ClusterResult", "RawHourlySeries", "cluster_representative_days",
    "default_seed",
    "DatasetManifest", "DatasetValidationError", "LoadError", "load_dataset",
    "load_manifest",
    "BASELINE", "LIMITED_SC", "SCENARIOS", "WITHOUT_SC", "apply_scenario",
    "scale_material_supply",
]
