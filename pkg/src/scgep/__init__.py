"""Supply-chain-constrained generation expansion planning toolkit."""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    Corridor,
    Topology,
    Technology,
    Component,
    Product,
    TechnologyCatalog,
    GeneratorAsset,
    TimeStructure,
    ScenarioData,
    SupplyChainData,
    PenaltyPrices,
    SystemModel,
    ValidationReport,
    validate,
    model_digest,
)
