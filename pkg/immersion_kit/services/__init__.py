"""Services package for immersion-kit."""

from .branchwidth import BranchwidthService
from .confluence import ConfluenceService
from .connectivity import ConnectivityService
from .decomposer import DecomposerService
from .embedding import EmbeddingService
from .relations import RelationsService
from .search import SearchService

__all__ = [
    "BranchwidthService",
    "ConfluenceService",
    "ConnectivityService",
    "DecomposerService",
    "EmbeddingService",
    "RelationsService",
    "SearchService",
]
