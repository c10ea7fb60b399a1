"""Shared fixtures for the immersion-kit test suite."""

import random
from pathlib import Path
from typing import Callable, List

import pytest
import yaml

from immersion_kit.config import Settings
from immersion_kit.models.graph import MultiGraph
from immersion_kit.services.generators import random_connected_multigraph
from immersion_kit.services.relations import RelationsService


@pytest.fixture
def settings():
    """Create default settings."""
    return Settings()


@pytest.fixture(scope="session")
def golden_graphs():
    """Load the golden graph catalogue from YAML."""
    catalogue_path = Path(__file__).parent.parent / "data" / "golden_graphs.yaml"
    with open(catalogue_path, "r", encoding="utf-8") as f:
        entries = yaml.safe_load(f)["graphs"]
    for entry in entries:
        pairs = [tuple(pair) for pair in entry["edges"]]
        entry["graph"] = MultiGraph.from_edge_list(pairs, range(entry["vertices"]))
    return {entry["name"]: entry for entry in entries}


@pytest.fixture
def immersion_free_sampler() -> Callable[[int, int, int], List[MultiGraph]]:
    """Rejection sampler for {K5, K3,3}-immersion-free connected multigraphs."""
    relations = RelationsService(Settings())

    def sample(count: int, max_edges: int, seed: int) -> List[MultiGraph]:
        rng = random.Random(seed)
        graphs: List[MultiGraph] = []
        for _ in range(count * 20):
            if len(graphs) == count:
                break
            n = rng.randint(4, 8)
            m = rng.randint(n - 1, max_edges)
            graph = random_connected_multigraph(n, m, rng)
            if relations.is_kuratowski_immersion_free(graph).free:
                graphs.append(graph)
        assert len(graphs) == count, f"sampler found only {len(graphs)} graphs (seed {seed})"
        return graphs

    return sample
