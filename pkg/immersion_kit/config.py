"""Configuration settings for immersion-kit."""

from typing import List
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings."""

    # Logging
    log_level: str = "INFO"
    log_json: bool = True

    # Scale guards (every guard can be overridden per call)
    isomorphism_max_vertices: int = 12
    immersion_max_host_edges: int = 60
    immersion_max_pattern_vertices: int = 6
    minor_max_host_vertices: int = 16
    lift_oracle_max_edges: int = 12
    branchwidth_exact_max_edges: int = 10
    search_max_vertices: int = 8

    # Search workers (joblib n_jobs)
    search_jobs: int = 1

    # Immersion routing
    greedy_routing_restarts: int = 3

    # Decomposition
    max_cut_size: int = 3
    leaf_branchwidth_bound: int = 10
    leaf_exact_max_edges: int = 12

    # Fuzzing
    default_seed: int = 0

    # HTTP surface
    allowed_origins: List[str] = ["http://localhost:3000", "http://localhost:8080"]

    class Config:
        env_file = ".env"
        case_sensitive = False


settings = Settings()
