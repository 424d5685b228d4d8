from .cluster import cluster_eigenvalues, multiplicities
from .json_dumps import json_dumps

__all__ = ["cluster_eigenvalues", "json_dumps", "multiplicities"]
