"""Package facade re-exporting the public helpers."""
from .graph import bfs_order, dfs_order, shortest_paths, topological_sort
from .intervals import merge as merge_intervals
from .lru import LRUCache, cached
from . import events

__all__ = ["bfs_order", "dfs_order", "shortest_paths", "topological_sort", "merge_intervals", "LRUCache", "cached",
           "events"]
__version__ = "1.2.0"

del events
