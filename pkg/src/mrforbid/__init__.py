"""Minimum rank of graphs over small prime fields and the F_4(GF(2)) forbidden-subgraph catalog."""

__version__ = "0.1.0"

ENGINE_VERSION = "mrforbid-0.1.0"
