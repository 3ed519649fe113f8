"""Planar Tutte paths with certified bridge bounds, plus long cycles.

Layers, bottom up: ``planar_core`` (rotation embeddings and structure),
``circuit`` (validated outer cycles, arcs, twists), ``tutte_path`` (the
constructive solver and its certificates), ``circumference`` (long cycles
in essentially 4-connected plane graphs), ``labkit`` (corpus, file
formats, oracles, independent verification) and ``cli``.
"""

__version__ = "0.1.0"
