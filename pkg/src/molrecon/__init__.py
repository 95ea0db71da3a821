"""molrecon: molecular graph reconstruction from chemical depiction detections.

Subpackages:
    chemgraph   molecular graph model, valence rules, canonical labels, molfile/SMILES I/O
    mcs         maximum common edge subgraph search and consistency index
    depict      annotated depiction rendering, 2D layout, super-group collapse
    detect      detection data model: oracle, perturbation, ingestion, dedupe
    labelparse  text-label grammar and super-group fragment table/expansion
    construct   distance-based graph construction from detections
    evalbench   benchmark datasets, metrics, and report emission
    service     review session HTTP API
    cli         command-line entry points
"""

__version__ = "0.1.0"
