"""Exact combinatorics of continuous type-A clusters: interval modules, arc
diagrams, polygon and infinity-gon models, embeddings, and continuous
mutation."""

__version__ = "0.1.0"
