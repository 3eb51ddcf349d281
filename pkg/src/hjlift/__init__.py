"""Hales-Jewett searches, bounded J-set witnesses and their lifts through
word homomorphisms, all emitting re-checkable certificates."""

__version__ = "0.1.0"
