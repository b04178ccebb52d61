"""Desk-scale workbench for a two-agent referential game.

Two recurrent agents, one seeing a fruit and the other a pair of tools,
exchange single symbols until one of them picks a tool.  The package
provides data generation, policy-gradient training, a causal measure of
message influence, and probe classifiers over message sequences.
"""

from ._core import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
