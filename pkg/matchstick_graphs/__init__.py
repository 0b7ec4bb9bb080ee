"""
Matchstick Graphs - construction scripts, solving and verification for
planar unit-distance drawings.
"""

__version__ = "0.1.0"
