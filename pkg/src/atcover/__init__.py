"""Voltage covers of the Moebius-Kantor graph, their GF(2) 1-eigenspaces, and
arc-transitive groups with local actions A4(6), S4(6d), S4(6c)."""

__version__ = "0.1.0"
