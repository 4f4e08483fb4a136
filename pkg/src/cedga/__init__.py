"""Chekanov-Eliashberg DGAs, A-infinity transfer and surface formality over exact fields."""

__version__ = "0.1.0"
