"""Windowed Kramers-Kronig dispersion relations and Lifshitz pressures for metals."""

__version__ = "0.1.0"
