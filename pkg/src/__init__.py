# qlat
"""Quasi-treillis finis: operations ensemblistes, ideaux, congruences et balayage des theoremes."""

__version__ = "0.1.0"
