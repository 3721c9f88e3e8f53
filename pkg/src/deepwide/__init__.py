"""Bounded width and depth: decompositions, Cops-and-Robber games, counting logic."""
