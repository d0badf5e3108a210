"""Symbolic calculator for decomposition ranks of elementary groups."""
