"""Exact verification suite for logarithmic tangent sheaves."""
