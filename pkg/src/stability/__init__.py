"""Slope-stability criteria for logarithmic tangent sheaves of hypersurfaces."""
