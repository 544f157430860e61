"""Gröbner bases, Hilbert functions and minimal free resolutions."""
