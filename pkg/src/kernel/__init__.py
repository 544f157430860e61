"""Polynomial kernel: coefficient fields, canonical polynomials and the text parser."""
