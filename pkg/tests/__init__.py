"""Tests for the logtan verification suite.

Unit tests cover the exact kernel, the Gröbner engine and each checker;
tests marked ``integration`` run the selftest battery end to end.
"""
