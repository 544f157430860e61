"""Checks on generic and symmetric determinantal hypersurfaces.

- build: the determinant, its partials and minors
- betti: the Betti table of the Jacobian ideal
- semigeneric: certified sections M0 + x0*E_11 and their minors ideal
- lefschetz: Artinian reductions and multiplication maps
- fiber: the kernel-dimension stratification
- suite: every check for one (n, flavor)
"""
