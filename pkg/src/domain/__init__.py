"""Potentials, eigensolver, matrix model, symmetrization and root finding."""
