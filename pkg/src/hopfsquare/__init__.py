"""Exact verification of cocommutative Hopf algebra crossed modules and crossed squares."""
