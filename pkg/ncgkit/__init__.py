"""
NCG Kit - Computational Noncommutative Geometry
Exact and certified computations on noncommutative tori, theta rings and spherical manifolds
"""

__version__ = "0.1.0"

__all__ = ['__version__']
