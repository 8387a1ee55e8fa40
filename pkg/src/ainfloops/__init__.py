"""Operads of trees, cosimplicial algebra and perturbed loop concatenation."""
from . import assoc, cofacial, cosimp, geom, lenop, surj, trees

__all__ = ["assoc", "cofacial", "cosimp", "geom", "lenop", "surj", "trees"]
__version__ = "0.1.0"
