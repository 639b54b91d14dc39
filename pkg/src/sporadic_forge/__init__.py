"""
Sporadic Forge

Desk-scale verification toolkit for the construction of the sporadic groups
Co2 and Fi22 from extensions of M22 and Aut(M22).
"""

__version__ = "0.1.0"
