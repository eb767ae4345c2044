"""Homology of bar subcomplexes of monomial algebras and operads."""
