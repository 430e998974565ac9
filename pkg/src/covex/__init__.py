"""Exact-arithmetic toolkit for covexillary Schubert varieties.

Subpackages cover partial-permutation combinatorics, exact linear algebra
over F_p and Q, membership predicates for flag/Grassmannian/matrix Schubert
varieties, the covexillary open embedding into a Grassmannian, conormal
variety predicates with independent fiber oracles, Kazhdan-Lusztig
polynomials, and equivariant multidegree checks.
"""

__version__ = "0.1.0"
