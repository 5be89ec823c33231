"""Exact invariants of suspension singularity links.

From the Newton pairs of an irreducible plane curve singularity f and an
integer n, the package computes the invariants of the link of f + z^n as
exact rationals: Alexander polynomials, Casson-Walker, the torsion at the
identity spin^c element, the modified Seiberg-Witten invariant, the Milnor
fiber signature, and the geometric genus, together with cross-checks that
every quantity agrees along two independent formula routes.
"""

__version__ = "0.1.0"
