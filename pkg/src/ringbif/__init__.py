"""Bifurcation structure of ring (polygonal) relative equilibria.

Library + CLI for the linearized dynamics around the regular n-gon with a
central mass: trigonometric lattice sums, symmetry-adapted block
diagonalization of the quadratic pencil, planar/spatial bifurcation loci,
resonance certification, spectral stability, and the charged-ring analogue.
"""

__version__ = "0.1.0"
