"""Flat loci of the deformed even algebras: equations, tori, Theta and twisted algebras."""
from .equations import (
    GlobalVerdict, LocusComponent, TildeEquation, TriangleLabels, TriangleVerdict,
    check_global_membership, check_tilde_membership, constant_symbols, label_triangle,
    lemma_components, lemma_matrix, off_locus_point, perturbed_point, random_point,
    sample_point, sample_point_on, symbolic_containment, tilde_equations, tilde_values, values_to_point,
)
from .theta import (
    ThetaPoint, finite_triangles, same_z_orbit, sample_theta, theta_membership, theta_system,
    triangle_product, z_orbit_characters,
)
from .twisted import (
    Rewriter, TwistedAlgebra, build_twisted_algebra, eta, gram_matrix, spin_residuals,
    verify_spin_numeric,
)
