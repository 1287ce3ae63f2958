"""
Presentation of the rational cohomology ring of a divisorial toric arrangement, its NBC basis and normal forms, and
the integral variant of the presentation.
"""
from toricprobe.ospres.integral import ConjectureReport, IntegralDegree, integral_conjecture_check
from toricprobe.ospres.presentation import (GeneratorIndex, Presentation, PresentationElement, Relation, RelationTerm,
                                            build_presentation, circuit_relations, enumerate_generators,
                                            product_relations, restriction_relations)
from toricprobe.ospres.quotient import BasisElement, GradedQuotient, nbc_basis_and_dimensions, reduce_to_basis

__all__ = ['BasisElement', 'ConjectureReport', 'GeneratorIndex', 'GradedQuotient', 'IntegralDegree', 'Presentation',
           'PresentationElement', 'Relation', 'RelationTerm', 'build_presentation', 'circuit_relations',
           'enumerate_generators', 'integral_conjecture_check', 'nbc_basis_and_dimensions', 'product_relations',
           'reduce_to_basis', 'restriction_relations']
