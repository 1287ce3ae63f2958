"""
Tests for the exterior algebra of the torus.
"""
from fractions import Fraction

import pytest

from toricprobe.exterior import ExteriorElement, sort_sign


def test_sort_sign():
    assert sort_sign(()) == 1
    assert sort_sign((0, 1, 2)) == 1
    assert sort_sign((1, 0)) == -1
    assert sort_sign((2, 0, 1)) == 1
    assert sort_sign((2, 1, 0)) == -1
    assert sort_sign((1, 1)) == 0


def test_monomial_sorts_with_sign():
    assert ExteriorElement.monomial((1, 0)) == ExteriorElement.monomial((0, 1), -1)
    assert ExteriorElement.monomial((0, 0)).is_zero()


def test_wedge_anticommutes():
    x0 = ExteriorElement.monomial((0,))
    x1 = ExteriorElement.monomial((1,))
    assert x0 * x1 == -(x1 * x0)
    assert (x0 * x0).is_zero()
    assert (x0 * x1).terms == {(0, 1): Fraction(1)}


def test_linear_and_substitute():
    chi = ExteriorElement.linear((1, 2))
    assert str(chi) == 'x0 + 2*x1'
    assert (chi * chi).is_zero()
    # x0 -> x0 + x1, x1 -> x1 keeps x0*x1
    images = [ExteriorElement.linear((1, 1)), ExteriorElement.linear((0, 1))]
    assert ExteriorElement.monomial((0, 1)).substitute(images) == ExteriorElement.monomial((0, 1))
    assert chi.substitute(images) == ExteriorElement.linear((1, 3))


def test_degree():
    mixed = ExteriorElement.one() + ExteriorElement.monomial((0,))
    with pytest.raises(ValueError):
        mixed.degree()
    assert ExteriorElement().degree() == 0
    assert ExteriorElement.linear((1, -1, 0)).degree() == 1


def test_rendering():
    element = ExteriorElement.one().scale(Fraction(1, 2)) - ExteriorElement.monomial((0, 2))
    assert str(element) == '1/2 - x0*x2'
    assert element.to_dict() == [{'monomial': [], 'coefficient': '1/2'},
                                 {'monomial': [0, 2], 'coefficient': '-1'}]
    assert str(ExteriorElement()) == '0'
    assert hash(element) == hash(ExteriorElement.monomial((2, 0)) + ExteriorElement.one().scale(Fraction(1, 2)))
