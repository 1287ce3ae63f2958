"""
Exterior algebra over Q on anticommuting degree one symbols x_0..x_{n-1}: the rational cohomology of a torus.
"""
from fractions import Fraction
from typing import Dict, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]


def sort_sign(indices: Sequence[int]) -> int:
    """
    :return: The sign of the permutation sorting indices (0 when an index repeats).
    """
    if len(set(indices)) != len(indices):
        return 0
    inversions = sum(1 for i in range(len(indices)) for j in range(i + 1, len(indices)) if indices[i] > indices[j])
    return -1 if inversions % 2 else 1


class ExteriorElement:
    """
    A rational combination of square free monomials, each a sorted tuple of symbol indices.
    """

    __slots__ = ('terms',)

    def __init__(self, terms: Mapping[Monomial, Fraction] = None):
        self.terms: Dict[Monomial, Fraction] = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def one(cls) -> 'ExteriorElement':
        return cls({(): Fraction(1)})

    @classmethod
    def monomial(cls, indices: Sequence[int], coefficient=1) -> 'ExteriorElement':
        """
        The product x_{i_1} ... x_{i_k} in the given order, sorted with its sign.
        """
        sign = sort_sign(indices)
        return cls({tuple(sorted(indices)): Fraction(coefficient) * sign}) if sign else cls()

    @classmethod
    def linear(cls, coefficients: Sequence) -> 'ExteriorElement':
        """
        sum c_i x_i, e.g. the pullback chi*(omega) of a character chi.
        """
        return cls({(i,): Fraction(c) for i, c in enumerate(coefficients) if c})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {len(m) for m in self.terms}

    def degree(self) -> int:
        """
        :raises ValueError: When the element is not homogeneous.  Zero has degree 0.
        """
        degrees = self.degrees()
        if len(degrees) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return degrees.pop() if degrees else 0

    def __add__(self, other: 'ExteriorElement') -> 'ExteriorElement':
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ExteriorElement(out)

    def __sub__(self, other: 'ExteriorElement') -> 'ExteriorElement':
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor) -> 'ExteriorElement':
        factor = Fraction(factor)
        return ExteriorElement({m: c * factor for m, c in self.terms.items()})

    def wedge(self, other: 'ExteriorElement') -> 'ExteriorElement':
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign = sort_sign(m1 + m2)
                if sign:
                    key = tuple(sorted(m1 + m2))
                    out[key] = out.get(key, 0) + sign * c1 * c2
        return ExteriorElement(out)

    __mul__ = wedge

    def substitute(self, images: Sequence['ExteriorElement']) -> 'ExteriorElement':
        """
        The image under the algebra map sending x_i to images[i] (degree one elements): a change of coordinates.
        """
        out = ExteriorElement()
        for m, c in self.terms.items():
            term = ExteriorElement.one().scale(c)
            for i in m:
                term = term.wedge(images[i])
            out = out + term
        return out

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def to_dict(self) -> list:
        return [{'monomial': list(m), 'coefficient': str(c)} for m, c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for m, c in self.sorted_terms():
            mono = '*'.join(f'x{i}' for i in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append('-' + mono)
            else:
                parts.append(f'{c}*{mono}')
        return ' + '.join(parts).replace('+ -', '- ')

    def __repr__(self):
        return f'ExteriorElement({self})'
