"""
The quotient ring, one degree at a time.

The product and restriction relations are built into the spanning set: e_{W,A} times H(W) for every generator,
with H(W) written in a unimodular frame of the character lattice whose first cd W rows span the characters constant
on W.  The coordinates y_l, l >= cd W, of that frame restrict to a basis of H^1(W).  What is left to divide out is
the ideal generated by the circuit relations, computed degree by degree as the smallest subspace containing them
that is closed under multiplication by the x_i and by the generators.  Row reduction is exact, over sympy's QQ.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from toricprobe.arimat import nbc_sets
from toricprobe.exceptions import BasisDefect
from toricprobe.exterior import ExteriorElement, Monomial
from toricprobe.intlat import IntMatrix, inverse_unimodular, unimodular_completion
from toricprobe.logs import get_logger
from toricprobe.ospres.presentation import (UNIT, GeneratorIndex, Presentation, PresentationElement, Relation,
                                            circuit_relations, generator_product)

Key = Tuple[GeneratorIndex, Monomial]
FrameVector = Dict[Key, Fraction]
SparseRow = Dict[int, Fraction]


@dataclass(frozen=True)
class Frame:
    """
    g is unimodular with its first codim rows spanning the characters constant on the layer; y_k = sum_j g[k][j] x_j.
    x_images[j] is x_j restricted to the layer, written in the y_l with l >= codim.
    """
    layer: int
    codim: int
    g: IntMatrix
    g_inverse: IntMatrix
    x_images: Tuple[ExteriorElement, ...]

    def restrict(self, psi: ExteriorElement) -> ExteriorElement:
        return psi.substitute(self.x_images)

    def lift(self, monomial: Monomial) -> ExteriorElement:
        """
        The product of the y_l in the monomial, back in the x coordinates.
        """
        out = ExteriorElement.one()
        for l in monomial:
            out = out.wedge(ExteriorElement.linear(self.g.rows[l]))
        return out

    def to_dict(self) -> dict:
        return {'layer': self.layer, 'codim': self.codim, 'rows': self.g.to_lists()}


@dataclass(frozen=True)
class BasisElement:
    """
    e_{W,A} times a monomial in the frame coordinates of W.
    """
    generator: GeneratorIndex
    monomial: Monomial

    @property
    def degree(self) -> int:
        return self.generator.degree + len(self.monomial)

    def to_dict(self) -> dict:
        return {'generator': str(self.generator), 'layer': self.generator.layer,
                'atoms': list(self.generator.atoms), 'monomial': list(self.monomial)}

    def __str__(self):
        mono = '*'.join(f'y{l}' for l in self.monomial)
        return f'{self.generator}*{mono}' if mono else str(self.generator)


def rational_rref(rows: Sequence[SparseRow], ncols: int) -> List[SparseRow]:
    """
    The non zero rows of the reduced row echelon form of the sparse rows, each starting with a 1 at its pivot.
    """
    entries = {}
    for i, row in enumerate(rows):
        kept = {j: QQ(c.numerator, c.denominator) for j, c in row.items() if c}
        if kept:
            entries[len(entries)] = kept
    if not entries or ncols == 0:
        return []
    reduced, pivots = DomainMatrix(entries, (len(entries), ncols), QQ).rref()
    rep = reduced.to_sparse().rep
    out = []
    for i in range(len(pivots)):
        out.append({j: _to_fraction(v) for j, v in sorted(rep.get(i, {}).items())})
    return out


def _to_fraction(value) -> Fraction:
    rational = QQ.to_sympy(value)
    return Fraction(int(rational.p), int(rational.q))


def _pivot(row: SparseRow) -> int:
    return min(row)


class GradedQuotient:
    """
    The quotient of a presentation, computed lazily degree by degree up to degree_cap.
    """

    def __init__(self, presentation: Presentation, degree_cap: Optional[int] = None, orientation: int = 1):
        """
        :param presentation: Generators and relation data of a divisorial arrangement.
        :param degree_cap: Highest degree handled; the ring vanishes above the ambient rank.
        :param orientation: -1 builds the circuit relations from the opposite circuit orientations.
        """
        self.presentation = presentation
        self.poset = presentation.poset
        self.ambient_rank = presentation.ambient_rank
        self.degree_cap = 2 * self.ambient_rank if degree_cap is None else degree_cap
        self.generators = presentation.generators
        self._frames: Dict[int, Frame] = {}
        self._transitions: Dict[Tuple[int, int], Tuple[ExteriorElement, ...]] = {}
        self._nbc: Dict[int, set] = {}
        self._columns: Dict[int, List[BasisElement]] = {}
        self._column_index: Dict[int, Dict[BasisElement, int]] = {}
        self._nbc_start: Dict[int, int] = {}
        self._ideal: Dict[int, List[SparseRow]] = {}
        self.orientation = orientation
        self._relations_by_degree: Optional[Dict[int, List[Relation]]] = None

    def frame(self, layer: int) -> Frame:
        if layer not in self._frames:
            d = self.ambient_rank
            sub = self.poset.layers[layer].sub
            g = unimodular_completion(sub) if sub.nrows else IntMatrix.identity(d)
            g_inv = inverse_unimodular(g)
            c = sub.nrows
            images = tuple(ExteriorElement.linear([g_inv[j, l] if l >= c else 0 for l in range(d)]) for j in range(d))
            self._frames[layer] = Frame(layer, c, g, g_inv, images)
        return self._frames[layer]

    def _transition(self, source: int, target: int) -> Tuple[ExteriorElement, ...]:
        """
        y^source_k restricted to the target layer, in the target frame.
        """
        key = (source, target)
        if key not in self._transitions:
            f_src, f_tgt = self.frame(source), self.frame(target)
            self._transitions[key] = tuple(f_tgt.restrict(ExteriorElement.linear(row)) for row in f_src.g.rows)
        return self._transitions[key]

    def nbc_generators(self, layer: int) -> set:
        if layer not in self._nbc:
            self._nbc[layer] = {c.atoms for c in nbc_sets(self.presentation.ground, self.poset, layer)}
        return self._nbc[layer]

    def is_nbc(self, g: GeneratorIndex) -> bool:
        return g.atoms in self.nbc_generators(g.layer)

    def columns(self, degree: int) -> List[BasisElement]:
        """
        The spanning set in a degree, the non NBC elements first.
        """
        if degree not in self._columns:
            d = self.ambient_rank
            others, nbc = [], []
            for g in self.generators:
                if g.degree > degree:
                    continue
                c = self.poset.codim(g.layer)
                target = nbc if self.is_nbc(g) else others
                target.extend(BasisElement(g, mono) for mono in combinations(range(c, d), degree - g.degree))
            self._columns[degree] = others + nbc
            self._nbc_start[degree] = len(others)
            self._column_index[degree] = {b: i for i, b in enumerate(others + nbc)}
        return self._columns[degree]

    def nbc_basis(self, degree: int) -> List[BasisElement]:
        columns = self.columns(degree)
        return columns[self._nbc_start[degree]:]

    def to_frame(self, element: PresentationElement) -> FrameVector:
        """
        Applies the product and restriction rules: a combination of generators times frame monomials.
        """
        out: FrameVector = {}
        for term in element.terms:
            if not term.coefficient or term.psi.is_zero():
                continue
            gens = term.generators or (UNIT,)
            current = [(1, gens[0])]
            for h in gens[1:]:
                current = [(s * t, lg) for s, g in current for t, lg in generator_product(self.presentation, g, h)]
            for sign, g in current:
                restricted = self.frame(g.layer).restrict(term.psi)
                for mono, c in restricted.terms.items():
                    key = (g, mono)
                    out[key] = out.get(key, 0) + sign * term.coefficient * c
        return {k: c for k, c in out.items() if c}

    def times_x(self, vector: FrameVector, i: int) -> FrameVector:
        """
        x_i (e_g mu) = (-1)^|A| e_g (x_i mu).
        """
        out: FrameVector = {}
        for (g, mono), c in vector.items():
            sign = -1 if g.degree % 2 else 1
            image = self.frame(g.layer).x_images[i].wedge(ExteriorElement({mono: Fraction(1)}))
            for m, x in image.terms.items():
                key = (g, m)
                out[key] = out.get(key, 0) + sign * c * x
        return {k: c for k, c in out.items() if c}

    def times_generator(self, h: GeneratorIndex, vector: FrameVector) -> FrameVector:
        """
        e_h (e_g mu) = (e_h e_g) mu, with mu carried over to the frame of each component.
        """
        out: FrameVector = {}
        for (g, mono), c in vector.items():
            for sign, lg in generator_product(self.presentation, h, g):
                moved = ExteriorElement({mono: Fraction(1)}).substitute(self._transition(g.layer, lg.layer))
                for m, x in moved.terms.items():
                    key = (lg, m)
                    out[key] = out.get(key, 0) + sign * c * x
        return {k: c for k, c in out.items() if c}

    def _to_row(self, vector: FrameVector, degree: int) -> SparseRow:
        self.columns(degree)
        index = self._column_index[degree]
        return {index[BasisElement(g, mono)]: c for (g, mono), c in vector.items()}

    def _to_vector(self, row: SparseRow, degree: int) -> FrameVector:
        columns = self.columns(degree)
        return {(columns[j].generator, columns[j].monomial): c for j, c in row.items()}

    def relations_in_degree(self, degree: int) -> List[Relation]:
        if self._relations_by_degree is None:
            grouped: Dict[int, List[Relation]] = {}
            for rel in circuit_relations(self.presentation, self.orientation):
                grouped.setdefault(rel.degree(), []).append(rel)
            self._relations_by_degree = grouped
        return self._relations_by_degree.get(degree, [])

    def ideal(self, degree: int) -> List[SparseRow]:
        """
        The reduced echelon basis of the ideal in a degree, over the columns of that degree.
        """
        if degree in self._ideal:
            return self._ideal[degree]
        if degree > self.ambient_rank:
            self._ideal[degree] = []
            return []
        vectors = [self.to_frame(rel.element) for rel in self.relations_in_degree(degree)]
        if degree >= 1:
            for row in self.ideal(degree - 1):
                below = self._to_vector(row, degree - 1)
                vectors.extend(self.times_x(below, i) for i in range(self.ambient_rank))
        for h in self.generators:
            if 1 <= h.degree <= degree:
                for row in self.ideal(degree - h.degree):
                    vectors.append(self.times_generator(h, self._to_vector(row, degree - h.degree)))
        columns = self.columns(degree)
        reduced = rational_rref([self._to_row(v, degree) for v in vectors if v], len(columns))
        self._ideal[degree] = reduced
        get_logger().debug(__name__, "Closed the ideal in one degree", {
            'degree': degree, 'spanning': len(columns), 'rows': len(vectors), 'rank': len(reduced)})
        return reduced

    def dimension(self, degree: int) -> int:
        if degree > self.ambient_rank:
            return 0
        return len(self.columns(degree)) - len(self.ideal(degree))

    def dimensions(self) -> Tuple[int, ...]:
        return tuple(self.dimension(k) for k in range(min(self.degree_cap, self.ambient_rank) + 1))

    def check_basis(self, degree: int) -> None:
        """
        :raises BasisDefect: When the NBC elements do not complement the ideal: some pivot falls on an NBC column.
        """
        pivots = {_pivot(row) for row in self.ideal(degree)}
        expected = set(range(self._nbc_start[degree]))
        if pivots != expected:
            params = {'degree': degree, 'non_nbc': len(expected), 'rank': len(pivots),
                      'nbc_pivots': sorted(p for p in pivots if p not in expected)}
            get_logger().error(__name__, "NBC elements do not complement the relations", params)
            raise BasisDefect(f"in degree {degree} the relations have rank {len(pivots)} against "
                              f"{len(expected)} non NBC elements", params=params)

    def reduce(self, element: PresentationElement) -> Dict[BasisElement, Fraction]:
        """
        The coordinates of an element in the NBC basis.
        :raises DegreeMixed: When the element is not homogeneous.
        :raises BasisDefect: When the NBC elements are not a basis in the element's degree.
        """
        degree = element.degree()
        if degree > self.ambient_rank:
            return {}
        vector = self._to_row(self.to_frame(element), degree)
        for row in self.ideal(degree):
            p = _pivot(row)
            c = vector.get(p)
            if c:
                for j, x in row.items():
                    vector[j] = vector.get(j, 0) - c * x
        vector = {j: c for j, c in vector.items() if c}
        self.check_basis(degree)
        columns = self.columns(degree)
        return {columns[j]: c for j, c in sorted(vector.items())}

    def basis_element(self, b: BasisElement) -> PresentationElement:
        """
        The element whose normal form is b, with its monomial written in the x coordinates.
        """
        return PresentationElement.generator(b.generator, self.frame(b.generator.layer).lift(b.monomial))

    def multiply(self, a: PresentationElement, b: PresentationElement) -> Dict[BasisElement, Fraction]:
        return self.reduce(a * b)

    def is_graded_commutative(self, a: PresentationElement, b: PresentationElement) -> bool:
        """
        reduce(a b) = (-1)^(deg a deg b) reduce(b a).
        """
        sign = -1 if (a.degree() * b.degree()) % 2 else 1
        ab = self.multiply(a, b)
        ba = self.multiply(b, a)
        return ab == {k: sign * c for k, c in ba.items()}


def nbc_dimensions(quotient: GradedQuotient) -> Tuple[int, ...]:
    """
    sum over the layers of |NBC(W)| C(dim W, k - cd W).
    """
    poset = quotient.poset
    d = poset.ambient_rank
    out = [0] * (d + 1)
    for w in range(len(poset)):
        count = len(quotient.nbc_generators(w))
        for p in range(poset.dim(w) + 1):
            out[poset.codim(w) + p] += count * comb(poset.dim(w), p)
    return tuple(out)


def nbc_basis_and_dimensions(quotient: GradedQuotient) -> Tuple[List[BasisElement], Tuple[int, ...]]:
    """
    The NBC basis in every degree up to the cap, and the dimensions the NBC count predicts.
    """
    top = min(quotient.degree_cap, quotient.ambient_rank)
    basis = [b for k in range(top + 1) for b in quotient.nbc_basis(k)]
    return basis, nbc_dimensions(quotient)


def reduce_to_basis(quotient: GradedQuotient, element: PresentationElement) -> Dict[BasisElement, Fraction]:
    return quotient.reduce(element)
