"""
The integral cohomology of the complement, assembled layer by layer.

A layer W with reduced homology H_s of the order complex of (T, W) contributes H^p(W) (free of rank
C(dim W, p)) tensored with H_s, in total degree p + q with q = 2 cd W - 2 - s.  The torus itself enters through
the void complex (s = -2, so q = 0).  The same summands, graded by (p, q), are the E2 page of the Leray spectral
sequence of the inclusion of the complement in the torus.
"""
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Sequence, Tuple

from toricprobe.arrangement import LayerPoset
from toricprobe.intlat import TRIVIAL_GROUP, TorsionData
from toricprobe.logs import get_logger
from toricprobe.topo import mobius_row, nonzero_homology, order_complex, reduced_homology

Polynomial = Tuple[int, ...]


@dataclass(frozen=True)
class CohomologySummand:
    """
    H^p(W) tensor H_s(order complex of (T, W)), sitting in total_degree.
    """
    layer: int
    p: int
    s: int
    group: TorsionData
    total_degree: int

    @property
    def q(self) -> int:
        return self.total_degree - self.p

    def to_dict(self) -> dict:
        return {'layer': self.layer, 'p': self.p, 'q': self.q, 's': self.s, 'degree': self.total_degree,
                **self.group.to_dict()}


@dataclass(frozen=True)
class BettiTable:
    """
    H^k of the complement for k = 0..2d, with the summands that produce each group.
    """
    ambient_rank: int
    degrees: Tuple[TorsionData, ...]
    summands: Tuple[CohomologySummand, ...]

    def poincare(self) -> Polynomial:
        return trim_polynomial(tuple(g.free_rank for g in self.degrees))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * g.free_rank for k, g in enumerate(self.degrees))

    def summands_in_degree(self, k: int) -> List[CohomologySummand]:
        return [s for s in self.summands if s.total_degree == k]

    def to_dict(self) -> dict:
        return {
            'ambient_rank': self.ambient_rank,
            'degrees': [{'degree': k, **g.to_dict(), 'group': str(g)} for k, g in enumerate(self.degrees)],
            'poincare': list(self.poincare()),
            'euler_characteristic': self.euler_characteristic(),
            'summands': [s.to_dict() for s in self.summands],
        }


@dataclass(frozen=True)
class E2Entry:
    p: int
    q: int
    group: TorsionData
    layers: Tuple[int, ...]

    @property
    def filtration_degree(self) -> int:
        return self.p + 2 * self.q

    def to_dict(self) -> dict:
        return {'p': self.p, 'q': self.q, 'filtration_degree': self.filtration_degree,
                'layers': list(self.layers), **self.group.to_dict()}


@dataclass(frozen=True)
class E2Table:
    """
    The non zero entries E2^{p,q}, sorted by (q, p).
    """
    ambient_rank: int
    entries: Tuple[E2Entry, ...]

    def entry(self, p: int, q: int) -> TorsionData:
        for e in self.entries:
            if e.p == p and e.q == q:
                return e.group
        return TRIVIAL_GROUP

    def total(self, k: int) -> TorsionData:
        """
        :return: The direct sum of the entries on the antidiagonal p + q = k.
        """
        out = TRIVIAL_GROUP
        for e in self.entries:
            if e.p + e.q == k:
                out = out.direct_sum(e.group)
        return out

    def to_dict(self) -> dict:
        return {'ambient_rank': self.ambient_rank, 'entries': [e.to_dict() for e in self.entries]}


def layer_summands(poset: LayerPoset) -> List[CohomologySummand]:
    summands = []
    for w, layer in enumerate(poset.layers):
        homology = nonzero_homology(reduced_homology(order_complex(poset, 0, w)))
        for h in homology:
            q = 2 * layer.codim - 2 - h.degree
            for p in range(layer.dim + 1):
                group = h.group.repeat(comb(layer.dim, p))
                if not group.is_trivial():
                    summands.append(CohomologySummand(w, p, h.degree, group, p + q))
    return summands


def cohomology_groups(poset: LayerPoset) -> BettiTable:
    summands = layer_summands(poset)
    top = 2 * poset.ambient_rank
    degrees = [TRIVIAL_GROUP] * (top + 1)
    for s in summands:
        if s.total_degree > top:
            raise ValueError(f"Summand {s} lands in degree {s.total_degree}, above {top}")
        degrees[s.total_degree] = degrees[s.total_degree].direct_sum(s.group)
    get_logger().debug(__name__, "Assembled cohomology groups", {
        'layers': len(poset), 'summands': len(summands), 'poincare': [g.free_rank for g in degrees]})
    return BettiTable(poset.ambient_rank, tuple(degrees), tuple(summands))


def poincare_polynomial(poset: LayerPoset) -> Polynomial:
    """
    :return: Coefficients of the Poincare polynomial, constant term first.
    """
    return cohomology_groups(poset).poincare()


def e2_page(poset: LayerPoset) -> E2Table:
    groups: Dict[Tuple[int, int], TorsionData] = {}
    layers: Dict[Tuple[int, int], List[int]] = {}
    for s in layer_summands(poset):
        key = (s.p, s.q)
        groups[key] = groups.get(key, TRIVIAL_GROUP).direct_sum(s.group)
        if s.layer not in layers.setdefault(key, []):
            layers[key].append(s.layer)
    entries = tuple(E2Entry(p, q, groups[(p, q)], tuple(layers[(p, q)]))
                    for q, p in sorted((q, p) for p, q in groups))
    return E2Table(poset.ambient_rank, entries)


def characteristic_polynomial(poset: LayerPoset) -> Polynomial:
    """
    sum over the layers of mu(T, W) t^(dim W).
    """
    coeffs = [0] * (poset.ambient_rank + 1)
    for w, mu in mobius_row(poset, 0).items():
        coeffs[poset.dim(w)] += mu
    return tuple(coeffs)


def divisorial_poincare(poset: LayerPoset) -> Polynomial:
    """
    sum over the layers of |mu(T, W)| t^(cd W) (1 + t)^(dim W); equal to the Poincare polynomial when every atom
    is a hypertorus.
    """
    coeffs = [0] * (poset.ambient_rank + 1)
    for w, mu in mobius_row(poset, 0).items():
        codim, dim = poset.codim(w), poset.dim(w)
        for p in range(dim + 1):
            coeffs[codim + p] += abs(mu) * comb(dim, p)
    return trim_polynomial(tuple(coeffs))


def trim_polynomial(coeffs: Sequence[int]) -> Polynomial:
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def format_polynomial(coeffs: Sequence[int], variable: str = 't') -> str:
    """
    :return: The polynomial as text, e.g. '1 + 5t + 6t^2'.
    """
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = '' if k == 0 else variable if k == 1 else f'{variable}^{k}'
        coef = str(abs(c)) if (abs(c) != 1 or k == 0) else ''
        sign = '-' if c < 0 else '+'
        terms.append((sign, coef + mono))
    if not terms:
        return '0'
    text = ('-' if terms[0][0] == '-' else '') + terms[0][1]
    for sign, body in terms[1:]:
        text += f' {sign} {body}'
    return text
