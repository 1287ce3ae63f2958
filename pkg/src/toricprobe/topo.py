"""
Order complexes of intervals of the poset of layers, their integral reduced homology, and the Moebius function.

Two degenerate complexes are kept apart: the empty complex (an open interval with nothing in it, reduced homology Z
in degree -1) and the void complex of a one point interval (reduced homology Z in degree -2).  With those
conventions the alternating sum of the ranks is the Moebius function on every interval.
"""
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from toricprobe.arrangement import LayerPoset
from toricprobe.exceptions import NotComparable
from toricprobe.intlat import INTEGERS, IntMatrix, TorsionData, smith_normal_form

Face = Tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    """
    A complex given by its facets.  The empty complex has the single facet (); the void complex has none.
    """
    vertex_count: int
    facets: Tuple[Face, ...]
    void: bool = False

    """
    For an order complex, the layer behind each vertex.
    """
    labels: Tuple[int, ...] = ()

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Sequence[Sequence[int]], labels: Sequence[int] = ()) \
            -> 'SimplicialComplex':
        """
        Sorts the facets and drops the faces of other facets, so that the facets form an antichain.
        """
        cleaned = sorted(set(tuple(sorted(f)) for f in facets), key=lambda f: (-len(f), f))
        kept: List[Face] = []
        for f in cleaned:
            if not any(set(f) <= set(g) for g in kept):
                kept.append(f)
        if not kept:
            kept = [()]
        for f in kept:
            if any(v < 0 or v >= vertex_count for v in f):
                raise ValueError(f"Facet {f} uses a vertex outside 0..{vertex_count - 1}")
        return cls(vertex_count, tuple(sorted(kept, key=lambda f: (len(f), f))), False, tuple(labels))

    @classmethod
    def empty(cls) -> 'SimplicialComplex':
        return cls(0, ((),))

    @classmethod
    def void_complex(cls) -> 'SimplicialComplex':
        return cls(0, (), True)

    @property
    def dimension(self) -> int:
        if self.void:
            return -2
        return max(len(f) for f in self.facets) - 1

    def faces(self, dim: int) -> List[Face]:
        """
        :return: The faces with dim + 1 vertices, in lexicographic order.  Dimension -1 is the empty face.
        """
        if self.void or dim < -1:
            return []
        out = set()
        for f in self.facets:
            if len(f) >= dim + 1:
                out.update(combinations(f, dim + 1))
        return sorted(out)

    def to_dict(self) -> dict:
        return {'vertex_count': self.vertex_count, 'void': self.void,
                'facets': [list(f) for f in self.facets], 'labels': list(self.labels)}


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    group: TorsionData

    def to_dict(self) -> dict:
        return {'degree': self.degree, **self.group.to_dict()}


def order_complex(poset: LayerPoset, lower: int, upper: int) -> SimplicialComplex:
    """
    The order complex of the open interval (lower, upper): one vertex per layer strictly between, one facet per
    maximal chain.
    :raises NotComparable: When lower is not below upper.
    """
    if lower == upper:
        return SimplicialComplex.void_complex()
    interior = poset.open_interval(lower, upper)
    if not interior:
        return SimplicialComplex.empty()
    vertex_of = {layer: k for k, layer in enumerate(interior)}
    inside = set(interior)
    up_covers: Dict[int, List[int]] = {k: [] for k in interior}
    for a, b in poset.covers:
        if a in inside and b in inside:
            up_covers[a].append(b)
    starts = [k for k in interior if not any(b == k and a in inside for a, b in poset.covers)]

    chains = []
    stack = [(k,) for k in reversed(starts)]
    while stack:
        chain = stack.pop()
        nexts = up_covers[chain[-1]]
        if not nexts:
            chains.append(tuple(vertex_of[k] for k in chain))
        for b in reversed(nexts):
            stack.append(chain + (b,))
    return SimplicialComplex.from_facets(len(interior), chains, interior)


def _boundary(cx: SimplicialComplex, dim: int) -> IntMatrix:
    """
    The boundary from dim faces to dim - 1 faces, one row per dim face.
    """
    lower = {f: k for k, f in enumerate(cx.faces(dim - 1))}
    rows = []
    for f in cx.faces(dim):
        row = [0] * len(lower)
        for i in range(len(f)):
            row[lower[f[:i] + f[i + 1:]]] = -1 if i % 2 else 1
        rows.append(row)
    return IntMatrix.from_rows(rows, len(lower))


def reduced_homology(cx: SimplicialComplex) -> List[HomologyGroup]:
    """
    Reduced integral homology, one entry per degree from -1 (-2 for the void complex) to the dimension, trivial
    groups included.
    """
    if cx.void:
        return [HomologyGroup(-2, INTEGERS)]
    top = cx.dimension
    ranks = {}
    torsion = {}
    for dim in range(0, top + 2):
        snf = smith_normal_form(_boundary(cx, dim))
        ranks[dim] = snf.rank
        torsion[dim - 1] = [x for x in snf.diagonal if x > 1]
    groups = []
    for dim in range(-1, top + 1):
        chains = len(cx.faces(dim))
        free = chains - ranks.get(dim, 0) - ranks.get(dim + 1, 0)
        groups.append(HomologyGroup(dim, TorsionData.from_diagonal(torsion.get(dim, []), free)))
    return groups


def nonzero_homology(groups: Sequence[HomologyGroup]) -> List[HomologyGroup]:
    return [g for g in groups if not g.group.is_trivial()]


def euler_characteristic(groups: Sequence[HomologyGroup]) -> int:
    """
    The alternating sum of the free ranks of the reduced homology.
    """
    return sum((-1) ** (g.degree % 2) * g.group.free_rank for g in groups)


def mobius_row(poset: LayerPoset, lower: int) -> Dict[int, int]:
    """
    mu(lower, y) for every y >= lower.  The layers are sorted by codimension, so a strictly smaller layer always
    has a smaller index.
    """
    row = {lower: 1}
    for y in sorted(poset.above[lower]):
        if y == lower:
            continue
        row[y] = -sum(row[z] for z in row if z != y and poset.leq(z, y))
    return row


def mobius(poset: LayerPoset, lower: int, upper: int) -> int:
    """
    :raises NotComparable: When lower is not below upper.
    """
    if not poset.leq(lower, upper):
        raise NotComparable(f"layer {lower} is not below layer {upper}", params={'lower': lower, 'upper': upper})
    return mobius_row(poset, lower)[upper]
