"""
Arrangements of subtori in the torus (C*)^d, with root of unity constants.

A character is an integer vector; an atom is cut out by equations chi = exp(2 pi i c) with c in Q/Z.  A layer is a
connected component of an intersection of atoms, stored canonically as the saturated lattice of characters
constant on it (Hermite basis) together with the value of each basis character, so two layers are the same exactly
when their fields are equal.
"""
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from toricprobe.exceptions import (InconsistentConstants, NestedAtoms, NotComparable, ParseError, WrongLength,
                                   ZeroCharacter)
from toricprobe.intlat import (IntMatrix, hermite_basis, hermite_row_form, lattice_coordinates, saturation,
                               smith_normal_form)
from toricprobe.logs import get_logger

Character = Tuple[int, ...]

_ROOT_PATTERN = re.compile(r'^\s*([0-9]+)\s*(?:/\s*([0-9]+))?\s*$')


@dataclass(frozen=True, order=True)
class UnityRoot:
    """
    The root of unity exp(2 pi i value), value a reduced fraction in [0, 1).
    """
    value: Fraction = Fraction(0)

    def __post_init__(self):
        if not 0 <= self.value < 1:
            raise ValueError(f"Root of unity exponent {self.value} is outside [0, 1).")

    @classmethod
    def of(cls, value) -> 'UnityRoot':
        """
        :param value: Any rational, reduced modulo 1.
        """
        return cls(Fraction(value) % 1)

    @classmethod
    def parse(cls, text: str) -> 'UnityRoot':
        """
        Strict parser: "0", or "p/q" reduced with 0 <= p < q.
        """
        if not isinstance(text, str):
            raise ParseError(f"constant must be a string like \"1/2\", got {text!r}")
        match = _ROOT_PATTERN.match(text)
        if not match:
            raise ParseError(f"constant {text!r} is not of the form \"p/q\"")
        p = int(match.group(1))
        q = int(match.group(2)) if match.group(2) is not None else 1
        if q == 0:
            raise ParseError(f"constant {text!r} has a zero denominator")
        if p >= q and not (p == 0 and q == 1):
            raise ParseError(f"constant {text!r} must satisfy 0 <= p < q")
        if math.gcd(p, q) != 1:
            raise ParseError(f"constant {text!r} is not reduced")
        return cls(Fraction(p, q))

    @property
    def order(self) -> int:
        return self.value.denominator

    def __str__(self):
        return str(self.value.numerator) if self.value.denominator == 1 else \
            f"{self.value.numerator}/{self.value.denominator}"


ONE = UnityRoot()

Equation = Tuple[Character, UnityRoot]


@dataclass(frozen=True)
class AtomSpec:
    """
    One subtorus (or a union of translates of one, when the characters do not span a saturated lattice).
    """
    characters: Tuple[Character, ...]
    constants: Tuple[UnityRoot, ...]

    @classmethod
    def of(cls, characters: Iterable[Sequence[int]], constants: Optional[Iterable] = None) -> 'AtomSpec':
        """
        Convenience constructor; constants may be UnityRoots, rationals or "p/q" strings, all trivial by default.
        """
        chars = tuple(tuple(int(x) for x in c) for c in characters)
        if constants is None:
            roots = tuple(ONE for _ in chars)
        else:
            roots = tuple(c if isinstance(c, UnityRoot) else
                          UnityRoot.parse(c) if isinstance(c, str) else UnityRoot.of(c) for c in constants)
        return cls(chars, roots)

    def equations(self) -> List[Equation]:
        return list(zip(self.characters, self.constants))

    def span(self, ambient_rank: int) -> IntMatrix:
        """
        :return: Hermite basis of the lattice spanned by the characters (not saturated).
        """
        return hermite_basis(IntMatrix.from_rows(self.characters, ambient_rank))


@dataclass(frozen=True)
class Layer:
    """
    A connected component: the saturated character lattice (Hermite basis in sub) and one constant per basis row.
    """
    sub: IntMatrix
    point: Tuple[UnityRoot, ...]

    @property
    def codim(self) -> int:
        return self.sub.nrows

    @property
    def ambient_rank(self) -> int:
        return self.sub.ncols

    @property
    def dim(self) -> int:
        return self.ambient_rank - self.codim

    def equations(self) -> List[Equation]:
        return list(zip(self.sub.rows, self.point))

    def value_on(self, character: Sequence[int]) -> Optional[Fraction]:
        """
        :return: The constant value of the character on this layer, in [0, 1), or None when it is not constant.
        """
        coords = lattice_coordinates(self.sub, character)
        if coords is None:
            return None
        return sum((c * p.value for c, p in zip(coords, self.point)), Fraction(0)) % 1

    def sort_key(self):
        return self.codim, self.sub.rows, self.point

    def to_dict(self) -> dict:
        return {
            'codim': self.codim,
            'dim': self.dim,
            'sub': self.sub.to_lists(),
            'point': [str(p) for p in self.point],
        }


def torus_layer(ambient_rank: int) -> Layer:
    return Layer(IntMatrix((), ambient_rank), ())


def span_homomorphism(ambient_rank: int, equations: Sequence[Equation]) -> Tuple[IntMatrix, Tuple[Fraction, ...]]:
    """
    Extends the assignment character -> constant to the lattice the characters span.
    :param ambient_rank: The rank d of the torus.
    :param equations: Pairs (character, constant).
    :return: The Hermite basis of the span and the value (in [0, 1)) on each basis row.
    :raises InconsistentConstants: When an integer relation among the characters has a non zero value.
    """
    if not equations:
        return IntMatrix((), ambient_rank), ()
    chars = IntMatrix.from_rows([c for c, _ in equations], ambient_rank)
    consts = [c.value for _, c in equations]
    h, u = hermite_row_form(chars)
    values = []
    basis = []
    for h_row, u_row in zip(h.rows, u.rows):
        value = sum((x * c for x, c in zip(u_row, consts)), Fraction(0)) % 1
        if any(h_row):
            basis.append(h_row)
            values.append(value)
        elif value != 0:
            raise InconsistentConstants(
                f"the relation {list(u_row)} among the characters has value {value} instead of 0",
                params={'relation': list(u_row), 'value': value})
    return IntMatrix.from_rows(basis, ambient_rank), tuple(values)


def validate_atom(ambient_rank: int, atom: AtomSpec, atom_index: Optional[int] = None) -> None:
    """
    Checks an atom: lengths, non zero characters, and constants defining a homomorphism on the character span.
    :raises WrongLength, ZeroCharacter, InconsistentConstants: With atom_index attached.
    """
    if not atom.characters:
        raise WrongLength("an atom needs at least one character", atom_index)
    if len(atom.characters) != len(atom.constants):
        raise WrongLength(f"{len(atom.characters)} characters but {len(atom.constants)} constants", atom_index)
    for k, character in enumerate(atom.characters):
        if len(character) != ambient_rank:
            raise WrongLength(f"character {list(character)} has length {len(character)}, expected {ambient_rank}",
                              atom_index, params={'character_index': k})
        if not any(character):
            raise ZeroCharacter(f"character {k} is zero", atom_index, params={'character_index': k})
    try:
        span_homomorphism(ambient_rank, atom.equations())
    except InconsistentConstants as ex:
        raise InconsistentConstants(str(ex), atom_index, params=ex.params) from ex


def layer_components(ambient_rank: int, equations: Sequence[Equation]) -> List[Layer]:
    """
    The connected components of the solution set of the equations.

    With G the span of the characters and S its saturation, G = M·S in Hermite bases and the components are the
    extensions of the homomorphism from G to S.  Writing P·M·Q = D in Smith form, the extensions are y = Q·w with
    w_i = ((P·c)_i + t_i) / d_i, t_i in [0, d_i).
    :raises InconsistentConstants: When the equations have no common solution.
    """
    g, values = span_homomorphism(ambient_rank, equations)
    if g.nrows == 0:
        return [torus_layer(ambient_rank)]
    s = saturation(g)
    m = IntMatrix.from_rows([lattice_coordinates(s, row) for row in g.rows], s.nrows)
    snf = smith_normal_form(m)
    p_values = [sum((x * v for x, v in zip(p_row, values)), Fraction(0)) for p_row in snf.u.rows]
    diagonal = snf.diagonal

    points = [()]
    for i, d_i in enumerate(diagonal):
        points = [w + (Fraction(p_values[i] + t, d_i),) for w in points for t in range(d_i)]
    layers = []
    for w in points:
        y = tuple(UnityRoot.of(sum((q * x for q, x in zip(q_row, w)), Fraction(0))) for q_row in snf.v.rows)
        layers.append(Layer(s, y))
    return sorted(set(layers), key=Layer.sort_key)


def layer_leq(lower: Layer, upper: Layer) -> bool:
    """
    lower <= upper in the poset of layers, that is upper is contained in lower: every character constant on lower
    is constant on upper, with the same value.
    """
    if lower.codim > upper.codim:
        return False
    return all(upper.value_on(row) == p.value for row, p in zip(lower.sub.rows, lower.point))


def layer_in_atom(layer: Layer, atom: AtomSpec) -> bool:
    """
    :return: True when the layer lies in the atom: each defining equation of the atom holds on it.
    """
    return all(layer.value_on(c) == k.value for c, k in atom.equations())


def atom_contained_in(ambient_rank: int, inner: AtomSpec, outer: AtomSpec) -> bool:
    """
    inner is a subset of outer when every character of outer is in the span of those of inner, with the value
    inner's equations give it.
    """
    basis, values = span_homomorphism(ambient_rank, inner.equations())
    for character, constant in outer.equations():
        coords = lattice_coordinates(basis, character)
        if coords is None:
            return False
        if sum((c * v for c, v in zip(coords, values)), Fraction(0)) % 1 != constant.value:
            return False
    return True


@dataclass(frozen=True)
class LayerPoset:
    """
    The poset of layers, ordered by reverse inclusion with the torus at index 0.
    """
    ambient_rank: int
    atoms: Tuple[AtomSpec, ...]
    layers: Tuple[Layer, ...]

    """
    above[i] is the set of j with layers[i] <= layers[j], i included.
    """
    above: Tuple[FrozenSet[int], ...]
    covers: Tuple[Tuple[int, int], ...]

    """
    atoms_below[i] is the set of atoms containing layers[i].
    """
    atoms_below: Tuple[FrozenSet[int], ...]
    _index: Dict[Layer, int] = field(default_factory=dict, compare=False, repr=False)

    def __len__(self):
        return len(self.layers)

    def leq(self, lower: int, upper: int) -> bool:
        return upper in self.above[lower]

    def index_of(self, layer: Layer) -> int:
        if not self._index:
            self._index.update({lay: i for i, lay in enumerate(self.layers)})
        return self._index[layer]

    def dim(self, index: int) -> int:
        return self.layers[index].dim

    def codim(self, index: int) -> int:
        return self.layers[index].codim

    def open_interval(self, lower: int, upper: int) -> List[int]:
        if not self.leq(lower, upper):
            raise NotComparable(f"layer {lower} is not below layer {upper}", params={'lower': lower, 'upper': upper})
        return [k for k in sorted(self.above[lower]) if k != lower and k != upper and self.leq(k, upper)]

    def is_divisorial(self) -> bool:
        """
        True when every atom is a hypertorus (or a union of parallel ones).
        """
        return all(atom.span(self.ambient_rank).nrows == 1 for atom in self.atoms)


def check_not_nested(ambient_rank: int, atoms: Sequence[AtomSpec]) -> None:
    for i, inner in enumerate(atoms):
        for j, outer in enumerate(atoms):
            if i != j and atom_contained_in(ambient_rank, inner, outer):
                raise NestedAtoms(f"atom {i} is contained in atom {j}", params={'inner': i, 'outer': j})


def build_layer_poset(ambient_rank: int, atoms: Sequence[AtomSpec]) -> LayerPoset:
    """
    Closes {T} under intersection with the atoms, splitting every intersection into its connected components.
    :raises NestedAtoms: When an atom is contained in another one.
    """
    atoms = tuple(atoms)
    for i, atom in enumerate(atoms):
        validate_atom(ambient_rank, atom, i)
    check_not_nested(ambient_rank, atoms)

    torus = torus_layer(ambient_rank)
    found = {torus}
    frontier = [torus]
    while frontier:
        next_frontier = []
        for layer in frontier:
            for atom in atoms:
                if layer_in_atom(layer, atom):
                    continue
                try:
                    components = layer_components(ambient_rank, layer.equations() + atom.equations())
                except InconsistentConstants:
                    continue
                for comp in components:
                    if comp not in found:
                        found.add(comp)
                        next_frontier.append(comp)
        frontier = next_frontier

    layers = tuple(sorted(found, key=Layer.sort_key))
    n = len(layers)
    above = tuple(frozenset(j for j in range(n) if layer_leq(layers[i], layers[j])) for i in range(n))
    covers = tuple((i, j) for i in range(n) for j in sorted(above[i])
                   if i != j and not any(k != i and k != j and j in above[k] for k in above[i]))
    atoms_below = tuple(frozenset(a for a, atom in enumerate(atoms) if layer_in_atom(lay, atom))
                        for lay in layers)
    get_logger().debug(__name__, "Built layer poset", {
        'ambient_rank': ambient_rank, 'atoms': len(atoms), 'layers': n, 'covers': len(covers)})
    return LayerPoset(ambient_rank, atoms, layers, above, covers, atoms_below)


@dataclass(frozen=True)
class PositiveSystem:
    """
    A change of basis u of the character lattice making every chosen atom basis vector non negative.
    """

    """
    The unimodular change of basis.
    """
    u: IntMatrix

    """
    The chosen vectors after the sign flips, one per column, in the new coordinates (u times the flipped vectors).
    """
    columns: IntMatrix

    """
    The chosen vectors as given, one per column.
    """
    vectors: IntMatrix

    """
    For every column, True when the vector was replaced by its opposite.
    """
    flips: Tuple[bool, ...]

    """
    For every column, the atom it comes from (None when the vectors were given directly).
    """
    atom_of_column: Tuple[Optional[int], ...]

    @property
    def has_zero_coordinate(self) -> bool:
        return any(x == 0 for row in self.columns.rows for x in row)

    def to_dict(self) -> dict:
        return {
            'u': self.u.to_lists(),
            'columns': self.columns.to_lists(),
            'vectors': self.vectors.to_lists(),
            'flips': list(self.flips),
            'atom_of_column': list(self.atom_of_column),
            'has_zero_coordinate': self.has_zero_coordinate,
        }


def positive_system(ambient_rank: int, atoms: Sequence[AtomSpec]) -> PositiveSystem:
    """
    The columns are the Hermite basis vectors of each atom's character span.
    """
    vectors = []
    owners = []
    for i, atom in enumerate(atoms):
        validate_atom(ambient_rank, atom, i)
        for row in atom.span(ambient_rank).rows:
            vectors.append(row)
            owners.append(i)
    return positive_system_of_vectors(ambient_rank, vectors, owners)


def positive_system_of_vectors(ambient_rank: int, vectors: Sequence[Sequence[int]],
                               owners: Optional[Sequence[Optional[int]]] = None) -> PositiveSystem:
    """
    Flips every vector so its last non zero coordinate (its pivot) is positive, then for k = 2..d adds to each
    earlier row r the smallest multiple of row k clearing the negatives of row r among the columns pivoting in k.
    Columns pivoting above k have a zero in row k, so later steps never undo earlier ones.
    :param ambient_rank: The rank d.
    :param vectors: Non zero vectors of length d.
    :param owners: Optional atom index of each vector.
    """
    for v in vectors:
        if len(v) != ambient_rank:
            raise WrongLength(f"vector {list(v)} has length {len(v)}, expected {ambient_rank}")
        if not any(v):
            raise ZeroCharacter(f"vector {list(v)} is zero")
    owners = tuple(owners) if owners is not None else (None,) * len(vectors)
    n = len(vectors)
    a = [[int(vectors[c][r]) for c in range(n)] for r in range(ambient_rank)]
    original = IntMatrix.from_rows(a, n)

    pivots = []
    flips = []
    for c in range(n):
        pivot = max(r for r in range(ambient_rank) if a[r][c])
        flip = a[pivot][c] < 0
        if flip:
            for r in range(ambient_rank):
                a[r][c] = -a[r][c]
        pivots.append(pivot)
        flips.append(flip)

    u = [[int(i == j) for j in range(ambient_rank)] for i in range(ambient_rank)]
    for k in range(1, ambient_rank):
        pivoting = [c for c in range(n) if pivots[c] == k]
        for r in range(k):
            t = max((-(a[r][c] // a[k][c]) for c in pivoting if a[r][c] < 0), default=0)
            if t:
                a[r] = [x + t * y for x, y in zip(a[r], a[k])]
                u[r] = [x + t * y for x, y in zip(u[r], u[k])]

    get_logger().debug(__name__, "Built positive system", {'ambient_rank': ambient_rank, 'vectors': n})
    return PositiveSystem(IntMatrix.from_rows(u, ambient_rank), IntMatrix.from_rows(a, n), original,
                          tuple(flips), owners)
