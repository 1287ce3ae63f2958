"""
Exact linear algebra over the integers: Smith and Hermite normal forms, integer kernels, saturations and the
invariants of quotient lattices.

Everything works on Python ints, so entries can grow as large as they need to.  Matrices are immutable; the
reductions copy the rows into lists, work in place, and freeze the result.
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

Row = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """
    An immutable integer matrix, stored row-major.  The column count is kept explicitly so that matrices with
    no rows still know their width.
    """
    rows: Tuple[Row, ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError(f"Row {row} does not have {self.ncols} entries.")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> 'IntMatrix':
        """
        :param rows: The rows, any sequences of ints.
        :param ncols: The width, required when rows is empty.
        """
        frozen = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not frozen:
                raise ValueError("An empty matrix needs an explicit column count.")
            ncols = len(frozen[0])
        return cls(frozen, ncols)

    @classmethod
    def identity(cls, n: int) -> 'IntMatrix':
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> 'IntMatrix':
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> Row:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> 'IntMatrix':
        return IntMatrix(tuple(self.column(j) for j in range(self.ncols)), self.nrows)

    def __matmul__(self, other: 'IntMatrix') -> 'IntMatrix':
        if self.ncols != other.nrows:
            raise ValueError(f"Cannot multiply a {self.shape} matrix by a {other.shape} matrix.")
        cols = [other.column(j) for j in range(other.ncols)]
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows),
                         other.ncols)

    def apply(self, vector: Sequence[int]) -> Row:
        """
        :return: The product vector·self, treating vector as a row.
        """
        if len(vector) != self.nrows:
            raise ValueError(f"Vector of length {len(vector)} does not match {self.nrows} rows.")
        return tuple(sum(vector[i] * self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols))

    def stack(self, other: 'IntMatrix') -> 'IntMatrix':
        if self.ncols != other.ncols:
            raise ValueError(f"Cannot stack a {self.shape} matrix on a {other.shape} matrix.")
        return IntMatrix(self.rows + other.rows, self.ncols)

    def select_rows(self, indices: Iterable[int]) -> 'IntMatrix':
        return IntMatrix(tuple(self.rows[i] for i in indices), self.ncols)

    def nonzero_rows(self) -> 'IntMatrix':
        return IntMatrix(tuple(row for row in self.rows if any(row)), self.ncols)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.rows]

    def determinant(self) -> int:
        """
        Fraction free (Bareiss) elimination.
        """
        if self.nrows != self.ncols:
            raise ValueError(f"Determinant of a non square {self.shape} matrix.")
        n = self.nrows
        if n == 0:
            return 1
        m = self.to_lists()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __str__(self):
        return '[' + ', '.join('[' + ', '.join(str(x) for x in row) + ']' for row in self.rows) + ']'


@dataclass(frozen=True)
class SmithDecomposition:
    """
    U·A·V = D with U and V unimodular, D diagonal with d_1 | d_2 | ... all non negative.
    v_inverse is V^-1, tracked along the way because the saturation of the row space needs it.
    """
    d: IntMatrix
    u: IntMatrix
    v: IntMatrix
    v_inverse: IntMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.d[i, i] for i in range(min(self.d.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


@dataclass(frozen=True)
class TorsionData:
    """
    A finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_k, with 1 < d_1 | d_2 | ... | d_k.
    """
    invariant_factors: Tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        factors = self.invariant_factors
        if any(f <= 1 for f in factors):
            raise ValueError(f"Invariant factors must exceed 1, got {factors}")
        if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            raise ValueError(f"Invariant factors must divide each other in order, got {factors}")
        if self.free_rank < 0:
            raise ValueError(f"Negative free rank {self.free_rank}")

    @classmethod
    def from_diagonal(cls, diagonal: Iterable[int], free_rank: int) -> 'TorsionData':
        """
        Normalizes any list of cyclic orders (zeros meaning Z, ones dropped) to invariant factors.
        """
        extra_free = 0
        primes = {}
        for d in diagonal:
            d = abs(d)
            if d == 0:
                extra_free += 1
            elif d > 1:
                for p, e in _factor(d):
                    primes.setdefault(p, []).append(p ** e)
        #
        # Elementary divisors back to invariant factors: the largest power of every prime goes in the last factor.
        #
        length = max((len(v) for v in primes.values()), default=0)
        factors = [1] * length
        for powers in primes.values():
            powers.sort(reverse=True)
            for k, q in enumerate(powers):
                factors[length - 1 - k] *= q
        return cls(tuple(f for f in factors if f > 1), free_rank + extra_free)

    @property
    def torsion_order(self) -> int:
        return math.prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def direct_sum(self, other: 'TorsionData') -> 'TorsionData':
        return TorsionData.from_diagonal(self.invariant_factors + other.invariant_factors,
                                         self.free_rank + other.free_rank)

    def repeat(self, times: int) -> 'TorsionData':
        """
        :return: The direct sum of times copies of this group, the trivial group for times == 0.
        """
        return TorsionData.from_diagonal(self.invariant_factors * times, self.free_rank * times)

    def to_dict(self) -> dict:
        return {'free_rank': self.free_rank, 'invariant_factors': list(self.invariant_factors)}

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append('Z')
        elif self.free_rank > 1:
            parts.append(f'Z^{self.free_rank}')
        parts.extend(f'Z/{d}' for d in self.invariant_factors)
        return ' + '.join(parts) if parts else '0'


"""
The finitely generated abelian group type of the command outputs is the same object.
"""
AbelianGroupData = TorsionData

TRIVIAL_GROUP = TorsionData()
INTEGERS = TorsionData((), 1)


def _factor(n: int) -> List[Tuple[int, int]]:
    """
    Trial division, the invariant factors we meet are small.
    """
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def content(vector: Sequence[int]) -> int:
    """
    :return: The gcd of the entries, 0 for the zero vector.
    """
    return math.gcd(*vector) if vector else 0


def _row_sub(rows: List[List[int]], target: int, source: int, factor: int):
    if factor:
        src = rows[source]
        row = rows[target]
        for k, x in enumerate(src):
            if x:
                row[k] -= factor * x


def _col_sub(rows: List[List[int]], target: int, source: int, factor: int):
    if factor:
        for row in rows:
            if row[source]:
                row[target] -= factor * row[source]


def _swap_cols(rows: List[List[int]], i: int, j: int):
    if i != j:
        for row in rows:
            row[i], row[j] = row[j], row[i]


def _identity_lists(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """
    Smith normal form with the transforms, pivoting on the smallest non zero entry.
    :param a: Any integer matrix, including empty ones.
    :return: The decomposition U·A·V = D.
    """
    m, n = a.shape
    d = a.to_lists()
    u = _identity_lists(m)
    v = _identity_lists(n)
    v_inv = _identity_lists(n)

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            _swap_cols(d, i, j)
            _swap_cols(v, i, j)
            v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def row_sub(target, source, q):
        _row_sub(d, target, source, q)
        _row_sub(u, target, source, q)

    def col_sub(target, source, q):
        # column target -= q * column source, so V^-1 gets row source += q * row target
        _col_sub(d, target, source, q)
        _col_sub(v, target, source, q)
        _row_sub(v_inv, source, target, -q)

    for t in range(min(m, n)):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(pivot[0], t)
        swap_cols(pivot[1], t)

        while True:
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    row_sub(i, t, d[i][t] // d[t][t])
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, n):
                if d[t][j]:
                    col_sub(j, t, d[t][j] // d[t][t])
                    clean = clean and d[t][j] == 0
            if not clean:
                #
                # A remainder is left, smaller than the pivot: it becomes the new pivot.
                #
                best_i = min((i for i in range(t + 1, m) if d[i][t]), key=lambda i: abs(d[i][t]), default=None)
                best_j = min((j for j in range(t + 1, n) if d[t][j]), key=lambda j: abs(d[t][j]), default=None)
                if best_i is not None and (best_j is None or abs(d[best_i][t]) <= abs(d[t][best_j])):
                    swap_rows(best_i, t)
                else:
                    swap_cols(best_j, t)
                continue

            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            row_sub(t, bad[0], -1)

        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return SmithDecomposition(
        d=IntMatrix.from_rows(d, n),
        u=IntMatrix.from_rows(u, m),
        v=IntMatrix.from_rows(v, n),
        v_inverse=IntMatrix.from_rows(v_inv, n),
    )


def hermite_row_form(a: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """
    Row style Hermite normal form: U·A = H with U unimodular, the non zero rows of H first, each pivot positive and
    strictly to the right of the one above, the entries above a pivot in [0, pivot).
    :param a: Any integer matrix.
    :return: The pair (H, U).
    """
    m, n = a.shape
    h = a.to_lists()
    u = _identity_lists(m)

    def swap(i, j):
        if i != j:
            h[i], h[j] = h[j], h[i]
            u[i], u[j] = u[j], u[i]

    def sub(target, source, q):
        _row_sub(h, target, source, q)
        _row_sub(u, target, source, q)

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            candidates = [i for i in range(r, m) if h[i][c]]
            if not candidates:
                break
            swap(min(candidates, key=lambda i: abs(h[i][c])), r)
            for i in range(r + 1, m):
                if h[i][c]:
                    sub(i, r, h[i][c] // h[r][c])
            if all(h[i][c] == 0 for i in range(r + 1, m)):
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            sub(i, r, h[i][c] // h[r][c])
        r += 1

    return IntMatrix.from_rows(h, n), IntMatrix.from_rows(u, m)


def hermite_basis(a: IntMatrix) -> IntMatrix:
    """
    :return: The canonical basis of the row lattice of a: the non zero rows of its Hermite form.
    """
    h, _ = hermite_row_form(a)
    return h.nonzero_rows()


def pivot_columns(h: IntMatrix) -> Tuple[int, ...]:
    """
    :param h: A matrix in row echelon form without zero rows.
    :return: The column of the leading entry of each row.
    """
    return tuple(next(j for j, x in enumerate(row) if x) for row in h.rows)


def row_rank(a: IntMatrix) -> int:
    return hermite_basis(a).nrows


def kernel_and_saturation(a: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """
    :param a: Any integer matrix, acting on row vectors: x -> x·a.
    :return: (kernel, saturation), both in Hermite form.  The kernel rows are a basis of {x : x·a = 0}; the
    saturation rows are a basis of the lattice of vectors having a non zero multiple in the row space of a.
    """
    h, u = hermite_row_form(a)
    zero_rows = [i for i, row in enumerate(h.rows) if not any(row)]
    kernel = hermite_basis(u.select_rows(zero_rows)) if zero_rows else IntMatrix((), a.nrows)
    return kernel, saturation(a)


def saturation(a: IntMatrix) -> IntMatrix:
    """
    From A = U^-1·D·V^-1, the row space of A is spanned by d_i times the first rows of V^-1, and those rows span
    its saturation.
    """
    snf = smith_normal_form(a)
    return hermite_basis(snf.v_inverse.select_rows(range(snf.rank))) if snf.rank else IntMatrix((), a.ncols)


def quotient_invariants(ambient_rank: int, sub: IntMatrix) -> TorsionData:
    """
    :param ambient_rank: Rank of the ambient lattice Z^ambient_rank.
    :param sub: Rows spanning a sublattice.
    :return: The invariants of the quotient Z^ambient_rank / span(sub).
    """
    if sub.ncols != ambient_rank:
        raise ValueError(f"Sublattice rows have {sub.ncols} entries in a rank {ambient_rank} lattice.")
    snf = smith_normal_form(sub)
    diagonal = [x for x in snf.diagonal if x]
    return TorsionData.from_diagonal(diagonal, ambient_rank - len(diagonal))


def lattice_coordinates(basis: IntMatrix, vector: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """
    Solves x·basis = vector over the integers, by back substitution along the pivots.
    :param basis: A Hermite basis (echelon, no zero rows).
    :param vector: The vector to express.
    :return: The integer coordinates, or None when vector is not in the lattice.
    """
    residual = list(vector)
    coords = []
    for row, col in zip(basis.rows, pivot_columns(basis)):
        c, remainder = divmod(residual[col], row[col])
        if remainder:
            return None
        coords.append(c)
        if c:
            residual = [x - c * y for x, y in zip(residual, row)]
    if any(residual):
        return None
    return tuple(coords)


def unimodular_completion(basis: IntMatrix) -> IntMatrix:
    """
    Extends a basis of a saturated sublattice of Z^n to a basis of Z^n.
    :param basis: Rows spanning a saturated sublattice.
    :return: A unimodular matrix whose first rows are basis, in order.
    """
    n = basis.ncols
    snf = smith_normal_form(basis)
    if any(x != 1 for x in snf.diagonal[:snf.rank]):
        raise ValueError(f"Rows {basis} do not span a saturated sublattice.")
    complement = snf.v_inverse.select_rows(range(snf.rank, n))
    return basis.stack(complement)


def inverse_unimodular(a: IntMatrix) -> IntMatrix:
    """
    Inverts over QQ with sympy; the inverse of a unimodular matrix is integral.
    :raises ValueError: When a is not unimodular.
    """
    n = a.nrows
    if a.ncols != n:
        raise ValueError(f"Cannot invert a non square {a.shape} matrix.")
    if n == 0:
        return a
    try:
        inverse = DomainMatrix([[QQ(x) for x in row] for row in a.rows], (n, n), QQ).inv()
    except DMNonInvertibleMatrixError as ex:
        raise ValueError(f"Matrix {a} is singular.") from ex
    entries = inverse.to_Matrix().tolist()
    if any(x.q != 1 for row in entries for x in row):
        raise ValueError(f"Matrix {a} is not unimodular.")
    return IntMatrix.from_rows([[int(x) for x in row] for row in entries], n)
