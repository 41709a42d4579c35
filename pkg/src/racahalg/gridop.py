"""Exact linear algebra over grid-indexed function spaces.

Grids are finite, lexicographically ordered point sets.  A
:class:`StencilOperator` maps shift offsets to coefficient functions; it is
realized on a grid as a dense :class:`OperatorMatrix` of Fractions whose row
for point ``g`` holds ``coefficient(offset, g)`` in the column of
``g + offset``.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (
    ClosureError,
    DimensionError,
    NonDiagonalizableError,
    SingularError,
)
from .exactnum import as_rational, format_rational

ZERO = Fraction(0)
ONE = Fraction(1)


# --------------------------------------------------------------------------
# grids


class Grid:
    """An ordered finite set of integer points (ints or tuples of ints)."""

    def __init__(self, name, points):
        self.name = name
        self.points = tuple(points)
        self.index = {p: i for i, p in enumerate(self.points)}
        if len(self.index) != len(self.points):
            raise ValueError("grid points must be distinct")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point):
        return point in self.index

    def __eq__(self, other):
        return isinstance(other, Grid) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"Grid({self.name!r}, size={len(self)})"

    def shift(self, point, offset):
        if isinstance(point, tuple):
            return tuple(p + o for p, o in zip(point, offset))
        return point + offset

    def legend(self):
        return [list(p) if isinstance(p, tuple) else p for p in self.points]

    def permuted(self, order):
        """Same point set, rows reordered by ``order`` (a permutation of indices)."""
        return Grid(self.name + "*", [self.points[i] for i in order])


def segment(N):
    """The univariate grid {0, ..., N}."""
    return Grid(f"segment(N={N})", range(N + 1))


def triangle(N):
    """The bivariate variable grid {(x1, x2): 0 <= x1 <= x2 <= N}."""
    return Grid(
        f"triangle(N={N})",
        [(x1, x2) for x1 in range(N + 1) for x2 in range(x1, N + 1)],
    )


def degree_set(N):
    """The bivariate degree set {(n1, n2): n1, n2 >= 0, n1 + n2 <= N}."""
    return Grid(
        f"degrees(N={N})",
        [(n1, n2) for n1 in range(N + 1) for n2 in range(N + 1 - n1)],
    )


# --------------------------------------------------------------------------
# stencils


class StencilOperator:
    """A difference operator: offset -> coefficient function of the grid point.

    ``terms`` maps each offset (int or tuple) to a callable ``f(point)``
    returning a Fraction.  The operator acts as
    ``(S u)(g) = sum_o terms[o](g) * u(g + o)``.
    """

    def __init__(self, terms, name=""):
        self.terms = dict(terms)
        self.name = name

    @property
    def offsets(self):
        return tuple(self.terms)

    def coefficient(self, offset, point):
        f = self.terms.get(offset)
        return ZERO if f is None else as_rational(f(point))

    def __add__(self, other):
        terms = dict(self.terms)
        for off, g in other.terms.items():
            f = terms.get(off)
            terms[off] = g if f is None else _sum_fn(f, g)
        return StencilOperator(terms, f"({self.name}+{other.name})")

    def scaled(self, c):
        c = as_rational(c)
        return StencilOperator(
            {off: _scale_fn(f, c) for off, f in self.terms.items()},
            f"{c}*{self.name}",
        )

    def apply(self, values, grid):
        """Pointwise application to a dict/GridFunction over ``grid``."""
        out = {}
        for g in grid:
            acc = ZERO
            for off, f in self.terms.items():
                c = as_rational(f(g))
                if not c:
                    continue
                h = grid.shift(g, off)
                if h not in grid:
                    raise ClosureError(f"{self.name}: offset {off} leaves grid at {g}")
                acc += c * values[h]
            out[g] = acc
        return out

    def boundary_violations(self, grid):
        """Points/offsets whose shift leaves ``grid`` with a nonzero coefficient."""
        bad = []
        for g in grid:
            for off, f in self.terms.items():
                h = grid.shift(g, off)
                if h not in grid and as_rational(f(g)):
                    bad.append((g, off))
        return bad


def _sum_fn(f, g):
    return lambda p: as_rational(f(p)) + as_rational(g(p))


def _scale_fn(f, c):
    return lambda p: c * as_rational(f(p))


def diagonal_stencil(fn, zero_offset, name=""):
    return StencilOperator({zero_offset: fn}, name)


# --------------------------------------------------------------------------
# matrices


class OperatorMatrix:
    """Dense square matrix of Fractions indexed by a grid.

    Matrices are treated as immutable after construction.  ``grid`` gives the
    row/column legend; products require equal dimensions, not equal grids,
    so that operators on the variable grid can be compared with tables.
    """

    __slots__ = ("rows", "grid", "_nz")

    def __init__(self, rows, grid=None):
        self.rows = [[as_rational(v) for v in row] for row in rows]
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise DimensionError("operator matrices must be square")
        self.grid = grid
        self._nz = None

    @classmethod
    def _raw(cls, rows, grid):
        m = cls.__new__(cls)
        m.rows = rows
        m.grid = grid
        m._nz = None
        return m

    @classmethod
    def identity(cls, n, grid=None):
        return cls._raw([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], grid)

    @classmethod
    def zeros(cls, n, grid=None):
        return cls._raw([[ZERO] * n for _ in range(n)], grid)

    @classmethod
    def diagonal(cls, values, grid=None):
        values = [as_rational(v) for v in values]
        n = len(values)
        return cls._raw(
            [[values[i] if i == j else ZERO for j in range(n)] for i in range(n)], grid
        )

    @property
    def dimension(self):
        return len(self.rows)

    def nonzeros(self):
        if self._nz is None:
            self._nz = [[(j, v) for j, v in enumerate(row) if v] for row in self.rows]
        return self._nz

    def _check(self, other):
        if self.dimension != other.dimension:
            raise DimensionError(f"dimension mismatch: {self.dimension} vs {other.dimension}")

    def __add__(self, other):
        if not isinstance(other, OperatorMatrix):
            return self + self.identity(self.dimension) * as_rational(other)
        self._check(other)
        # most entries of banded operators are zero; skip the Fraction arithmetic
        return OperatorMatrix._raw(
            [[(a + b if a else b) if b else a for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.grid,
        )

    __radd__ = __add__

    def __neg__(self):
        return OperatorMatrix._raw([[-a if a else a for a in r] for r in self.rows], self.grid)

    def __sub__(self, other):
        if not isinstance(other, OperatorMatrix):
            return self + (-as_rational(other))
        self._check(other)
        return OperatorMatrix._raw(
            [[(a - b if a else -b) if b else a for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.grid,
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        c = as_rational(c)
        if not c:
            return self.zeros(self.dimension, self.grid)
        return OperatorMatrix._raw([[c * a if a else a for a in r] for r in self.rows], self.grid)

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other)
        n = self.dimension
        b_nz = other.nonzeros()
        out = []
        for arow in self.nonzeros():
            acc = [ZERO] * n
            for k, a in arow:
                for j, b in b_nz[k]:
                    acc[j] += a * b
            out.append(acc)
        return OperatorMatrix._raw(out, self.grid)

    def __eq__(self, other):
        return isinstance(other, OperatorMatrix) and self.rows == other.rows

    __hash__ = None

    def __pow__(self, k):
        if k != 2:
            raise ValueError("only squares are supported")
        return self @ self

    def apply(self, vector):
        return [sum((v * vector[j] for j, v in row), ZERO) for row in self.nonzeros()]

    def transpose(self):
        return OperatorMatrix._raw([list(c) for c in zip(*self.rows)], self.grid)

    def is_diagonal(self):
        return all(j == i for i, row in enumerate(self.nonzeros()) for j, _ in row)

    def diagonal_entries(self):
        return [self.rows[i][i] for i in range(self.dimension)]

    def to_json(self):
        return {
            "dimension": self.dimension,
            "grid": self.grid.legend() if self.grid is not None else None,
            "entries": [[format_rational(v) for v in row] for row in self.rows],
        }


def materialize(stencil, grid):
    """Realize ``stencil`` as a matrix on ``grid``.

    Raises ClosureError if a nonzero coefficient points off the grid.
    """
    n = len(grid)
    rows = [[ZERO] * n for _ in range(n)]
    for i, g in enumerate(grid.points):
        for off, f in stencil.terms.items():
            c = as_rational(f(g))
            if not c:
                continue
            h = grid.shift(g, off)
            j = grid.index.get(h)
            if j is None:
                raise ClosureError(
                    f"{stencil.name or 'stencil'}: nonzero coefficient {c} at {g} "
                    f"points off the grid via offset {off}"
                )
            rows[i][j] += c
    return OperatorMatrix._raw(rows, grid)


def commutator(a, b):
    return a @ b - b @ a


def anticommutator(a, b):
    return a @ b + b @ a


@dataclass(frozen=True)
class ZeroCheck:
    """Outcome of :func:`is_zero`: the verdict plus the worst residual entry."""

    zero: bool
    residual: Fraction = ZERO
    position: tuple = None
    point: object = None

    def __bool__(self):
        return self.zero


def is_zero(m):
    """True iff every entry is exactly 0; otherwise report the largest entry."""
    best = None
    for i, row in enumerate(m.nonzeros()):
        for j, v in row:
            if best is None or abs(v) > abs(best[0]):
                best = (v, i, j)
    if best is None:
        return ZeroCheck(True)
    v, i, j = best
    point = None
    if m.grid is not None:
        point = (m.grid.points[i], m.grid.points[j])
    return ZeroCheck(False, v, (i, j), point)


# --------------------------------------------------------------------------
# value tables and weights


def table_matrix(fn, degrees, grid):
    """Matrix V[d][g] = fn(d, g), rows indexed by ``degrees``, columns by ``grid``."""
    return [[as_rational(fn(d, g)) for g in grid] for d in degrees]


def solve_linear(a, b):
    """Solve a x = b exactly by Gauss-Jordan elimination; a is a list of rows.

    Returns None when the system is singular.
    """
    n = len(a)
    aug = [list(map(as_rational, row)) + [as_rational(bi)] for row, bi in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        prow = [v / p for v in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], prow)]
    return [row[n] for row in aug]


def inverse(a):
    """Exact inverse of a square list-of-rows matrix, or SingularError."""
    n = len(a)
    aug = [list(map(as_rational, row)) + [ONE if i == j else ZERO for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularError("value table is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        prow = [v / p for v in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], prow)]
    return [row[n:] for row in aug]


@dataclass
class GridFunction:
    """Exact values on every point of a grid."""

    grid: Grid
    values: dict

    def __getitem__(self, point):
        return self.values[point]

    def as_list(self):
        return [self.values[p] for p in self.grid]

    def to_json(self):
        return {
            "grid": self.grid.legend(),
            "values": [format_rational(self.values[p]) for p in self.grid],
        }


def solve_weight(table, degrees, grid, origin_index=0):
    """Find diagonal omega (over ``grid``) and sigma (over ``degrees``) with
    V diag(omega) V^T = diag(1/sigma), normalized so omega at ``origin_index`` is 1.

    ``table`` is a list of rows: row d holds the values of degree ``d`` on
    the grid.  Orthogonality of the rows against a diagonal weight is the
    linear system sum_g omega_g V[d][g] V[d'][g] = 0 for d != d'; it is solved
    by exact elimination, never by root extraction.
    """
    n = len(table)
    if n != len(grid) or any(len(r) != n for r in table):
        raise DimensionError("value table must be square")
    v = [list(map(as_rational, r)) for r in table]
    inv = inverse(v)  # raises SingularError

    # V W V^T = S^{-1} with W = diag(omega), S = diag(sigma) means
    # V^{-1} = W V^T S, i.e. inv[g][d] = omega_g V[d][g] sigma_d.  A row d0
    # with no zero entry therefore gives omega up to scale from one column
    # of the inverse.  Otherwise fall back to the homogeneous system in
    # s_d = 1/sigma_d: sum_d inv[g][d] inv[h][d] s_d = 0 for g < h.
    d0 = next((d for d in range(n) if all(v[d])), None)
    if d0 is not None:
        omega = [inv[g][d0] / v[d0][g] for g in range(n)]
        s = [sum((omega[g] * v[d][g] ** 2 for g in range(n)), ZERO) for d in range(n)]
    else:
        eqs = []
        for gi in range(n):
            for hi in range(gi + 1, n):
                row = [inv[gi][d] * inv[hi][d] for d in range(n)]
                if any(row):
                    eqs.append(row)
        s = _nullspace_vector(eqs, n)
        if s is None:
            raise NonDiagonalizableError("no diagonal weight orthogonalizes the table")
        omega = [sum((inv[g][d] ** 2 * s[d] for d in range(n)), ZERO) for g in range(n)]
    if not omega[origin_index]:
        raise NonDiagonalizableError("weight vanishes at the normalization point")
    scale = omega[origin_index]
    omega = [w / scale for w in omega]
    inv_sigma = [sd / scale for sd in s]
    if any(not x for x in inv_sigma):
        raise NonDiagonalizableError("degenerate sigma")
    sigma = [1 / x for x in inv_sigma]
    # exact congruence check
    for d in range(n):
        for e in range(d, n):
            val = sum((v[d][g] * omega[g] * v[e][g] for g in range(n)), ZERO)
            want = inv_sigma[d] if d == e else ZERO
            if val != want:
                raise NonDiagonalizableError(
                    f"congruence fails at degrees {degrees.points[d]}, {degrees.points[e]}"
                )
    return (
        GridFunction(grid, dict(zip(grid.points, omega))),
        GridFunction(degrees, dict(zip(degrees.points, sigma))),
    )


def _nullspace_vector(eqs, n):
    """A nonzero solution of the homogeneous system.

    With a 1-D nullspace the answer is unique up to scale.  A larger
    nullspace means the table splits into blocks with independent scales
    (the identity table is the extreme case); each free scale is set to 1.
    """
    rows = [list(r) for r in eqs]
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    sol = [ZERO] * n
    for fc in free:
        sol[fc] = ONE
    for i, pc in enumerate(pivots):
        sol[pc] = -sum((rows[i][fc] for fc in free), ZERO)
    return sol


def lattice_offsets(dim):
    """All offsets in {-1, 0, 1}^dim (or {-1, 0, 1} for dim 1)."""
    if dim == 1:
        return (-1, 0, 1)
    return tuple(product((-1, 0, 1), repeat=dim))
