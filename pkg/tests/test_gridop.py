import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from racahalg.errors import ClosureError, DimensionError, NonDiagonalizableError, SingularError
from racahalg.gridop import (
    GridFunction,
    OperatorMatrix,
    StencilOperator,
    anticommutator,
    commutator,
    degree_set,
    inverse,
    is_zero,
    materialize,
    segment,
    solve_linear,
    solve_weight,
    triangle,
)
from racahalg.racah1 import SU11Weights, beta_from_nu, gauge_omega, gauge_sigma, lambda1_stencil, normalized_table, racah1_table
from racahalg.racah2 import params_from_nu, racah2_table

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=9)


def square(n):
    return st.lists(st.lists(fracs, min_size=n, max_size=n), min_size=n, max_size=n).map(OperatorMatrix)


def test_grid_sizes_and_order():
    for N in range(6):
        assert len(triangle(N)) == len(degree_set(N)) == (N + 1) * (N + 2) // 2
    assert triangle(2).points == ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
    assert degree_set(2).points == ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0))


def test_identity_stencil_materializes_to_identity():
    st_id = StencilOperator({(0, 0): lambda g: 1})
    assert materialize(st_id, triangle(3)) == OperatorMatrix.identity(10)


def test_closure_error_when_leaving_grid():
    right = StencilOperator({1: lambda x: 1}, "T")
    with pytest.raises(ClosureError):
        materialize(right, segment(2))
    assert right.boundary_violations(segment(2)) == [(2, 1)]


def test_commutator_examples():
    a = OperatorMatrix([[0, 1], [0, 0]])
    b = OperatorMatrix([[0, 0], [1, 0]])
    assert commutator(a, b) == OperatorMatrix([[1, 0], [0, -1]])
    assert anticommutator(a, b) == OperatorMatrix.identity(2)
    with pytest.raises(DimensionError):
        commutator(a, OperatorMatrix.identity(3))


@given(square(3))
def test_commutator_trivial_cases(a):
    assert is_zero(commutator(a, a))
    assert is_zero(commutator(a, OperatorMatrix.identity(3)))


@given(square(3), square(3), square(3))
def test_matrix_arithmetic_is_exact(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    assert (a - b) + b == a
    assert commutator(a, b) == -commutator(b, a)


def test_is_zero_reports_worst_entry():
    assert is_zero(OperatorMatrix.zeros(4))
    check = is_zero(OperatorMatrix.identity(3))
    assert not check and check.residual == 1
    m = OperatorMatrix([[0, Fraction(-7, 2)], [3, 0]], segment(1))
    check = is_zero(m)
    assert check.residual == Fraction(-7, 2)
    assert check.position == (0, 1) and check.point == (0, 1)


def _random_stencil(rng, offsets):
    coeffs = {o: {} for o in offsets}

    def make(o):
        def f(g):
            if g not in coeffs[o]:
                coeffs[o][g] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            return coeffs[o][g]

        return f

    return StencilOperator({o: make(o) for o in offsets})


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_stencil_and_matrix_application_agree(seed, N):
    rng = random.Random(seed)
    grid = triangle(N)
    # zero coefficients at the boundary keep the stencil closed
    raw = _random_stencil(rng, [(0, 0), (1, 0), (0, 1), (-1, 1)])
    closed = StencilOperator(
        {o: (lambda o, f: lambda g: f(g) if grid.shift(g, o) in grid else 0)(o, f) for o, f in raw.terms.items()}
    )
    values = {g: Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for g in grid}
    u = GridFunction(grid, values)
    pointwise = closed.apply(values, grid)
    M = materialize(closed, grid)
    assert M.apply(u.as_list()) == [pointwise[g] for g in grid]


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_materialize_is_linear(seed, N):
    rng = random.Random(seed)
    grid = segment(N)

    def closed(s):
        return StencilOperator({o: (lambda o, f: lambda x: f(x) if 0 <= x + o <= N else 0)(o, f) for o, f in s.terms.items()})

    s1 = closed(_random_stencil(rng, [-1, 0, 1]))
    s2 = closed(_random_stencil(rng, [0, 1]))
    assert materialize(s1 + s2, grid) == materialize(s1, grid) + materialize(s2, grid)
    assert materialize(s1.scaled(Fraction(3, 7)), grid) == materialize(s1, grid) * Fraction(3, 7)


def test_materialized_lambda_matches_pointwise_script():
    p = beta_from_nu(SU11Weights.of(["3/4", "5/6", "7/8"]), 3)
    s = lambda1_stencil(p)
    M = materialize(s, segment(3))
    for row in racah1_table(p):
        by_hand = []
        for x in range(4):
            acc = s.terms[0](x) * row[x]
            if x < 3:
                acc += s.terms[1](x) * row[x + 1]
            if x > 0:
                acc += s.terms[-1](x) * row[x - 1]
            by_hand.append(acc)
        assert M.apply(row) == by_hand


@given(st.lists(st.lists(fracs, min_size=3, max_size=3), min_size=3, max_size=3), st.lists(fracs, min_size=3, max_size=3))
def test_linear_solve_and_inverse(a, b):
    x = solve_linear(a, b)
    if x is None:
        with pytest.raises(SingularError):
            inverse(a)
        return
    assert [sum(r[j] * x[j] for j in range(3)) for r in a] == b
    inv = inverse(a)
    assert OperatorMatrix(a) @ OperatorMatrix(inv) == OperatorMatrix.identity(3)


def test_weight_of_identity_table():
    g = triangle(2)
    omega, sigma = solve_weight(OperatorMatrix.identity(6).rows, degree_set(2), g)
    assert omega.as_list() == [1] * 6
    assert sigma.as_list() == [1] * 6


def test_singular_table():
    with pytest.raises(SingularError):
        solve_weight([[1, 1], [2, 2]], segment(1), segment(1))


def test_non_orthogonalizable_table():
    with pytest.raises(NonDiagonalizableError):
        solve_weight([[1, 1, 1], [1, 2, 3], [1, 2, 5]], segment(2), segment(2))


@given(st.sampled_from(["3/5,3/4,1", "3/4,1,7/6", "7/6,3/2,3/5", "1,1,1"]), st.integers(1, 6))
def test_univariate_weight_matches_closed_form(nu, N):
    w = SU11Weights.of(nu.split(","))
    p = beta_from_nu(w, N)
    omega, sigma = solve_weight(normalized_table(p), segment(N), segment(N))
    assert omega.as_list() == [gauge_omega(x, w, N) for x in range(N + 1)]
    assert sigma.as_list() == [gauge_sigma(n, w, N) for n in range(N + 1)]


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_bivariate_weight_positive_and_stable_under_reindexing(seed, N):
    w = SU11Weights.of(["3/5", "3/4", "1", "7/6"])
    p = params_from_nu(w, N)
    V = racah2_table(p)
    G, D = triangle(N), degree_set(N)
    omega, sigma = solve_weight(V, D, G)
    assert all(v > 0 for v in omega.as_list() + sigma.as_list())
    # the same table with its grid columns shuffled (origin kept first)
    rng = random.Random(seed)
    order = [0] + rng.sample(range(1, len(G)), len(G) - 1)
    Gp = G.permuted(order)
    Vp = [[row[i] for i in order] for row in V]
    omega_p, sigma_p = solve_weight(Vp, D, Gp)
    assert all(omega_p[g] == omega[g] for g in G)
    assert sigma_p.as_list() == sigma.as_list()


def test_matrix_json_shape():
    m = OperatorMatrix([[1, Fraction(1, 2)], [0, -3]], segment(1))
    assert m.to_json() == {"dimension": 2, "grid": [0, 1], "entries": [["1", "1/2"], ["0", "-3"]]}
