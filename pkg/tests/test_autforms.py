import random
from fractions import Fraction
from itertools import product

import pytest
import sympy

from fanobeta import linalg
from fanobeta.arith import Poly
from fanobeta.autforms import (
    PENCIL_PRESETS,
    GroupDescription,
    PencilConfig,
    QForm,
    _branch_solve,
    _MPoly,
    case_normal_form,
    diagonal_pair_stabilizer,
    ker_h_group,
    lie_stabilizer_dim,
    pencil_char_poly,
    simdiag_check,
    trace_normalize,
)
from fanobeta.errors import InfiniteStabilizerError, InputError, UnsupportedShapeError

CASE1 = PENCIL_PRESETS["sample-case-1"]


def sympy_lie_dim(config: PencilConfig, use=("H", "Q", "Qp")) -> int:
    """Oracle: differentiate the actual polynomials and read off coefficients."""
    n = config.size
    xs = sympy.symbols(f"x0:{n}")
    X = sympy.Matrix(n, n, sympy.symbols(f"X0:{n * n}"))
    vec = sympy.Matrix(xs)
    Xx = X * vec

    def poly_of(F: QForm):
        M = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in F.matrix])
        return sympy.expand((vec.T * M * vec)[0])

    def D(f):
        return sympy.expand(sum(sympy.diff(f, xs[i]) * Xx[i] for i in range(n)))

    FQ, FQp = poly_of(config.FQ), poly_of(config.FQp)
    FH = sum(sympy.Rational(h.numerator, h.denominator) * x for h, x in zip(config.FH, xs))
    aux = []
    exprs = []
    if "H" in use:
        al = sympy.Symbol("alpha")
        aux.append(al)
        exprs.append(D(FH) - al * FH)
    if "Q" in use:
        be = sympy.Symbol("beta")
        aux.append(be)
        exprs.append(D(FQ) - be * FQ)
    if "Qp" in use:
        ga, de = sympy.symbols("gamma delta")
        ells = sympy.symbols(f"l0:{n}")
        aux += [ga, de, *ells]
        exprs.append(D(FQp) - ga * FQ - de * FQp - FH * sum(l * x for l, x in zip(ells, xs)))
    unknowns = list(X) + aux
    eqs = []
    for e in exprs:
        eqs += sympy.Poly(sympy.expand(e), *xs).coeffs()
    if not eqs:
        return n * n - 1
    A, _ = sympy.linear_eq_to_matrix(eqs, unknowns)
    full = len(unknowns) - A.rank()
    aux_only = len(aux) - A[:, n * n:].rank() if aux else 0
    return full - aux_only - 1


@pytest.mark.parametrize(
    "name, use, expected",
    [
        ("sample-case-1", ("H", "Q", "Qp"), 0),
        ("sample-case-1", (), 24),
        ("sample-case-1", ("Q",), 10),
        ("sample-case-1", ("H", "Q"), 6),
        ("sample-case-2", ("H", "Q", "Qp"), 0),
        ("sample-repeated", ("H", "Q", "Qp"), 1),
    ],
)
def test_lie_dim_against_sympy_oracle(name, use, expected):
    config = PENCIL_PRESETS[name]
    assert sympy_lie_dim(config, use) == expected
    assert lie_stabilizer_dim(config, use) == expected


def test_lie_dim_rejects_unknown_condition():
    with pytest.raises(InputError):
        lie_stabilizer_dim(CASE1, ("H", "R"))


def test_lie_dim_monotone_in_conditions():
    dims = [lie_stabilizer_dim(CASE1, use) for use in [(), ("Q",), ("H", "Q"), ("H", "Q", "Qp")]]
    assert dims == sorted(dims, reverse=True)


def random_unimodular(n: int, rng: random.Random):
    S = [list(r) for r in linalg.identity(n)]
    for _ in range(12):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        for row in S:
            row[i] += k * row[j]
    return linalg.to_matrix(S)


@pytest.mark.parametrize("seed", [1, 2, 3])
@pytest.mark.parametrize("name", ["sample-case-1", "sample-repeated"])
def test_lie_dim_coordinate_invariance(seed, name):
    config = PENCIL_PRESETS[name]
    S = random_unimodular(config.size, random.Random(seed))
    assert abs(linalg.det(S)) == 1
    moved = config.transformed(S)
    assert moved != config
    assert lie_stabilizer_dim(moved) == lie_stabilizer_dim(config)


def test_pencil_validation():
    with pytest.raises(InputError, match="nonzero"):
        PencilConfig(CASE1.FQ, (0,) * 5, CASE1.FQp)
    with pytest.raises(InputError, match="degenerate"):
        PencilConfig(QForm.diagonal([1, 1, 1, 1, 0]), CASE1.FH, CASE1.FQp)
    with pytest.raises(InputError, match="symmetric"):
        QForm([[1, 2], [0, 1]])


def test_from_monomials():
    F = QForm.from_monomials(3, {(0, 1): 1, (2, 2): 3})
    half = Fraction(1, 2)
    assert F.matrix == linalg.to_matrix([[0, half, 0], [half, 0, 0], [0, 0, 3]])
    assert case_normal_form(2, 3) == QForm.from_monomials(3, {(0, 1): 1, (2, 2): 1})


def check_group(G: GroupDescription, M, k):
    assert G.is_closed() and G.has_identity() and G.has_inverses()
    n = G.size
    for B in G.elements:
        # fixes the hyperplane pointwise up to scale, preserves the quadric
        cols = linalg.transpose(B)
        for j in range(n):
            if j != k:
                assert all(cols[j][i] == (B[j][j] if i == j else 0) for i in range(n))
        lhs = linalg.matmul(linalg.transpose(B), linalg.matmul(M, B))
        ratio = next(lhs[i][j] / M[i][j] for i in range(n) for j in range(n) if M[i][j] != 0)
        assert lhs == linalg.matscale(M, ratio)


@pytest.mark.parametrize(
    "form, k, expected",
    [
        (case_normal_form(1), 0, 2),
        (case_normal_form(2), 0, 1),
        (QForm.diagonal([1, 1]), 0, 2),
        (QForm.diagonal([2, 3, 5]), 1, 2),
    ],
)
def test_ker_h_orders(form, k, expected):
    G = ker_h_group(form, k)
    assert G.order == expected
    check_group(G, form.matrix, k)


def brute_force_ker_h(form: QForm, k: int, box=range(-3, 4)):
    """Oracle over a small integer box: scale fixed by lam = 1, entries of the free column searched."""
    n = form.size
    M = form.matrix
    found = set()
    for vals in product(box, repeat=n):
        if vals[k] == 0:
            continue
        B = [list(r) for r in linalg.identity(n)]
        for i in range(n):
            B[i][k] = Fraction(vals[i])
        B = linalg.to_matrix(B)
        lhs = linalg.matmul(linalg.transpose(B), linalg.matmul(M, B))
        if any(lhs[i][j] * M[0][0] != M[i][j] * lhs[0][0] for i in range(n) for j in range(n)):
            continue
        if all(x == 0 for row in lhs for x in row):
            continue
        found.add(linalg.normalize_projective(B))
    return found


@pytest.mark.parametrize(
    "form, k",
    [(QForm.diagonal([1, 1, 1]), 0), (QForm.diagonal([2, 3, 5]), 2), (QForm.diagonal([1, -1, 4]), 1)],
)
def test_ker_h_against_brute_force(form, k):
    assert set(ker_h_group(form, k).elements) == brute_force_ker_h(form, k)


def test_ker_h_case2_against_brute_force():
    form = case_normal_form(2, 3)
    M = form.matrix
    found = set()
    for a, s1, s2 in product(range(-3, 4), repeat=3):
        if a == 0:
            continue
        B = linalg.to_matrix([[a, 0, 0], [s1, 1, 0], [s2, 0, 1]])
        lhs = linalg.matmul(linalg.transpose(B), linalg.matmul(M, B))
        if lhs == linalg.matscale(M, lhs[2][2]) and lhs[2][2] != 0:
            found.add(linalg.normalize_projective(B))
    assert set(ker_h_group(form, 0).elements) == found == {linalg.identity(3)}


def test_ker_h_infinite_family():
    # x0 x1 on P^1: x0 -> a x0 with x1 fixed leaves a free
    with pytest.raises(InfiniteStabilizerError, match="infinite stabilizer"):
        ker_h_group(QForm.from_monomials(2, {(0, 1): 1}), 0)


def test_ker_h_rejects_unsupported_and_bad_input():
    M = QForm([[1, 0, 0], [0, 1, 1], [0, 1, 3]])
    with pytest.raises(UnsupportedShapeError):
        ker_h_group(M, 0)
    with pytest.raises(InputError):
        ker_h_group(case_normal_form(1), 7)
    with pytest.raises(InputError):
        ker_h_group(QForm.diagonal([1, 0, 1]), 0)


def test_solver_on_row_border_system():
    # the row-bordered matrix with lam = 1 and B B^T = mu I, written out by hand
    names = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "mu"]
    nv = len(names)
    a, b, c, d, e, f, g, h, i, mu = (_MPoly.var(k, nv) for k in range(nv))
    one = _MPoly.const(1, nv)
    eqs = [a * a + b * b + c * c + d * d + e * e - mu]
    eqs += [a * f + b, a * g + c, a * h + d, a * i + e]
    eqs += [x * x + one - mu for x in (f, g, h, i)]
    eqs += [f * g, f * h, f * i, g * h, g * i, h * i]
    notes = []
    sols = _branch_solve(eqs, nv, {}, names, notes, nonzero=frozenset({0}))
    # f = 0 and g = 0 branches meet again, so compare distinct solutions
    distinct = {tuple(s[k] for k in range(nv)) for s in sols}
    zeros = (0,) * 8
    assert distinct == {(1, *zeros, 1), (-1, *zeros, 1)}


def test_trace_normalize_examples():
    out = trace_normalize(QForm.diagonal([1, 2, 3, 5]))
    q = Fraction(11, 4)
    assert out == QForm.diagonal([1 - q, 2 - q, 3 - q, 5 - q])
    assert linalg.trace(out.matrix) == 0
    traceless = QForm.diagonal([1, -1, 2, -2])
    assert trace_normalize(traceless) == traceless
    assert trace_normalize(QForm.diagonal([1, 1, 1, 1])) == QForm.diagonal([0, 0, 0, 0])
    ref = QForm.diagonal([1, 1, 1, 1])
    assert trace_normalize(QForm.diagonal([1, 2, 3, 5]), ref) == out


@pytest.mark.parametrize(
    "entries, expected",
    [([1, 2], 2), ([1, 2, 3], 4), ([1, 2, 3, 5], 8), ([Fraction(-7, 4), Fraction(-3, 4), Fraction(1, 4), Fraction(9, 4)], 8)],
)
def test_diagonal_pair_stabilizer(entries, expected):
    G = diagonal_pair_stabilizer(QForm.diagonal(entries))
    n = len(entries)
    assert G.order == expected == 2 ** n // 2
    assert G.is_closed() and G.has_identity() and G.has_inverses()
    B = linalg.diag(entries)
    for P in G.elements:
        Pt = linalg.transpose(P)
        assert linalg.matmul(P, Pt) == linalg.identity(n)
        assert linalg.matmul(P, linalg.matmul(B, Pt)) == B


def test_diagonal_pair_stabilizer_preconditions():
    with pytest.raises(InputError, match="distinctness precondition violated"):
        diagonal_pair_stabilizer(QForm.diagonal([1, 1, 2, 3]))
    with pytest.raises(InputError):
        diagonal_pair_stabilizer(QForm([[1, 1], [1, 2]]))


@pytest.mark.parametrize(
    "Q2, expected",
    [
        (QForm.diagonal([1, 2, 3, 5]), True),
        (QForm.diagonal([1, 1, 1, 1]), False),
        (QForm.diagonal([1, 1, 2, 3]), False),
    ],
)
def test_simdiag(Q2, expected):
    assert simdiag_check(QForm.diagonal([1, 1, 1, 1]), Q2) is expected


def test_simdiag_rejects_degenerate_q1():
    with pytest.raises(InputError):
        simdiag_check(QForm.diagonal([1, 1, 1, 0]), QForm.diagonal([1, 2, 3, 5]))


def test_char_poly_against_sympy():
    Q1 = QForm([[2, 1, 0], [1, 3, 0], [0, 0, 1]])
    Q2 = QForm([[1, 0, 1], [0, 4, 0], [1, 0, -2]])
    x = sympy.symbols("x")
    expected = sympy.Poly((x * sympy.Matrix(Q1.matrix) - sympy.Matrix(Q2.matrix)).det(), x)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(expected.all_coeffs())]
    assert pencil_char_poly(Q1, Q2) == Poly(coeffs)
    assert pencil_char_poly(QForm.diagonal([1, 1, 1, 1]), QForm.diagonal([1, 2, 3, 5])) == Poly.from_roots([1, 2, 3, 5])
