"""Automorphisms of a quadric ``Q`` preserving a curve ``C = Q n H n Q'``.

Two independent routes to finiteness are provided:

* :func:`lie_stabilizer_dim`: dimension of the Lie algebra of the
  stabilizer inside ``PGL(n+1)``, from one exact linear system. Zero means
  the identity component is trivial.
* :func:`ker_h_group` and :func:`diagonal_pair_stabilizer`: explicit
  enumeration of the two outer terms of
  ``1 -> Ker_H -> Aut(Q, C) -> Aut(H, C)``.

A transformation acts on points by ``x -> B x``. It preserves ``V(M)``
iff ``B^T M B = mu M`` for some scalar ``mu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from typing import Iterable, Mapping, Sequence

from . import linalg
from .arith import Poly, as_rational, format_rational, squarefree_check
from .errors import InfiniteStabilizerError, InputError, UnsupportedShapeError
from .linalg import Matrix

__all__ = [
    "QForm",
    "PencilConfig",
    "GroupDescription",
    "PENCIL_PRESETS",
    "case_normal_form",
    "lie_stabilizer_dim",
    "ker_h_group",
    "trace_normalize",
    "diagonal_pair_stabilizer",
    "simdiag_check",
    "pencil_char_poly",
    "hyperplane_basis",
    "restrict_form",
]


@dataclass(frozen=True)
class QForm:
    """Quadratic form ``x^T M x`` with ``M`` symmetric and rational."""

    matrix: Matrix

    def __post_init__(self) -> None:
        m = linalg.to_matrix(self.matrix)
        n = len(m)
        if n == 0 or any(len(row) != n for row in m):
            raise InputError("quadratic form matrix must be square and nonempty")
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise InputError(f"quadratic form matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "matrix", m)

    @property
    def size(self) -> int:
        return len(self.matrix)

    @classmethod
    def diagonal(cls, entries: Sequence) -> QForm:
        return cls(linalg.diag([as_rational(e) for e in entries]))

    @classmethod
    def from_monomials(cls, n: int, coeffs: Mapping[tuple[int, int], object]) -> QForm:
        """Build from ``{(i, j): coefficient of x_i x_j}``."""
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), c in coeffs.items():
            c = as_rational(c)
            if i == j:
                m[i][i] += c
            else:
                m[i][j] += c / 2
                m[j][i] += c / 2
        return cls(m)

    def det(self) -> Fraction:
        return linalg.det(self.matrix)

    def is_diagonal(self) -> bool:
        n = self.size
        return all(self.matrix[i][j] == 0 for i in range(n) for j in range(n) if i != j)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self.matrix]


@dataclass(frozen=True)
class PencilConfig:
    """``C`` cut out by ``F_Q``, the linear form ``F_H`` and ``F_{Q'}``."""

    FQ: QForm
    FH: tuple[Fraction, ...]
    FQp: QForm

    def __post_init__(self) -> None:
        fh = tuple(as_rational(x) for x in self.FH)
        object.__setattr__(self, "FH", fh)
        n = self.FQ.size
        if len(fh) != n or self.FQp.size != n:
            raise InputError("F_Q, F_H and F_Q' must live on the same projective space")
        if all(x == 0 for x in fh):
            raise InputError("F_H must be nonzero")
        if self.FQ.det() == 0:
            raise InputError("F_Q is degenerate")

    @property
    def size(self) -> int:
        return self.FQ.size

    def transformed(self, S: Matrix) -> PencilConfig:
        """Substitute ``x = S y`` into all three forms."""
        St = linalg.transpose(S)
        return PencilConfig(
            QForm(linalg.matmul(St, linalg.matmul(self.FQ.matrix, S))),
            tuple(sum((St[i][j] * self.FH[j] for j in range(self.size)), Fraction(0))
                  for i in range(self.size)),
            QForm(linalg.matmul(St, linalg.matmul(self.FQp.matrix, S))),
        )

    def to_json(self) -> dict:
        return {
            "FQ": self.FQ.to_json(),
            "FH": [format_rational(x) for x in self.FH],
            "FQp": self.FQp.to_json(),
        }


def _square_sum(n: int) -> QForm:
    return QForm(linalg.identity(n))


def _case2_form(n: int) -> QForm:
    coeffs: dict[tuple[int, int], int] = {(0, 1): 1}
    coeffs.update({(i, i): 1 for i in range(2, n)})
    return QForm.from_monomials(n, coeffs)


def case_normal_form(case: int, n: int = 5) -> QForm:
    """Quadric in the coordinates where ``H = V(x_0)``: sum of squares (case 1)
    or ``x_0 x_1 + x_2^2 + ... `` (case 2, ``H`` a cone)."""
    if case == 1:
        return _square_sum(n)
    if case == 2:
        return _case2_form(n)
    raise InputError(f"unknown case {case}")


PENCIL_PRESETS: dict[str, PencilConfig] = {
    # H smooth
    "sample-case-1": PencilConfig(
        _square_sum(5), (1, 0, 0, 0, 0), QForm.diagonal([0, 2, 3, 5, 7])
    ),
    # H a cone with vertex e_1, and Q'(e_1) != 0
    "sample-case-2": PencilConfig(
        _case2_form(5), (1, 0, 0, 0, 0), QForm.diagonal([0, 1, 2, 3, 5])
    ),
    # C singular: two equal eigenvalues in the restricted pencil
    "sample-repeated": PencilConfig(
        _square_sum(5), (1, 0, 0, 0, 0), QForm.diagonal([0, 2, 2, 3, 5])
    ),
}


# --- Lie algebra of the stabilizer -----------------------------------------

LIE_CONDITIONS = ("H", "Q", "Qp")


def _monomials(n: int) -> list[tuple[int, int]]:
    return list(combinations_with_replacement(range(n), 2))


def lie_stabilizer_dim(config: PencilConfig, use: Iterable[str] = LIE_CONDITIONS) -> int:
    """Dimension of the Lie algebra of ``Stab(Q, C)`` in ``pgl(n+1)``.

    Unknowns are the ``(n+1)^2`` entries of ``X`` followed by the
    multipliers. A matrix ``X`` acts on forms by ``D_X F = grad F . X x``,
    so ``D_X(x^T M x) = x^T (M X + X^T M) x`` and ``D_X(h.x) = (X^T h).x``.
    Conditions (any subset of ``use``):

    * ``H``:  ``D_X F_H = alpha F_H``
    * ``Q``:  ``D_X F_Q = beta F_Q``
    * ``Qp``: ``D_X F_Q' = gamma F_Q + delta F_Q' + F_H * ell``

    The answer is the kernel dimension projected to the ``X`` block, minus
    one for the scalar matrices.
    """
    use = set(use)
    unknown = use - set(LIE_CONDITIONS)
    if unknown:
        raise InputError(f"unknown Lie conditions: {sorted(unknown)}")
    n = config.size
    nx = n * n
    M = config.FQ.matrix
    Mp = config.FQp.matrix
    h = config.FH

    aux_names: list[str] = []
    if "H" in use:
        aux_names.append("alpha")
    if "Q" in use:
        aux_names.append("beta")
    if "Qp" in use:
        aux_names += ["gamma", "delta"] + [f"ell{i}" for i in range(n)]
    ncols = nx + len(aux_names)
    col = {name: nx + i for i, name in enumerate(aux_names)}

    def xcol(i: int, j: int) -> int:
        return i * n + j

    rows: list[list[Fraction]] = []

    def derivation_rows(F: Matrix) -> dict[tuple[int, int], list[Fraction]]:
        # coefficient of x_i x_j in x^T S x, S = F X + X^T F: S_ii, or 2 S_ij for i < j
        out = {}
        for i, j in _monomials(n):
            row = [Fraction(0)] * ncols
            weight = 1 if i == j else 2
            for k in range(n):
                # (F X)_ij = sum_k F_ik X_kj ; (X^T F)_ij = sum_k X_ki F_kj
                row[xcol(k, j)] += weight * F[i][k]
                row[xcol(k, i)] += weight * F[k][j]
            out[(i, j)] = row
        return out

    def form_coeff(F: Matrix, i: int, j: int) -> Fraction:
        return F[i][i] if i == j else 2 * F[i][j]

    if "H" in use:
        for j in range(n):
            row = [Fraction(0)] * ncols
            for i in range(n):
                row[xcol(i, j)] += h[i]
            row[col["alpha"]] -= h[j]
            rows.append(row)
    if "Q" in use:
        for (i, j), row in derivation_rows(M).items():
            row[col["beta"]] -= form_coeff(M, i, j)
            rows.append(row)
    if "Qp" in use:
        for (i, j), row in derivation_rows(Mp).items():
            row[col["gamma"]] -= form_coeff(M, i, j)
            row[col["delta"]] -= form_coeff(Mp, i, j)
            # (h.x)(ell.x): coefficient h_i ell_j + h_j ell_i, or h_i ell_i on the diagonal
            if i == j:
                row[col[f"ell{i}"]] -= h[i]
            else:
                row[col[f"ell{j}"]] -= h[i]
                row[col[f"ell{i}"]] -= h[j]
            rows.append(row)

    full_kernel = ncols - linalg.rank(rows)
    aux_rows = [r[nx:] for r in rows]
    aux_kernel = len(aux_names) - linalg.rank(aux_rows)
    return full_kernel - aux_kernel - 1


# --- finite groups ----------------------------------------------------------


@dataclass(frozen=True)
class GroupDescription:
    """Finite subgroup of ``PGL(n+1, Q)`` with normalized representatives."""

    elements: tuple[Matrix, ...]
    generators: tuple[Matrix, ...]
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements[0])

    @classmethod
    def from_elements(cls, mats: Iterable[Matrix], notes: Iterable[str] = ()) -> GroupDescription:
        elems = sorted({linalg.normalize_projective(m) for m in mats})
        return cls(tuple(elems), tuple(_generators(elems)), tuple(notes))

    def product(self, A: Matrix, B: Matrix) -> Matrix:
        return linalg.normalize_projective(linalg.matmul(A, B))

    def is_closed(self) -> bool:
        elems = set(self.elements)
        return all(self.product(a, b) in elems for a in self.elements for b in self.elements)

    def has_identity(self) -> bool:
        return linalg.identity(self.size) in set(self.elements)

    def has_inverses(self) -> bool:
        elems = set(self.elements)
        return all(linalg.normalize_projective(linalg.inverse(a)) in elems for a in self.elements)

    def to_json(self) -> dict:
        def mat(m: Matrix) -> list[list[str]]:
            return [[format_rational(x) for x in row] for row in m]

        return {
            "order": self.order,
            "elements": [mat(m) for m in self.elements],
            "generators": [mat(m) for m in self.generators],
            "notes": list(self.notes),
        }


def _closure(gens: Sequence[Matrix], n: int) -> set[Matrix]:
    ident = linalg.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = linalg.normalize_projective(linalg.matmul(a, g))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


def _generators(elements: Sequence[Matrix]) -> list[Matrix]:
    if not elements:
        return []
    n = len(elements[0])
    gens: list[Matrix] = []
    span = {linalg.identity(n)}
    for e in elements:
        if e not in span:
            gens.append(e)
            span = _closure(gens, n)
    return gens


# --- a small polynomial-system solver for the Ker_H equations ---------------

_Mono = tuple[int, ...]


class _MPoly:
    """Sparse multivariate polynomial over Q; only what the solver needs."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Mapping[_Mono, Fraction], nvars: int):
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self.nvars = nvars

    @classmethod
    def const(cls, c, nvars: int) -> _MPoly:
        return cls({(0,) * nvars: Fraction(c)}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> _MPoly:
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): Fraction(1)}, nvars)

    def __add__(self, other: _MPoly) -> _MPoly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return _MPoly(out, self.nvars)

    def __sub__(self, other: _MPoly) -> _MPoly:
        return self + other.scale(-1)

    def scale(self, k) -> _MPoly:
        return _MPoly({m: k * c for m, c in self.terms.items()}, self.nvars)

    def __mul__(self, other: _MPoly) -> _MPoly:
        out: dict[_Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return _MPoly(out, self.nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> list[int]:
        return sorted({i for m in self.terms for i, e in enumerate(m) if e})

    def subs(self, values: Mapping[int, Fraction]) -> _MPoly:
        out: dict[_Mono, Fraction] = {}
        for m, c in self.terms.items():
            e = list(m)
            for i, v in values.items():
                if e[i]:
                    c = c * v ** e[i]
                    e[i] = 0
            key = tuple(e)
            out[key] = out.get(key, Fraction(0)) + c
        return _MPoly(out, self.nvars)

    def subs_poly(self, i: int, expr: _MPoly) -> _MPoly:
        """Replace variable ``i`` by the polynomial ``expr``."""
        out = _MPoly({}, self.nvars)
        for m, c in self.terms.items():
            e = list(m)
            k, e[i] = e[i], 0
            term = _MPoly({tuple(e): c}, self.nvars)
            for _ in range(k):
                term = term * expr
            out = out + term
        return out

    def univariate(self, i: int) -> Poly:
        deg = max(m[i] for m in self.terms)
        coeffs = [Fraction(0)] * (deg + 1)
        for m, c in self.terms.items():
            coeffs[m[i]] += c
        return Poly(coeffs)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _rational_roots(p: Poly) -> tuple[list[Fraction], bool]:
    """Rational roots of a degree 1 or 2 polynomial; flag set if some root is irrational."""
    if p.degree == 1:
        return [-p.coeffs[0] / p.coeffs[1]], False
    if p.degree == 2:
        c, b, a = p.coeffs
        disc = b * b - 4 * a * c
        root = _rational_sqrt(disc)
        if root is None:
            return [], True
        return sorted({(-b + root) / (2 * a), (-b - root) / (2 * a)}), False
    raise UnsupportedShapeError(f"univariate equation of degree {p.degree} in Ker_H system")


def _linear_pivot(e: _MPoly) -> tuple[int, _MPoly] | None:
    """A variable occurring only as ``c * v`` with constant ``c``, and ``v`` in terms of the rest."""
    for v in e.variables():
        hits = [(m, c) for m, c in e.terms.items() if m[v]]
        if len(hits) == 1 and sum(hits[0][0]) == 1:
            c = hits[0][1]
            rest = _MPoly({m: x for m, x in e.terms.items() if not m[v]}, e.nvars)
            return v, rest.scale(-1 / c)
    return None


def _branch_solve(
    eqs: Sequence[_MPoly],
    nvars: int,
    fixed: dict[int, Fraction],
    names: Sequence[str],
    notes: list[str],
    nonzero: frozenset[int] = frozenset(),
    elim: tuple[tuple[int, _MPoly], ...] = (),
) -> list[dict[int, Fraction]]:
    """Branching solver for systems of products-equal-zero and univariate quadratics.

    Rules, in order: solve a univariate equation over Q and branch on its
    roots; split a monomial equation into one branch per factor; eliminate a
    variable that occurs linearly with constant coefficient. Branches that
    set a variable in ``nonzero`` to zero are dropped.
    """
    if any(fixed.get(v) == 0 for v in nonzero):
        return []
    live = []
    for e in eqs:
        e = e.subs(fixed)
        if e.is_zero():
            continue
        if not e.variables():
            return []  # nonzero constant: inconsistent branch
        live.append(e)

    def recurse(extra_fixed: dict[int, Fraction]) -> list[dict[int, Fraction]]:
        return _branch_solve(live, nvars, {**fixed, **extra_fixed}, names, notes, nonzero, elim)

    if not live:
        done = set(fixed) | {v for v, _ in elim}
        free = [names[i] for i in range(nvars) if i not in done]
        if free:
            raise InfiniteStabilizerError(
                f"infinite stabilizer: free parameter(s) {', '.join(free)} survive all equations"
            )
        sol = dict(fixed)
        for v, expr in reversed(elim):
            value = expr.subs(sol)
            sol[v] = value.terms.get((0,) * nvars, Fraction(0))
        if any(sol[v] == 0 for v in nonzero):
            return []
        return [sol]
    for e in live:
        vs = e.variables()
        if len(vs) == 1:
            roots, irrational = _rational_roots(e.univariate(vs[0]))
            if irrational:
                notes.append(f"branch discarded: {names[vs[0]]} has no rational solution")
            out = []
            for r in roots:
                out += recurse({vs[0]: r})
            return out
    for e in live:
        if len(e.terms) == 1:
            out = []
            for v in e.variables():
                out += recurse({v: Fraction(0)})
            return out
    for e in live:
        pivot = _linear_pivot(e)
        if pivot is not None:
            v, expr = pivot
            reduced = [x.subs_poly(v, expr) for x in live]
            return _branch_solve(
                reduced, nvars, fixed, names, notes, nonzero, elim + ((v, expr),)
            )
    raise UnsupportedShapeError("Ker_H system has no univariate, monomial or linear equation left")


def _check_case_shape(M: Matrix, k: int) -> None:
    n = len(M)
    for i in range(n):
        for j in range(n):
            if i != j and i != k and j != k and M[i][j] != 0:
                raise UnsupportedShapeError(
                    "form must be diagonal outside the fixed coordinate "
                    f"(entry ({i}, {j}) is nonzero)"
                )


def ker_h_group(caseForm: QForm, hyperplane: int) -> GroupDescription:
    """Projective transformations fixing ``{x_k = 0}`` pointwise and preserving ``V(M)``.

    Such a ``B`` has ``B e_j = lam e_j`` for ``j != k`` and a free column
    ``B e_k = a e_k + sum_j s_j e_j``. ``lam = 0`` makes ``B`` singular, so
    the projective scale is fixed by ``lam = 1``. The unknowns are then
    ``a``, the ``s_j`` and ``mu`` in ``B^T M B = mu M``.
    """
    n = caseForm.size
    k = hyperplane
    if not 0 <= k < n:
        raise InputError(f"hyperplane coordinate {k} out of range for P^{n - 1}")
    M = caseForm.matrix
    if caseForm.det() == 0:
        raise InputError("case form is degenerate")
    _check_case_shape(M, k)

    others = [j for j in range(n) if j != k]
    names = ["a"] + [f"s{j}" for j in others] + ["mu"]
    nv = len(names)
    a = _MPoly.var(0, nv)
    s = {j: _MPoly.var(1 + idx, nv) for idx, j in enumerate(others)}
    mu = _MPoly.var(nv - 1, nv)
    one = _MPoly.const(1, nv)
    zero = _MPoly.const(0, nv)

    B = [[zero] * n for _ in range(n)]
    for j in others:
        B[j][j] = one
        B[j][k] = s[j]
    B[k][k] = a

    def c(x) -> _MPoly:
        return _MPoly.const(x, nv)

    # B^T M B - mu M, upper triangle
    MB = [[sum((B[l][j] * c(M[i][l]) for l in range(n)), zero) for j in range(n)] for i in range(n)]
    eqs = []
    for i in range(n):
        for j in range(i, n):
            entry = sum((B[l][i] * MB[l][j] for l in range(n)), zero)
            eqs.append(entry - mu.scale(M[i][j]))

    notes = ["scale fixed by lam = 1 (lam = 0 gives a singular matrix)"]
    # det B = a once lam = 1
    solutions = _branch_solve(eqs, nv, {}, names, notes, nonzero=frozenset({0}))

    mats = []
    for sol in solutions:
        Bn = [[Fraction(0)] * n for _ in range(n)]
        for j in others:
            Bn[j][j] = Fraction(1)
            Bn[j][k] = sol[1 + others.index(j)]
        Bn[k][k] = sol[0]
        Bm = linalg.to_matrix(Bn)
        if linalg.det(Bm) == 0:
            notes.append("singular solution discarded")
            continue
        lhs = linalg.matmul(linalg.transpose(Bm), linalg.matmul(M, Bm))
        assert lhs == linalg.matscale(M, sol[nv - 1]), "solver returned a non-solution"
        mats.append(Bm)
    return GroupDescription.from_elements(mats, notes)


# --- pencils in P^3 ---------------------------------------------------------


def trace_normalize(B: QForm, reference: QForm | None = None) -> QForm:
    """``B - (Tr(B)/N) * reference``, with ``reference`` the identity by default."""
    n = B.size
    ref = reference.matrix if reference is not None else linalg.identity(n)
    return QForm(linalg.matadd(B.matrix, ref, -linalg.trace(B.matrix) / n))


def _signed_permutations(n: int):
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            P = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                P[i][perm[i]] = Fraction(signs[i])
            yield perm, linalg.to_matrix(P)


def _preserves_pair(P: Matrix, B: Matrix) -> bool:
    Pt = linalg.transpose(P)
    n = len(P)
    return linalg.matmul(P, Pt) == linalg.identity(n) and linalg.matmul(P, linalg.matmul(B, Pt)) == B


def diagonal_pair_stabilizer(B: QForm) -> GroupDescription:
    """``{P : P P^T = I, P B P^T = B}`` modulo scalars, for ``B`` diagonal with distinct entries.

    The sign matrices are listed directly and cross-checked against a brute
    force over all signed permutation matrices.
    """
    if not B.is_diagonal():
        raise InputError("diagonal_pair_stabilizer needs a diagonal form")
    n = B.size
    entries = [B.matrix[i][i] for i in range(n)]
    if len(set(entries)) != n:
        raise InputError(
            "distinctness precondition violated (stabilizer may be positive-dimensional)"
        )
    signs = [
        linalg.diag((1,) + rest) for rest in product((1, -1), repeat=n - 1)
    ]
    group = GroupDescription.from_elements(signs)

    survivors = [(perm, P) for perm, P in _signed_permutations(n) if _preserves_pair(P, B.matrix)]
    if any(perm != tuple(range(n)) for perm, _ in survivors):
        raise AssertionError("a non-trivial permutation survived")
    brute = {linalg.normalize_projective(P) for _, P in survivors}
    if brute != set(group.elements):
        raise AssertionError("sign enumeration disagrees with signed-permutation brute force")
    return group


def pencil_char_poly(Q1: QForm, Q2: QForm) -> Poly:
    """``det(x Q1 - Q2)`` as a polynomial in ``x``."""
    n = Q1.size
    if Q2.size != n:
        raise InputError("pencil members must have the same size")
    A = [[Poly([-Q2.matrix[i][j], Q1.matrix[i][j]]) for j in range(n)] for i in range(n)]
    return linalg.poly_det(A)


def simdiag_check(Q1: QForm, Q2: QForm) -> bool:
    """True iff ``det(x Q1 - Q2)`` is squarefree.

    Over C this certifies that the pair diagonalizes simultaneously with
    pairwise distinct eigenvalue ratios.
    """
    if Q1.det() == 0:
        raise InputError("Q1 is degenerate")
    return squarefree_check(pencil_char_poly(Q1, Q2))


def hyperplane_basis(h: Sequence[Fraction]) -> Matrix:
    """Columns form a rational basis of ``{x : h.x = 0}``."""
    n = len(h)
    p = next(i for i, x in enumerate(h) if x != 0)
    cols = []
    for j in range(n):
        if j == p:
            continue
        v = [Fraction(0)] * n
        v[j] = Fraction(1)
        v[p] = -Fraction(h[j]) / h[p]
        cols.append(v)
    return linalg.transpose(linalg.to_matrix(cols))


def restrict_form(F: QForm, W: Matrix) -> QForm:
    """``W^T F W``: the form pulled back along the columns of ``W``."""
    return QForm(linalg.matmul(linalg.transpose(W), linalg.matmul(F.matrix, W)))
