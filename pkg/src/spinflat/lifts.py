"""Exact verification of lifts of special-fiber points to the generic fiber.

Scalars live in Q(s) with s^2 = pi.  The integral ring is the local ring
of Q[s] at s, a discrete valuation ring with uniformizer s, so LM-style
conditions (direct summand, orthogonality, lambda-stability) become
identities between exact rational functions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import NamedTuple, Sequence

from sympy import QQ
from sympy.polys.fields import field

from .permissible import class_labels, rank, representative_subset, stratum_rank
from .weyl import star

_FIELD, _S = field("s", QQ)


def _low_degree(poly) -> int:
    return min(m[0] for m, _ in poly.terms())


def _const(poly) -> Fraction:
    for (deg,), c in poly.terms():
        if deg == 0:
            return Fraction(int(c.numerator), int(c.denominator))
    return Fraction(0)


@total_ordering
class SqrtPiScalar:
    """An element of Q(s), s = sqrt(pi)."""

    __slots__ = ("value",)

    def __init__(self, value=0):
        if isinstance(value, SqrtPiScalar):
            value = value.value
        elif isinstance(value, Fraction):
            value = _FIELD(QQ(value.numerator, value.denominator))
        elif not hasattr(value, "numer"):
            value = _FIELD(value)
        self.value = value

    @classmethod
    def from_parts(cls, a, b=0) -> "SqrtPiScalar":
        """``a + b s`` for rationals a, b."""
        return cls(Fraction(a)) + cls(Fraction(b)) * cls.s()

    @classmethod
    def s(cls) -> "SqrtPiScalar":
        return cls(_S)

    @classmethod
    def pi(cls) -> "SqrtPiScalar":
        return cls(_S ** 2)

    def __add__(self, other):
        return SqrtPiScalar(self.value + SqrtPiScalar(other).value)

    __radd__ = __add__

    def __neg__(self):
        return SqrtPiScalar(-self.value)

    def __sub__(self, other):
        return SqrtPiScalar(self.value - SqrtPiScalar(other).value)

    def __rsub__(self, other):
        return SqrtPiScalar(other) - self

    def __mul__(self, other):
        return SqrtPiScalar(self.value * SqrtPiScalar(other).value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = SqrtPiScalar(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(s)")
        return SqrtPiScalar(self.value / other.value)

    def __eq__(self, other):
        try:
            return self.value == SqrtPiScalar(other).value
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return str(self.value) < str(SqrtPiScalar(other).value)

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"SqrtPiScalar({self.value})"

    def __str__(self):
        return str(self.value)

    def is_zero(self) -> bool:
        return self.value == _FIELD.zero

    def valuation(self) -> float | int:
        """s-adic valuation; infinity for zero."""
        if self.is_zero():
            return float("inf")
        return _low_degree(self.value.numer) - _low_degree(self.value.denom)

    def is_integral(self) -> bool:
        return self.valuation() >= 0

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def reduce(self) -> Fraction:
        """Residue mod s of an integral scalar."""
        v = self.valuation()
        if v < 0:
            raise ValueError(f"{self} is not integral")
        if v > 0:
            return Fraction(0)
        return _const(self.value.numer) / _const(self.value.denom)


ZERO = SqrtPiScalar(0)
ONE = SqrtPiScalar(1)


def basis_vector(k: int, m: int) -> list:
    """epsilon_k in L^m (one-indexed)."""
    return [ONE if r == k - 1 else ZERO for r in range(m)]


class SqrtPiModule(NamedTuple):
    """A lattice given by n generator columns in L^{2n}; ``cols[c][r]`` is row r."""

    cols: tuple

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "SqrtPiModule":
        return cls(tuple(tuple(SqrtPiScalar(x) for x in c) for c in cols))

    @property
    def size(self) -> int:
        return len(self.cols[0])

    @property
    def rank(self) -> int:
        return len(self.cols)

    def reduction(self) -> list:
        return [[x.reduce() for x in c] for c in self.cols]


def gram_form(m: int) -> list:
    """H_{2n}: the antidiagonal unit matrix, psi(e_i, e_j) = delta_{i, 2n+1-j}."""
    return [[1 if i + j == m - 1 else 0 for j in range(m)] for i in range(m)]


def pairing(x: Sequence, y: Sequence) -> SqrtPiScalar:
    m = len(x)
    total = ZERO
    for k in range(m):
        if not x[k].is_zero() and not y[m - 1 - k].is_zero():
            total = total + x[k] * y[m - 1 - k]
    return total


def lambda_maps(i: int, n: int) -> tuple:
    """Diagonals of lambda_1 = (pi I_i, I, pi I_i) and lambda_2 = (I, pi I, I)."""
    pi = SqrtPiScalar.pi()
    outer = set(range(1, i + 1)) | set(range(star(i, n), 2 * n + 1))
    lam1 = tuple(pi if k in outer else ONE for k in range(1, 2 * n + 1))
    lam2 = tuple(ONE if k in outer else pi for k in range(1, 2 * n + 1))
    return lam1, lam2


def apply_diagonal(diag: Sequence, v: Sequence) -> tuple:
    return tuple(a * b for a, b in zip(diag, v))


def elementary_divisor_valuations(mod: SqrtPiModule) -> list:
    """Valuations of the elementary divisors of the generator matrix over the DVR.

    Column-style elimination: repeatedly take an entry of least valuation as
    pivot and clear its row and column; the pivot valuations are the Smith
    invariants.  Entries must be integral.
    """
    mat = [list(c) for c in mod.cols]  # columns
    if any(not x.is_integral() for c in mat for x in c):
        raise ValueError("generators must be integral")
    out = []
    rows = list(range(mod.size))
    cols = list(range(len(mat)))
    while cols:
        best = None
        for c in cols:
            for r in rows:
                v = mat[c][r].valuation()
                if v != float("inf") and (best is None or v < best[0]):
                    best = (v, c, r)
        if best is None:
            out.extend([float("inf")] * len(cols))
            break
        v, c, r = best
        out.append(v)
        piv = mat[c][r]
        for c2 in cols:
            if c2 != c and not mat[c2][r].is_zero():
                f = mat[c2][r] / piv
                mat[c2] = [a - f * b for a, b in zip(mat[c2], mat[c])]
        cols.remove(c)
        rows.remove(r)
    return sorted(out)


def _independent_positions(vectors: list, want: int):
    """Greedy indices of ``want`` vectors independent mod s, or None."""
    chosen = []
    basis = []
    for idx, vec in enumerate(vectors):
        vec = [x.reduce() for x in vec]
        for piv, b in basis:
            if vec[piv] != 0:
                f = vec[piv] / b[piv]
                vec = [x - f * y for x, y in zip(vec, b)]
        nz = next((k for k, x in enumerate(vec) if x != 0), None)
        if nz is not None:
            basis.append((nz, vec))
            chosen.append(idx)
            if len(chosen) == want:
                return chosen
    return None


def _unit_minor_rows(mod: SqrtPiModule):
    """Rows forming an n x n minor that is a unit."""
    rows = [[c[r] for c in mod.cols] for r in range(mod.size)]
    return _independent_positions(rows, mod.rank)


def _solve(a: list, b: list):
    """Solve a x = b over Q(s) for square a (lists of rows)."""
    k = len(a)
    mat = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for c in range(k):
        piv = next(r for r in range(c, k) if not mat[r][c].is_zero())
        mat[c], mat[piv] = mat[piv], mat[c]
        p = mat[c][c]
        mat[c] = [x / p for x in mat[c]]
        for r in range(k):
            if r != c and not mat[r][c].is_zero():
                f = mat[r][c]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
    return [mat[r][k] for r in range(k)]


def membership_coefficients(mod: SqrtPiModule, v: Sequence):
    """Coefficients c with sum c_k col_k = v, or None when v is outside the span."""
    rows = _unit_minor_rows(mod)
    if rows is None:
        raise ValueError("module is not a direct summand")
    a = [[mod.cols[c][r] for c in range(mod.rank)] for r in rows]
    coeffs = _solve(a, [v[r] for r in rows])
    for r in range(mod.size):
        total = ZERO
        for c in range(mod.rank):
            total = total + coeffs[c] * mod.cols[c][r]
        if total != v[r]:
            return None
    return coeffs


def contains(mod: SqrtPiModule, v: Sequence) -> bool:
    """Whether v lies in the integral span of a saturated module."""
    coeffs = membership_coefficients(mod, v)
    return coeffs is not None and all(c.is_integral() for c in coeffs)


def same_module(a: SqrtPiModule, b: SqrtPiModule) -> bool:
    return all(contains(a, v) for v in b.cols) and all(contains(b, v) for v in a.cols)


def dual_module(mod: SqrtPiModule) -> SqrtPiModule:
    """Orthogonal complement of a saturated rank-n module under H_{2n}."""
    m = mod.size
    # x is orthogonal to col c iff sum_k col_c[k] x[m-1-k] = 0
    eqs = [[c[m - 1 - k] for k in range(m)] for c in mod.cols]
    pivots = _independent_positions([[e[k] for e in eqs] for k in range(m)], mod.rank)
    if pivots is None:
        raise ValueError("degenerate module: no unit minor")
    free = [k for k in range(m) if k not in pivots]
    cols = []
    for f in free:
        rhs = [-e[f] for e in eqs]
        sol = _solve([[e[p] for p in pivots] for e in eqs], rhs)
        x = [ZERO] * m
        x[f] = ONE
        for p, val in zip(pivots, sol):
            x[p] = val
        cols.append(tuple(x))
    return SqrtPiModule(tuple(cols))


def span_of(columns) -> SqrtPiModule:
    return SqrtPiModule(tuple(tuple(c) for c in columns))


def _coordinate_module(E, m: int) -> SqrtPiModule:
    return span_of(tuple(basis_vector(k, m)) for k in sorted(E))


def orthogonal_index_set(E, n: int) -> frozenset:
    """Indices spanning (kE)^perp: those j with j* outside E."""
    E = set(E)
    return frozenset(j for j in range(1, 2 * n + 1) if star(j, n) not in E)


def build_lift(ell: int, d: int, i: int, n: int) -> tuple:
    """Explicit lattices (F_i, F_{-i}) over the ring of integers of F(sqrt(pi))."""
    E = representative_subset(ell, d, i, n)
    if E is None:
        raise ValueError(f"no class (ell={ell}, d={d}) at i={i}")
    m = 2 * n
    if ell == i:
        return _coordinate_module(E, m), _coordinate_module(orthogonal_index_set(E, n), m)
    s = SqrtPiScalar.s()
    k = i - ell

    def vec(*terms):
        v = [ZERO] * m
        for idx, coef in terms:
            v[idx - 1] = v[idx - 1] + coef
        return tuple(v)

    plus = [vec((j, ONE)) for j in range(i + 1 - ell, n - i + ell + 1)]
    plus += [vec((n - k + r, ONE), (k + 1 - r, s)) for r in range(1, k + 1)]
    plus += [vec((n + r, ONE), (m + 1 - r, -s)) for r in range(1, k + 1)]
    minus = [vec((r, ONE), (n + 1 - r, s)) for r in range(1, k + 1)]
    minus += [vec((j, ONE)) for j in range(k + 1, n - k + 1)]
    minus += [vec((m - k + r, ONE), (n + k + 1 - r, -s)) for r in range(1, k + 1)]
    return span_of(plus), span_of(minus)


class ClauseResult(NamedTuple):
    name: str
    passed: bool
    witness: object = None


class LiftReport(NamedTuple):
    clauses: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failed(self) -> list:
        return [c for c in self.clauses if not c.passed]


def _reduced_span_matches(mod: SqrtPiModule, E, n: int):
    """None if the reduction spans exactly kE, else a witness column index."""
    red = mod.reduction()
    for c, col in enumerate(red):
        if any(x != 0 for r, x in enumerate(col, 1) if r not in E):
            return c
    if _rank_rows(red) != len(E):
        return "rank"
    return None


def _rank_rows(rows) -> int:
    return rank(rows) if rows else 0


def check_lm_conditions(pair: tuple, i: int, n: int, E=None) -> LiftReport:
    """Clauses (a) direct summands, (b) duality, (c) lambda-stability, (d) reduction.

    ``E`` is the intended special-fiber index set; clause (d) is skipped when
    it is not given.
    """
    fp, fm = pair
    out = []
    for name, mod in (("a:summand F_i", fp), ("a:summand F_-i", fm)):
        vals = elementary_divisor_valuations(mod)
        bad = [v for v in vals if v != 0]
        ok = mod.rank == n and mod.size == 2 * n and not bad
        out.append(ClauseResult(name, ok, None if ok else vals))
    witness = None
    for a, x in enumerate(fp.cols):
        for b, y in enumerate(fm.cols):
            val = pairing(x, y)
            if not val.is_zero():
                witness = {"column_i": a, "column_minus_i": b, "pairing": str(val)}
                break
        if witness:
            break
    out.append(ClauseResult("b:orthogonal", witness is None, witness))
    lam1, lam2 = lambda_maps(i, n)
    for name, diag, src, dst in (("c:lambda1", lam1, fm, fp), ("c:lambda2", lam2, fp, fm)):
        witness = None
        if _unit_minor_rows(dst) is None:
            witness = "target is not a direct summand"
        for col in src.cols if witness is None else ():
            v = apply_diagonal(diag, col)
            if not contains(dst, v):
                witness = [str(x) for x in v]
                break
        out.append(ClauseResult(name, witness is None, witness))
    if E is not None:
        for name, mod, idx in (("d:reduction F_i", fp, set(E)),
                               ("d:reduction F_-i", fm, set(orthogonal_index_set(E, n)))):
            w = _reduced_span_matches(mod, idx, n)
            out.append(ClauseResult(name, w is None, w))
    return LiftReport(tuple(out))


def verify_lift(ell: int, d: int, i: int, n: int) -> LiftReport:
    """Build the lift for (ell, d) and check every clause plus the stratum rank."""
    E = representative_subset(ell, d, i, n)
    pair = build_lift(ell, d, i, n)
    report = check_lm_conditions(pair, i, n, E)
    clauses = list(report.clauses)
    rk = stratum_rank(E, i, n)
    clauses.append(ClauseResult("stratum rank", rk == ell, None if rk == ell else rk))
    if ell < i:
        ok = same_module(dual_module(pair[0]), pair[1])
        clauses.append(ClauseResult("dual matches listed F_-i", ok))
    return LiftReport(tuple(clauses))
