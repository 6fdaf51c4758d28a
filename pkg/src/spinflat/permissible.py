"""Faces, naive and spin permissibility, permissible subsets and strata.

Index sets I are subsets of [0, n].  All j-indexed conditions are checked on
the representatives {i, 2n - i : i in I}: a face satisfies
``v_{j+2n} = v_j - 1`` and ``omega_{j+2n} = omega_j - 1``, and every w acts
compatibly with adding multiples of (1, ..., 1), so the conditions (P1),
(P2) and the spin test are periodic in j with period 2n.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple

from .bruhat import (
    DoubleCoset,
    cell_key,
    cochar,
    stabilizer_group,
    weyl_orbit,
)
from .weyl import (
    AffineElement,
    compose,
    identity_perm,
    kottwitz,
    perm_sign,
    special_elements,
    star,
    transposition_product,
)


def omega(j: int, n: int) -> tuple:
    """``((-1)^(i), 0^(2n-i)) - d`` for ``j = 2nd + i``, 0 <= i < 2n."""
    d, i = divmod(j, 2 * n)
    return tuple((-1 if k < i else 0) - d for k in range(2 * n))


def period_indices(I: Iterable[int], n: int) -> list:
    return sorted({j for i in I for j in (i % (2 * n), (2 * n - i) % (2 * n))})


def reverse(v) -> tuple:
    """``v*``, with ``v*(j) = v(2n + 1 - j)``."""
    return tuple(reversed(v))


def is_totally_isotropic(mu) -> bool:
    return all(a + b == 1 for a, b in zip(mu, reverse(mu)))


def mu_vector(w: AffineElement, j: int) -> tuple:
    om = omega(j, w.n)
    return tuple(a - b for a, b in zip(w.act(om), om))


def zero_set(mu) -> frozenset:
    """E = {k : mu(k) = 0}, one-indexed."""
    return frozenset(k for k, x in enumerate(mu, 1) if x == 0)


def coordinate_span(mu) -> frozenset:
    """The basis vectors spanning F_j: same index set as the zero set of mu."""
    return zero_set(mu)


def is_naively_permissible(w: AffineElement, I) -> bool:
    n = w.n
    for j in period_indices(I, n):
        mu = mu_vector(w, j)
        if any(x not in (0, 1) for x in mu):
            return False
        if sum(w.act(omega(j, n))) != n - j:
            return False
    return True


def spin_parity(sign: str, n: int) -> int:
    return sum(cochar(sign, n)[:n]) % 2


def spin_orbit_member(mu, sign: str, n: int | None = None) -> bool:
    """Membership of mu in the S°_{2n}-orbit of mu_sign, by parity of the first half."""
    mu = tuple(mu)
    n = len(mu) // 2 if n is None else n
    if any(x not in (0, 1) for x in mu) or not is_totally_isotropic(mu):
        raise ValueError("mu must be a totally isotropic 0/1 vector")
    return sum(mu[:n]) % 2 == spin_parity(sign, n)


def spin_orbit_member_brute(mu, sign: str) -> bool:
    mu = tuple(mu)
    return mu in weyl_orbit(cochar(sign, len(mu) // 2))


def is_pm_permissible(w: AffineElement, I, sign: str) -> bool:
    if not is_naively_permissible(w, I):
        return False
    for j in period_indices(I, w.n):
        mu = mu_vector(w, j)
        if is_totally_isotropic(mu) and not spin_orbit_member(mu, sign, w.n):
            return False
    return True


# Faces

class Face(NamedTuple):
    """Vectors ``(v_i, v_{-i})`` for each i in I (sorted)."""

    I: tuple
    vectors: tuple

    @property
    def n(self) -> int:
        return len(self.vectors[0][0]) // 2

    def act(self, w: AffineElement) -> "Face":
        return Face(self.I, tuple((w.act(a), w.act(b)) for a, b in self.vectors))


def standard_face(I: Iterable[int], n: int) -> Face:
    I = tuple(sorted(set(I)))
    return Face(I, tuple((omega(i, n), omega(-i, n)) for i in I))


def face_of(w: AffineElement, I: Iterable[int]) -> Face:
    return standard_face(I, w.n).act(w)


def _face_family(f: Face):
    """v_j on a window of three periods, or None if the data disagree."""
    n = f.n
    fam = {}
    for i, (vp, vm) in zip(f.I, f.vectors):
        for k in (-1, 0, 1):
            for j, v in ((i + 2 * n * k, vp), (-i + 2 * n * k, vm)):
                v = tuple(x - k for x in v)
                if fam.setdefault(j, v) != v:
                    return None
    return fam


def is_face(f: Face) -> bool:
    """Monotonicity, the sum rule and duality ``v_j + v_{-j}* = d 1``."""
    fam = _face_family(f)
    if fam is None:
        return False
    keys = sorted(fam)
    for a, b in zip(keys, keys[1:]):
        va, vb = fam[a], fam[b]
        if any(x < y for x, y in zip(va, vb)):
            return False
        if sum(va) - sum(vb) != b - a:
            return False
    dual = {tuple(x + y for x, y in zip(fam[j], reverse(fam[-j]))) for j in keys if -j in fam}
    return len(dual) == 1 and len(set(next(iter(dual)))) == 1


def _odd_fix(n: int):
    return transposition_product(n, (1, 2 * n))


def face_element(f: Face) -> AffineElement:
    """Some w in the identity component with ``w omega_{+-i} = v_{+-i}`` (I = {i})."""
    if len(f.I) != 1:
        raise ValueError("faces over a single index are supported")
    (i,), ((vp, vm),) = f.I, f.vectors
    n = f.n
    if not is_face(f):
        raise ValueError("not a face")
    if i in (0, n):
        mu = tuple(a - b for a, b in zip(vp, omega(i, n)))
        return AffineElement.make(mu, identity_perm(n))
    delta = tuple(a - b for a, b in zip(vm, vp))
    support = [k for k, x in enumerate(delta, 1) if x == 1]
    if any(x not in (0, 1) for x in delta) or len(support) != 2 * i:
        raise ValueError("v_{-i} - v_i is not the indicator of a 2i-set")
    first = [k for k in support if k <= n]
    if len(first) != i or any(star(k, n) not in support for k in first):
        raise ValueError("support of v_{-i} - v_i is not self-dual")
    rest = [k for k in range(1, n + 1) if k not in first]
    images = [0] * (2 * n)
    for src, dst in zip(range(1, n + 1), first + rest):
        images[src - 1] = dst
        images[star(src, n) - 1] = star(dst, n)
    w0 = tuple(images)
    if perm_sign(w0) != 1:
        w0 = compose(w0, _odd_fix(n))
    moved = AffineElement((0,) * (2 * n), w0).act(omega(i, n))
    t = tuple(a - b for a, b in zip(vp, moved))
    w = AffineElement.make(t, w0)
    if w.act(omega(-i, n)) != tuple(vm):
        raise ValueError("face does not come from the identity component")
    return w


def face_to_element(f: Face) -> AffineElement:
    """An element of W' taking the standard face to f (I = {i})."""
    w = face_element(f)
    if kottwitz(w).parity:
        (i,) = f.I
        if i in (0, f.n):
            raise ValueError("no element of W' reaches this face at a hyperspecial index")
        w = w * special_elements(f.n).tau1
    return w


def enumerate_faces(i: int, n: int, sign: str | None = None) -> list:
    """Naively (or sign-) permissible faces over {i}."""
    out = []
    om_p, om_m = omega(i, n), omega(-i, n)
    for pos in combinations(range(2 * n), n):
        mu = [0] * (2 * n)
        for k in pos:
            mu[k] = 1
        vp = tuple(a + b for a, b in zip(om_p, mu))
        vm = tuple(1 - x for x in reverse(vp))
        mu_m = tuple(a - b for a, b in zip(vm, om_m))
        if any(x not in (0, 1) for x in mu_m):
            continue
        f = Face((i,), ((vp, vm),))
        if not is_face(f):
            continue
        if sign is not None:
            if any(is_totally_isotropic(m) and not spin_orbit_member(m, sign, n)
                   for m in (tuple(mu), mu_m)):
                continue
        out.append(f)
    return out


def enumerate_perm(i: int, sign: str, n: int) -> frozenset:
    """Schubert cells over {i} meeting the sign-permissible locus, via faces."""
    return frozenset(cell_key(face_element(f), [i]) for f in enumerate_faces(i, n, sign))


def face_stabilizer(i: int, n: int) -> frozenset:
    """Stabilizer of (omega_i, omega_{-i}) in the identity component."""
    group = stabilizer_group([i], n)
    if i in (0, n):
        return group
    tau1 = special_elements(n).tau1
    return group | frozenset(h * tau1 for h in group)


def perm_elements(i: int, sign: str, n: int) -> frozenset:
    """Every sign-permissible element over {i}, as face elements times the stabilizer."""
    stab = face_stabilizer(i, n)
    out = set()
    for f in enumerate_faces(i, n, sign):
        w = face_element(f)
        out.update(w * h for h in stab)
    return frozenset(out)


def perm_elements_general(I: Iterable[int], sign: str, n: int) -> frozenset:
    I = sorted(set(I))
    if not I:
        raise ValueError("index set must be nonempty")
    # any member of I bounds the search; pick the one with the fewest elements
    sizes = {i: len(enumerate_faces(i, n, sign)) * len(face_stabilizer(i, n)) for i in I}
    i0 = min(I, key=lambda i: (sizes[i], i))
    rest = [i for i in I if i != i0]
    return frozenset(w for w in perm_elements(i0, sign, n) if is_pm_permissible(w, rest, sign))


def enumerate_perm_general(I: Iterable[int], sign: str, n: int) -> frozenset:
    I = sorted(set(I))
    return frozenset(cell_key(w, I) for w in perm_elements_general(I, sign, n))


# Permissible subsets E of [1, 2n]

def block_a(i: int, n: int) -> list:
    return list(range(1, i + 1)) + list(range(star(i, n), 2 * n + 1))


def block_b(i: int, n: int) -> list:
    return list(range(i + 1, star(i, n)))


def is_permissible_subset(E: Iterable[int], i: int, n: int) -> bool:
    E = set(E)
    if len(E) != n or not E <= set(range(1, 2 * n + 1)):
        return False
    for j in range(1, i + 1):
        if j in E and star(j, n) in E:
            return False
    for j in range(i + 1, n + 1):
        if j not in E and star(j, n) not in E:
            return False
    return True


def permissible_subsets(i: int, n: int) -> list:
    return [frozenset(c) for c in combinations(range(1, 2 * n + 1), n)
            if is_permissible_subset(c, i, n)]


def stratum_rank(E: Iterable[int], i: int, n: int) -> int:
    """Rank of the image of kE under Lambda_i -> Lambda_{2n-i}: #(E cap A_i)."""
    E = set(E)
    if not is_permissible_subset(E, i, n):
        raise ValueError(f"{sorted(E)} is not permissible at i={i}")
    return len(E & set(block_a(i, n)))


class _PiEntry(NamedTuple):
    """``c * pi^e``; reduction mod pi keeps c only when e = 0."""

    c: int
    e: int


def chain_map(i: int, n: int) -> list:
    """Matrix of f_{2n-i} o ... o f_{i+1} with entries c * pi^e (f_k scales e_k by pi)."""
    m = 2 * n
    mat = [[_PiEntry(int(r == c), 0) for c in range(m)] for r in range(m)]
    for k in range(i + 1, 2 * n - i + 1):
        f = [[_PiEntry(int(r == c), int(r == c == k - 1)) for c in range(m)] for r in range(m)]
        mat = _pi_matmul(f, mat)
    return mat


def _pi_matmul(a, b) -> list:
    m = len(a)
    out = []
    for r in range(m):
        row = []
        for c in range(m):
            terms = [(a[r][k].c * b[k][c].c, a[r][k].e + b[k][c].e) for k in range(m)]
            terms = [t for t in terms if t[0]]
            if not terms:
                row.append(_PiEntry(0, 0))
            else:
                # every product here is a single monomial
                (c0, e0), = terms
                row.append(_PiEntry(c0, e0))
        out.append(row)
    return out


def rank(rows: list) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    mat = [[Fraction(x) for x in r] for r in rows]
    rk = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        piv = next((r for r in range(rk, len(mat)) if mat[r][c] != 0), None)
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        for r in range(len(mat)):
            if r != rk and mat[r][c] != 0:
                f = mat[r][c] / mat[rk][c]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rk])]
        rk += 1
    return rk


def stratum_rank_matrix(E: Iterable[int], i: int, n: int) -> int:
    """Oracle: rank of the chain map reduced mod pi, applied to the basis of kE."""
    E = sorted(E)
    mat = chain_map(i, n)
    reduced = [[x.c if x.e == 0 else 0 for x in row] for row in mat]
    images = [[reduced[r][k - 1] for r in range(2 * n)] for k in E]
    return rank(images)


_PATTERNS = {(0, 0): 1, (1, 1): 2, (0, 1): 3, (1, 0): 4}


def orbit_classify(E: Iterable[int], i: int, n: int) -> tuple:
    """(type ell, class d) of the W_i-orbit of a permissible subset."""
    E = set(E)
    ell = stratum_rank(E, i, n)
    if ell < i:
        return ell, 1
    r1 = len(E & set(range(1, i + 1)))
    r2 = len(E & set(range(i + 1, n + 1)))
    return ell, _PATTERNS[((r1 - i) % 2, (r2 - (n - i)) % 2)]


def rank_range(i: int, n: int) -> range:
    return range(max(0, 2 * i - n), i + 1)


def class_labels(i: int, n: int) -> list:
    """All (ell, d) classes at vertex i."""
    out = [(ell, 1) for ell in rank_range(i, n) if ell < i]
    ds = [d for d in (1, 2, 3, 4) if representative_subset(i, d, i, n) is not None]
    return out + [(i, d) for d in ds]


def representative_subset(ell: int, d: int, i: int, n: int):
    """The explicit subsets E^ell_d; None when the class is empty (i in {0, n})."""
    if ell not in rank_range(i, n):
        raise ValueError(f"rank {ell} outside {list(rank_range(i, n))}")
    if ell < i:
        if d != 1:
            raise ValueError("only d = 1 occurs below the top rank")
        return frozenset(range(i + 1 - ell, n + i - ell + 1))
    if d == 1:
        E = set(range(1, n + 1))
    elif d == 2:
        E = set(range(1, i)) | set(range(i + 1, n)) | {n + 1, star(i, n)}
    elif d == 3:
        E = set(range(1, n)) | {n + 1}
    elif d == 4:
        E = set(range(1, i)) | set(range(i + 1, n + 1)) | {star(i, n)}
    else:
        raise ValueError(f"class d={d} outside 1..4")
    E = frozenset(E)
    if len(E) != n or not is_permissible_subset(E, i, n):
        return None
    return E


def subset_sign(E: Iterable[int], n: int) -> str | None:
    """Sign of the spin component containing the point kE, or None if kE is not isotropic."""
    mu = tuple(0 if k in set(E) else 1 for k in range(1, 2 * n + 1))
    if not is_totally_isotropic(mu):
        return None
    return "+" if spin_orbit_member(mu, "+", n) else "-"


def e_of(w: AffineElement, i: int) -> frozenset:
    return zero_set(mu_vector(w, i))


def coset_subset_class(c: DoubleCoset, i: int) -> tuple:
    return orbit_classify(e_of(c.rep, i), i, c.rep.n)
