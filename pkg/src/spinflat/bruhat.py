"""Length, Bruhat order, admissible sets and parahoric double cosets.

Simple reflections are the reflections in the walls of the base alcove.
Each one is labelled by the unique alcove vertex it moves, so the
parahoric subgroup fixing a set of vertices is generated by the simple
reflections whose labels lie outside that set.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, NamedTuple

from .weyl import (
    AffineElement,
    compose,
    identity_perm,
    kottwitz,
    normalize_label,
    perm_sign,
    permute,
    signed_perms,
    special_elements,
    star,
    transposition_product,
    vertex,
    vertex_labels,
)


@lru_cache(maxsize=None)
def simple_reflections(n: int) -> dict:
    """Simple affine reflections keyed by the label of the vertex they move."""
    m = 2 * n
    s0_t = (-1, -1) + (0,) * (m - 4) + (1, 1)
    refl = {
        0: AffineElement.make(s0_t, transposition_product(n, (1, m - 1), (2, m))),
        "0'": AffineElement.make((0,) * m, transposition_product(n, (1, 2), (m - 1, m))),
    }
    for k in range(2, n - 1):
        p = transposition_product(n, (k, k + 1), (star(k, n), star(k + 1, n)))
        refl[k] = AffineElement.make((0,) * m, p)
    refl[n] = AffineElement.make((0,) * m, transposition_product(n, (n - 1, n + 1), (n, n + 2)))
    refl[f"{n}'"] = AffineElement.make(
        (0,) * m, transposition_product(n, (n - 1, n), (n + 1, n + 2))
    )
    return refl


class _Geometry(NamedTuple):
    scale: int
    point: tuple  # scale * barycenter of the base alcove, integral
    roots: tuple  # (a, b, sign) for the root x_a + sign * x_b, a < b <= n


@lru_cache(maxsize=None)
def _geometry(n: int) -> _Geometry:
    labels = vertex_labels(n)
    scale = 2 * (n + 1)
    bary = [sum(vertex(j, n)[k] for j in labels) for k in range(2 * n)]
    point = tuple(int(Fraction(x) * scale / len(labels)) for x in bary)
    roots = tuple((a, b, sg) for a in range(n) for b in range(a + 1, n) for sg in (1, -1))
    return _Geometry(scale, point, roots)


def _moved_point(w: AffineElement, geo: _Geometry) -> tuple:
    n = w.n
    p = permute(w.w0, geo.point)
    shift = (n + 1) * (w.t[0] + w.t[-1])  # scale * pair_sum / 2
    return tuple(x + geo.scale * t - shift for x, t in zip(p, w.t))


def length(w: AffineElement) -> int:
    """Number of affine root hyperplanes separating the base alcove from its image."""
    if not w.is_even:
        raise ValueError("length is defined on the identity component only")
    geo = _geometry(w.n)
    q = _moved_point(w, geo)
    p = geo.point
    d = geo.scale
    total = 0
    for a, b, sg in geo.roots:
        total += abs((q[a] + sg * q[b]) // d - (p[a] + sg * p[b]) // d)
    return total


def affine_reflection(n: int, a: int, b: int, sign: int, k: int) -> AffineElement:
    """Reflection in the hyperplane ``x_a + sign * x_b = k`` (1 <= a < b <= n)."""
    m = 2 * n
    t = [0] * m
    if sign < 0:
        p = transposition_product(n, (a, b), (star(a, n), star(b, n)))
        for j, c in ((a, k), (b, -k), (star(a, n), -k), (star(b, n), k)):
            t[j - 1] += c
    else:
        p = transposition_product(n, (a, star(b, n)), (b, star(a, n)))
        for j, c in ((a, k), (b, k), (star(a, n), -k), (star(b, n), -k)):
            t[j - 1] += c
    return AffineElement(tuple(t), p)


def separating_reflections(w: AffineElement) -> list:
    """Reflections in the hyperplanes separating the base alcove from ``w`` of it."""
    geo = _geometry(w.n)
    q = _moved_point(w, geo)
    p = geo.point
    d = geo.scale
    out = []
    for a, b, sg in geo.roots:
        lo, hi = sorted(((p[a] + sg * p[b]), (q[a] + sg * q[b])))
        for k in range(lo // d + 1, hi // d + 1):
            out.append(affine_reflection(w.n, a + 1, b + 1, sg, k))
    return out


@lru_cache(maxsize=None)
def _tau2_power(n: int, z: int) -> AffineElement:
    if z == 0:
        return AffineElement.identity(n)
    tau2 = special_elements(n).tau2
    if z < 0:
        return _tau2_power(n, z + 1) * tau2.inverse()
    return _tau2_power(n, z - 1) * tau2


def omega_element(n: int, z: int, parity: int) -> AffineElement:
    """The length-zero element with Kottwitz value (z, parity)."""
    w = _tau2_power(n, z)
    if parity % 2:
        w = w * special_elements(n).tau1
    return w


def omega_part(w: AffineElement) -> AffineElement:
    z, e = kottwitz(w)
    return omega_element(w.n, z, e)


def affine_part(w: AffineElement) -> AffineElement:
    """The W_aff factor ``x`` of ``w = x * omega_part(w)``."""
    return w * omega_part(w).inverse()


def left_descent(w: AffineElement):
    lw = length(w)
    for label, s in simple_reflections(w.n).items():
        if length(s * w) < lw:
            return label
    return None


def reduced_word(w: AffineElement) -> list:
    """Labels ``s_1 ... s_k`` with ``affine_part(w) = s_1 * ... * s_k``, reduced."""
    refl = simple_reflections(w.n)
    x = affine_part(w)
    word = []
    while True:
        label = left_descent(x)
        if label is None:
            break
        word.append(label)
        x = refl[label] * x
    if x != AffineElement.identity(w.n):
        raise AssertionError("reduction did not terminate at the identity")
    return word


def word_product(n: int, word: Iterable) -> AffineElement:
    refl = simple_reflections(n)
    x = AffineElement.identity(n)
    for label in word:
        x = x * refl[label]
    return x


def bruhat_leq(x: AffineElement, y: AffineElement) -> bool:
    """Bruhat order via the subword property on a reduced word of ``y``.

    Scanning the reduced word of y from the left, a letter is consumed by x
    exactly when it is a left descent of what remains of x.
    """
    if omega_part(x) != omega_part(y):
        return False
    refl = simple_reflections(x.n)
    u = affine_part(x)
    lu = length(u)
    for label in reduced_word(y):
        if lu == 0:
            break
        v = refl[label] * u
        lv = length(v)
        if lv < lu:
            u, lu = v, lv
    return lu == 0


def covers_below(y: AffineElement) -> list:
    """Elements covered by ``y``: ``r y`` for separating reflections r, one step shorter."""
    ly = length(y)
    out = []
    for r in separating_reflections(y):
        x = r * y
        if length(x) == ly - 1:
            out.append(x)
    return out


def lower_set_by_covers(tops: Iterable[AffineElement]) -> set:
    seen = set(tops)
    frontier = list(seen)
    while frontier:
        nxt = []
        for y in frontier:
            for x in covers_below(y):
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return seen


def bruhat_leq_covers(x: AffineElement, y: AffineElement) -> bool:
    """Bruhat order as the transitive closure of the cover relation (oracle)."""
    return x in lower_set_by_covers([y])


def bfs_lengths(n: int, max_length: int, omega: AffineElement | None = None) -> dict:
    """Word length over simple reflections by breadth-first search from ``omega``."""
    start = omega if omega is not None else AffineElement.identity(n)
    refl = list(simple_reflections(n).values())
    dist = {start: 0}
    frontier = [start]
    for d in range(1, max_length + 1):
        nxt = []
        for w in frontier:
            for s in refl:
                x = s * w
                if x not in dist:
                    dist[x] = d
                    nxt.append(x)
        frontier = nxt
    return dist


def lower_interval(y: AffineElement) -> frozenset:
    """All x <= y, as products of subwords of a reduced word of y."""
    n = y.n
    refl = simple_reflections(n)
    om = omega_part(y)
    seen = {AffineElement.identity(n)}
    for label in reduced_word(y):
        s = refl[label]
        seen |= {x * s for x in seen}
    return frozenset(x * om for x in seen)


# Cocharacters and admissible sets

def mu_plus(n: int) -> tuple:
    return (1,) * n + (0,) * n


def mu_minus(n: int) -> tuple:
    return (1,) * (n - 1) + (0, 1) + (0,) * (n - 1)


def cochar(sign: str, n: int) -> tuple:
    if sign == "+":
        return mu_plus(n)
    if sign == "-":
        return mu_minus(n)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


@lru_cache(maxsize=None)
def _even_signed_perms(n: int) -> tuple:
    return tuple(signed_perms(n, even=True))


def weyl_orbit(mu: tuple) -> frozenset:
    """The orbit of ``mu`` under S°_{2n}, by enumeration."""
    n = len(mu) // 2
    return frozenset(permute(p, mu) for p in _even_signed_perms(n))


@lru_cache(maxsize=None)
def admissible_set(mu: tuple, n: int | None = None) -> frozenset:
    """{w : w <= t^lam for some lam in the S°_{2n}-orbit of mu}."""
    mu = tuple(mu)
    if n is not None and len(mu) != 2 * n:
        raise ValueError("cocharacter length does not match n")
    out = set()
    for lam in sorted(weyl_orbit(mu)):
        out |= lower_interval(AffineElement.translation(lam))
    return frozenset(out)


def extreme_translations(mu: tuple) -> list:
    return [AffineElement.translation(lam) for lam in sorted(weyl_orbit(tuple(mu)))]


# Parahoric subgroups and double cosets

def _labels(I, n: int) -> frozenset:
    return frozenset(normalize_label(i, n) for i in I)


def _fixes(w: AffineElement, label, n: int) -> bool:
    v = vertex(label, n)
    return w.act(v) == v


@lru_cache(maxsize=None)
def _parabolic_generators(labels: frozenset, n: int) -> tuple:
    return tuple(
        s for s in simple_reflections(n).values()
        if all(_fixes(s, j, n) for j in labels)
    )


def parabolic_generators(I, n: int) -> tuple:
    """Simple reflections fixing every ``a_i`` for i in I (ints in [0, n] or labels)."""
    return _parabolic_generators(_labels(I, n), n)


def generated_group(gens: Iterable[AffineElement], n: int) -> frozenset:
    gens = list(gens)
    e = AffineElement.identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _even_block_perms(n: int, half: list) -> list:
    """Signed permutations supported on ``half`` and its mirror, even on that block."""
    out = []
    for base in permutations(half):
        for flips in product((False, True), repeat=len(half)):
            images = list(range(1, 2 * n + 1))
            for i, b, f in zip(half, base, flips):
                j = star(b, n) if f else b
                images[i - 1] = j
                images[star(i, n) - 1] = star(j, n)
            # the fixed points outside the block do not change the sign
            if perm_sign(tuple(images)) == 1:
                out.append(tuple(images))
    return out


@lru_cache(maxsize=None)
def _vertex_stabilizer(i: int, n: int) -> frozenset:
    half_a = list(range(1, i + 1))
    half_b = list(range(i + 1, n + 1))
    a_i = vertex(i, n)
    out = set()
    for pa in _even_block_perms(n, half_a):
        for pb in _even_block_perms(n, half_b):
            w0 = compose(pa, pb)
            moved = permute(w0, a_i)
            t = tuple(int(x - y) for x, y in zip(a_i, moved))
            out.add(AffineElement(t, w0))
    return frozenset(out)


def stabilizer_group(I, n: int) -> frozenset:
    """W_I: elements of W_aff fixing a_i for all i in I.

    For a single i this is ``{t w0 : w0 in S°(A_i) x S°(B_i), t = a_i - w0 a_i}``;
    for larger I the intersection of those groups.
    """
    I = sorted(_labels(I, n), key=str)
    if not I:
        raise ValueError("index set must be nonempty")
    groups = []
    for i in I:
        if isinstance(i, str):
            groups.append(generated_group(parabolic_generators([i], n), n))
        else:
            groups.append(_vertex_stabilizer(i, n))
    out = groups[0]
    for g in groups[1:]:
        out = out & g
    return out


class DoubleCoset(NamedTuple):
    """A W_I double coset in the identity component, keyed by its minimal element."""

    I: frozenset
    rep: AffineElement


def canonical_rep(w: AffineElement, I, n: int | None = None) -> AffineElement:
    """The unique minimal-length element of ``W_I w W_I``."""
    n = w.n if n is None else n
    gens = parabolic_generators(I, n)
    lw = length(w)
    changed = True
    while changed:
        changed = False
        for s in gens:
            for x in (s * w, w * s):
                lx = length(x)
                if lx < lw:
                    w, lw, changed = x, lx, True
    return w


def double_coset(w: AffineElement, I) -> DoubleCoset:
    return DoubleCoset(_labels(I, w.n), canonical_rep(w, I))


def double_coset_elements(w: AffineElement, I) -> frozenset:
    """Every element of ``W_I w W_I``, by closure under the generators."""
    gens = parabolic_generators(I, w.n)
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                for y in (s * x, x * s):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def lexmin_rep(w: AffineElement, I) -> AffineElement:
    """Lexicographically least element of the double coset (enumeration oracle)."""
    return min(double_coset_elements(w, I))


class NotStableError(ValueError):
    def __init__(self, witnesses):
        self.witnesses = witnesses
        super().__init__(f"{len(witnesses)} element(s) leave the set under W_I")


def double_cosets(S: Iterable[AffineElement], I, strict: bool = True) -> frozenset:
    """Quotient of S by W_I on both sides.

    With ``strict`` the set must be a union of double cosets and offending
    elements are raised as a NotStableError.  Pass ``strict=False`` to take
    the image of an arbitrary set (for instance Adm(mu), which is only
    W_I-stable after saturation).
    """
    S = set(S)
    if not S:
        return frozenset()
    n = next(iter(S)).n
    if strict:
        gens = parabolic_generators(I, n)
        bad = sorted(w for w in S for s in gens if s * w not in S or w * s not in S)
        if bad:
            raise NotStableError(bad)
    labels = _labels(I, n)
    return frozenset(DoubleCoset(labels, canonical_rep(w, labels, n)) for w in S)


def project_coset(c: DoubleCoset, i, n: int | None = None) -> DoubleCoset:
    """The image of ``c`` in the coarser quotient by W_i, where W_I <= W_i."""
    n = c.rep.n if n is None else n
    target = _labels([i] if not isinstance(i, (set, frozenset, list, tuple)) else i, n)
    return DoubleCoset(target, canonical_rep(c.rep, target, n))


def facet_vertex_set(I, n: int) -> frozenset:
    """Vertices of the closure of the facet containing {a_i : i in I}."""
    out = set()
    for i in _labels(I, n):
        if i == 1:
            out |= {0, "0'"}
        elif i == n - 1:
            out |= {n, f"{n}'"}
        else:
            out.add(i)
    return frozenset(out)


def vertexwise_intersection(sets_by_vertex: dict, I, n: int, candidates: Iterable) -> frozenset:
    """Cosets over I whose projection to every vertex j lies in ``sets_by_vertex[j]``."""
    labels = _labels(I, n)
    out = set()
    for w in candidates:
        c = DoubleCoset(labels, canonical_rep(w, labels, n))
        if all(project_coset(c, j, n) in allowed for j, allowed in sets_by_vertex.items()):
            out.add(c)
    return frozenset(out)


def sort_key(label) -> tuple:
    """Order labels 0, 0', 1, 2, ..., n, n'."""
    if isinstance(label, str):
        return (int(label[:-1]), 1)
    return (label, 0)


def is_type_three(I, n: int) -> bool:
    """True when neither hyperspecial index 0 nor n lies in I."""
    labels = _labels(I, n)
    return not labels & {0, n, "0'", f"{n}'"}


def cell_key(w: AffineElement, I) -> DoubleCoset:
    """Index of the Schubert cell of ``w`` over I.

    When 0, n are not in I, tau_1 fixes every a_i (i in I) and normalizes
    W_I, so ``w`` and ``w tau_1`` give the same cell; the key is taken in W'
    by moving the coset to its epsilon = 0 translate.
    """
    n = w.n
    if is_type_three(I, n) and kottwitz(w).parity:
        w = w * special_elements(n).tau1
    return DoubleCoset(_labels(I, n), canonical_rep(w, I, n))


def cell_keys(S: Iterable[AffineElement], I) -> frozenset:
    return frozenset(cell_key(w, I) for w in S)


def saturate(S: Iterable[AffineElement], I) -> frozenset:
    """W_I S W_I, by closure under the simple generators of W_I."""
    S = set(S)
    if not S:
        return frozenset()
    gens = parabolic_generators(I, next(iter(S)).n)
    frontier = list(S)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                for y in (s * x, x * s):
                    if y not in S:
                        S.add(y)
                        nxt.append(y)
        frontier = nxt
    return frozenset(S)


def vertexwise_sets(mu: tuple, I, n: int) -> tuple:
    """Both sides of the vertexwise criterion for Adm(mu) over I.

    Returns ``(direct, intersection)`` where ``direct`` is the image of
    Adm(mu) in the W_I double cosets and ``intersection`` collects the
    double cosets whose projection to every facet vertex j lies in the
    image of Adm(mu) there.  Any coset in the intersection lies in
    W_j Adm W_j for each such j, so saturating at one j gives a finite
    candidate set.
    """
    adm = admissible_set(tuple(mu))
    labels = _labels(I, n)
    J = facet_vertex_set(labels, n)
    per_vertex = {j: double_cosets(adm, [j], strict=False) for j in J}
    j0 = min(J, key=lambda j: (len(stabilizer_group([j], n)), sort_key(j)))
    candidates = saturate(adm, [j0])
    direct = double_cosets(adm, labels, strict=False)
    inter = vertexwise_intersection(per_vertex, labels, n, candidates)
    return direct, inter
