"""Extended affine Weyl group of GO_{2n} in the 2n-coordinate model.

An element ``t^w w0`` is stored as a translation vector ``t`` (length 2n,
pair sums ``t[j] + t[2n+1-j]`` constant) and a permutation ``w0`` of
[1, 2n] in S*_{2n}.  Permutations are one-indexed image tuples:
``w0[i - 1] == w0(i)``, and composition is ``(x o y)(i) = x(y(i))``.
A permutation acts on vectors by ``(w0 v)(i) = v(w0^{-1}(i))``.

Elements with an odd permutation part lie in the non-identity component
``tau * W~deg``; everything downstream works inside the identity component.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import NamedTuple, Sequence

Perm = tuple  # tuple[int, ...], one-indexed images


def star(i: int, n: int) -> int:
    return 2 * n + 1 - i


def identity_perm(n: int) -> Perm:
    return tuple(range(1, 2 * n + 1))


def compose(p: Perm, q: Perm) -> Perm:
    """``(p o q)(i) = p(q(i))``."""
    return tuple(p[j - 1] for j in q)


def perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p, 1):
        out[j - 1] = i
    return tuple(out)


def perm_sign(p: Perm) -> int:
    """+1 for even permutations, -1 for odd ones."""
    seen = [False] * len(p)
    sign = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        k = start
        length = 0
        while not seen[k]:
            seen[k] = True
            k = p[k] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def is_signed_perm(p: Perm) -> bool:
    m = len(p)
    if m % 2 or sorted(p) != list(range(1, m + 1)):
        return False
    return all(p[m - i] + p[i - 1] == m + 1 for i in range(1, m + 1))


def permute(p: Perm, v: Sequence) -> tuple:
    """The coordinate action ``(p v)(i) = v(p^{-1}(i))``."""
    out = [None] * len(v)
    for j, x in enumerate(v):
        out[p[j] - 1] = x
    return tuple(out)


def transposition_product(n: int, *pairs: tuple[int, int]) -> Perm:
    """Product of disjoint transpositions on [1, 2n]."""
    images = list(range(1, 2 * n + 1))
    for a, b in pairs:
        images[a - 1], images[b - 1] = images[b - 1], images[a - 1]
    return tuple(images)


def signed_perms(n: int, even: bool | None = None):
    """Iterate over S*_{2n} (or S°_{2n} when ``even`` is True)."""
    for base in permutations(range(1, n + 1)):
        for flips in product((False, True), repeat=n):
            images = [0] * (2 * n)
            for i, (b, f) in enumerate(zip(base, flips), 1):
                j = star(b, n) if f else b
                images[i - 1] = j
                images[star(i, n) - 1] = star(j, n)
            p = tuple(images)
            if even is None or (perm_sign(p) == 1) == even:
                yield p


def pair_sum(t: Sequence[int]) -> int | None:
    """The common value of ``t(j) + t(j*)``, or None if not constant."""
    m = len(t)
    c = t[0] + t[m - 1]
    for j in range(1, m // 2):
        if t[j] + t[m - 1 - j] != c:
            return None
    return c


class KottwitzValue(NamedTuple):
    z: int
    parity: int


class AffineElement(NamedTuple):
    """``t^w w0`` acting on R^{2n} by ``v -> w0 v + t``.

    Tuples compare lexicographically by translation, then permutation,
    which is the total order used for canonical representatives.
    """

    t: tuple
    w0: Perm

    @classmethod
    def make(cls, t: Sequence[int], w0: Sequence[int]) -> "AffineElement":
        t, w0 = tuple(int(x) for x in t), tuple(int(x) for x in w0)
        if len(t) != len(w0) or len(t) % 2:
            raise ValueError("translation and permutation lengths differ")
        if not is_signed_perm(w0):
            raise ValueError(f"{w0} is not in S*_{len(w0)}")
        if pair_sum(t) is None:
            raise ValueError(f"translation {t} violates the similitude constraint")
        return cls(t, w0)

    @classmethod
    def identity(cls, n: int) -> "AffineElement":
        return cls((0,) * (2 * n), identity_perm(n))

    @classmethod
    def translation(cls, v: Sequence[int]) -> "AffineElement":
        return cls.make(v, range(1, len(v) + 1))

    @property
    def n(self) -> int:
        return len(self.t) // 2

    @property
    def is_even(self) -> bool:
        return perm_sign(self.w0) == 1

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        # (t1 w1)(t2 w2) = (t1 + w1 t2)(w1 w2)
        moved = permute(self.w0, other.t)
        return AffineElement(
            tuple(a + b for a, b in zip(self.t, moved)), compose(self.w0, other.w0)
        )

    def inverse(self) -> "AffineElement":
        inv = perm_inverse(self.w0)
        return AffineElement(tuple(-x for x in permute(inv, self.t)), inv)

    def act(self, v: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(permute(self.w0, v), self.t))

    def in_waff(self) -> bool:
        return self.is_even and pair_sum(self.t) == 0 and sum(self.t[: self.n]) % 2 == 0

    def in_w_prime(self) -> bool:
        return self.is_even and sum(self.t[: self.n]) % 2 == 0


def multiply(x: AffineElement, y: AffineElement) -> AffineElement:
    return x * y


def invert(x: AffineElement) -> AffineElement:
    return x.inverse()


def act(w: AffineElement, v: Sequence) -> tuple:
    return w.act(v)


def kottwitz(w: AffineElement) -> KottwitzValue:
    """(r_1 + r_2n, r_1 + ... + r_n mod 2); defined on the identity component."""
    if not w.is_even:
        raise ValueError("kottwitz is only defined on the identity component")
    n = w.n
    return KottwitzValue(w.t[0] + w.t[-1], sum(w.t[:n]) % 2)


def epsilon(w: AffineElement) -> int:
    return kottwitz(w).parity


class SpecialElements(NamedTuple):
    tau1: AffineElement
    tau2: AffineElement
    central: AffineElement
    sigma2: Perm
    tau: Perm  # the transposition (n, n+1); its elements sit in the odd component
    tau_prime: AffineElement


@lru_cache(maxsize=None)
def special_elements(n: int) -> SpecialElements:
    if n < 4:
        raise ValueError("n >= 4 is required")
    m = 2 * n
    swap_mid = transposition_product(n, (n, n + 1))
    swap_ends = transposition_product(n, (1, m))
    t1 = (-1,) + (0,) * (m - 2) + (1,)
    t2 = (0,) * n + (1,) * n
    # sigma2 sends (x_1..x_2n) to (x_{n+1}..x_2n, x_1..x_n)
    sigma2 = tuple(i + n if i <= n else i - n for i in range(1, m + 1))
    tau1 = AffineElement.make(t1, compose(swap_ends, swap_mid))
    w0 = compose(sigma2, swap_mid) if n % 2 else sigma2
    tau2 = AffineElement.make(t2, w0)
    central = AffineElement.translation((1,) * m)
    tau_prime = AffineElement.make(t1, swap_ends)
    return SpecialElements(tau1, tau2, central, sigma2, swap_mid, tau_prime)


# Vertices of the base alcove.  Labels in [0, n] are ints; the two extra
# hyperspecial vertices are the strings "0'" and "n'" (e.g. "4'").

def vertex_labels(n: int) -> list:
    """The local Dynkin vertex set {0, 0', 2, ..., n-2, n, n'} in a fixed order."""
    return [0, "0'"] + list(range(2, n - 1)) + [n, f"{n}'"]


def normalize_label(label, n: int):
    if isinstance(label, str):
        if label == "0'" or label == f"{n}'":
            return label
        if label.isdigit():
            return normalize_label(int(label), n)
        raise ValueError(f"unknown vertex label {label!r}")
    if not 0 <= label <= n:
        raise ValueError(f"vertex index {label} outside [0, {n}]")
    return label


def vertex(label, n: int) -> tuple:
    """Coordinates of ``a_label`` as a tuple of Fractions of length 2n."""
    label = normalize_label(label, n)
    h = Fraction(1, 2)
    m = 2 * n
    if label == 0:
        return (Fraction(0),) * m
    if label == "0'":
        return (Fraction(-1),) + (Fraction(0),) * (m - 2) + (Fraction(1),)
    if label == f"{n}'":
        return (-h,) * (n - 1) + (h, -h) + (h,) * (n - 1)
    i = label
    return (-h,) * i + (Fraction(0),) * (m - 2 * i) + (h,) * i


def normalized(v: Sequence) -> tuple:
    """Representative of ``v + R(1,...,1)`` with zero pair sums."""
    c = Fraction(v[0] + v[-1], 2)
    return tuple(x - c for x in v)


def same_vertex_line(u: Sequence, v: Sequence) -> bool:
    return normalized(u) == normalized(v)
