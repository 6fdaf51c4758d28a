from __future__ import annotations

from hypothesis import strategies as st

from spinflat.weyl import AffineElement, signed_perms


def _perms(n, even):
    return list(signed_perms(n, even=even))


_CACHE = {}


def perm_list(n, even=True):
    key = (n, even)
    if key not in _CACHE:
        _CACHE[key] = _perms(n, even)
    return _CACHE[key]


@st.composite
def elements(draw, n=4, even=True, c=None):
    """Random t^r w0 with constant pair sums."""
    w0 = draw(st.sampled_from(perm_list(n, even)))
    half = draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    pair = draw(st.integers(-2, 2)) if c is None else c
    t = list(half) + [pair - x for x in reversed(half)]
    return AffineElement.make(t, w0)


@st.composite
def affine_elements(draw, n=4):
    """Random elements of W_aff: pair sum 0 and even first-half sum."""
    w = draw(elements(n=n, even=True, c=0))
    if sum(w.t[:n]) % 2:
        t = list(w.t)
        t[0] += 1
        t[-1] -= 1
        w = AffineElement.make(t, w.w0)
    return w
