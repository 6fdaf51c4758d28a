"""Length-zero symmetries of the local Dynkin diagram and parahoric classes.

The group Xi is the image of <tau_1, tau_2> acting on the vertex lines
a_j + R(1, ..., 1) of the base alcove.  The permutations are computed from
the affine action rather than transcribed, then checked against the
expected shapes in the tests.
"""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple

from .bruhat import sort_key
from .weyl import same_vertex_line, special_elements, vertex, vertex_labels


class XiGroup(NamedTuple):
    labels: tuple
    tau1: tuple  # images of labels, aligned with ``labels``
    tau2: tuple

    def elements(self) -> list:
        """All group elements as image tuples, identity first."""
        ident = self.labels
        seen = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for h in (self.tau1, self.tau2):
                    gh = _compose(self.labels, g, h)
                    if gh not in seen:
                        seen.append(gh)
                        nxt.append(gh)
            frontier = nxt
        return seen

    @property
    def order(self) -> int:
        return len(self.elements())

    def is_cyclic(self) -> bool:
        return any(element_order(self.labels, g) == self.order for g in self.elements())

    def exponent(self) -> int:
        out = 1
        for g in self.elements():
            k = element_order(self.labels, g)
            while out % k:
                out += 1
        return out


def _compose(labels: tuple, g: tuple, h: tuple) -> tuple:
    """The permutation ``x -> g(h(x))``."""
    index = {x: k for k, x in enumerate(labels)}
    return tuple(g[index[h[k]]] for k in range(len(labels)))


def element_order(labels: tuple, g: tuple) -> int:
    k, cur = 1, g
    while cur != labels:
        cur = _compose(labels, g, cur)
        k += 1
    return k


def _vertex_permutation(element, n: int) -> tuple:
    labels = vertex_labels(n)
    out = []
    for j in labels:
        image = element.act(vertex(j, n))
        hits = [k for k in labels if same_vertex_line(image, vertex(k, n))]
        if len(hits) != 1:
            raise AssertionError(f"vertex {j} is not sent to a vertex")
        out.append(hits[0])
    return tuple(out)


def xi_group(n: int) -> XiGroup:
    sp = special_elements(n)
    labels = tuple(vertex_labels(n))
    return XiGroup(labels, _vertex_permutation(sp.tau1, n), _vertex_permutation(sp.tau2, n))


def _subset_key(subset) -> tuple:
    return tuple(sorted(sort_key(x) for x in subset))


def _apply(xi: XiGroup, g: tuple, subset) -> frozenset:
    index = {x: k for k, x in enumerate(xi.labels)}
    return frozenset(g[index[x]] for x in subset)


def nonempty_subsets(labels) -> list:
    return [frozenset(c) for r in range(1, len(labels) + 1) for c in combinations(labels, r)]


def canonical_subset(subset, xi: XiGroup) -> tuple:
    """Lexicographically least member of the Xi-orbit, as a sorted label tuple."""
    best = min((_apply(xi, g, subset) for g in xi.elements()), key=_subset_key)
    return tuple(sorted(best, key=sort_key))


def conjugacy_classes(n: int, max_n: int = 12) -> list:
    """Xi-orbit representatives of nonempty subsets of the vertex set."""
    if n > max_n:
        raise ValueError(f"subset enumeration is limited to n <= {max_n}")
    xi = xi_group(n)
    reps = {canonical_subset(s, xi) for s in nonempty_subsets(xi.labels)}
    return sorted(reps, key=lambda r: (len(r), _subset_key(r)))


def burnside_count(n: int) -> int:
    """Number of Xi-orbits on nonempty subsets: average of 2^cycles - 1."""
    xi = xi_group(n)
    total = 0
    for g in xi.elements():
        cycles = 0
        seen = set()
        index = {x: k for k, x in enumerate(xi.labels)}
        for x in xi.labels:
            if x in seen:
                continue
            cycles += 1
            while x not in seen:
                seen.add(x)
                x = g[index[x]]
        total += 2 ** cycles - 1
    if total % len(xi.elements()):
        raise AssertionError("Burnside sum is not divisible by the group order")
    return total // len(xi.elements())


def maximal_classes(n: int) -> list:
    """Orbit representatives of single vertices (maximal parahorics)."""
    xi = xi_group(n)
    reps = {canonical_subset([x], xi) for x in xi.labels}
    return sorted((r[0] for r in reps), key=sort_key)


def normalize_index(I, n: int) -> tuple:
    """Least of I and n - I, for index sets in [0, n]."""
    a = tuple(sorted(set(I)))
    b = tuple(sorted({n - i for i in I}))
    return min(a, b)
