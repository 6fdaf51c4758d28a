from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings

from helpers import elements
from spinflat.bruhat import (
    admissible_set,
    bfs_lengths,
    cell_keys,
    mu_minus,
    mu_plus,
    project_coset,
    stabilizer_group,
)
from spinflat.permissible import (
    Face,
    class_labels,
    e_of,
    enumerate_faces,
    enumerate_perm,
    enumerate_perm_general,
    face_element,
    face_of,
    face_stabilizer,
    face_to_element,
    is_face,
    is_naively_permissible,
    is_permissible_subset,
    is_pm_permissible,
    is_totally_isotropic,
    mu_vector,
    omega,
    orbit_classify,
    permissible_subsets,
    perm_elements,
    rank_range,
    representative_subset,
    reverse,
    spin_orbit_member,
    spin_orbit_member_brute,
    standard_face,
    stratum_rank,
    stratum_rank_matrix,
    subset_sign,
    zero_set,
)
from spinflat.weyl import AffineElement, kottwitz, special_elements


def test_omega_examples():
    assert omega(0, 4) == (0,) * 8
    assert omega(2, 4) == (-1, -1, 0, 0, 0, 0, 0, 0)
    assert omega(-2, 4) == (0, 0, 0, 0, 0, 0, 1, 1)
    assert omega(8, 4) == tuple(x - 1 for x in omega(0, 4))


def test_naive_permissibility_examples():
    assert not is_naively_permissible(AffineElement.identity(4), [2])
    for n in (4, 5):
        t = AffineElement.translation(mu_plus(n))
        for i in range(n + 1):
            assert is_naively_permissible(t, [i])
            assert is_pm_permissible(t, [i], "+")
            assert not is_pm_permissible(t, [i], "-")


def test_mu_vector_of_translation():
    t = AffineElement.translation(mu_plus(4))
    for i in range(5):
        assert mu_vector(t, i) == mu_plus(4)
    assert is_totally_isotropic(mu_plus(4))
    assert zero_set(mu_plus(4)) == {5, 6, 7, 8}


@pytest.mark.parametrize("n", [4, 5])
def test_duality_of_permissible_points(n):
    for i in range(n + 1):
        for w in perm_elements(i, "+", n):
            for j in (i, 2 * n - i):
                a, b = w.act(omega(j, n)), w.act(omega(-j, n))
                assert all(x + y == 1 for x, y in zip(a, reverse(b)))


def test_spin_parity_examples():
    assert spin_orbit_member(mu_plus(4), "+")
    assert not spin_orbit_member(mu_minus(4), "+")
    assert spin_orbit_member(mu_minus(5), "-")
    with pytest.raises(ValueError):
        spin_orbit_member((1,) * 8, "+")


def test_spin_parity_matches_orbit_n4():
    for bits in product((0, 1), repeat=4):
        mu = tuple(bits) + tuple(1 - b for b in reversed(bits))
        for sign in "+-":
            assert spin_orbit_member(mu, sign) == spin_orbit_member_brute(mu, sign)


def test_standard_face_is_face():
    for I in ([0], [2], [0, 2], [1, 3, 4]):
        assert is_face(standard_face(I, 4))


@settings(max_examples=40, deadline=None)
@given(elements(even=None))
def test_group_acts_on_faces(w):
    for f in enumerate_faces(2, 4)[:10] + [standard_face([0, 2, 3], 4)]:
        assert is_face(f.act(w))


def test_bad_faces_are_rejected():
    f = standard_face([2], 4)
    vp, vm = f.vectors[0]
    broken = Face((2,), ((vp, tuple(x + 1 for x in vm)),))
    assert not is_face(broken)
    with pytest.raises(ValueError):
        face_element(broken)


def test_face_to_element_standard():
    for i in range(1, 4):
        w = face_to_element(standard_face([i], 4))
        assert w.act(omega(i, 4)) == omega(i, 4)
        assert kottwitz(w).parity == 0


@settings(max_examples=40, deadline=None)
@given(elements())
def test_face_round_trip(u):
    for i in (1, 2, 3):
        if kottwitz(u).parity:
            u = u * special_elements(4).tau1
        f = face_of(u, [i])
        w = face_to_element(f)
        assert face_of(w, [i]) == f
        assert kottwitz(w).parity == 0


def test_face_to_element_hyperspecial_parity():
    t = AffineElement.translation(mu_plus(5))
    f = face_of(t, [0])
    assert face_element(f) == t
    with pytest.raises(ValueError):
        face_to_element(f)


def test_face_stabilizer_in_w_prime_is_w_i():
    tau1 = special_elements(4).tau1
    ball = bfs_lengths(4, 4)
    for i in range(1, 4):
        stab = stabilizer_group([i], 4)
        assert tau1 not in stab
        for w in ball:
            fixes = face_of(w, [i]) == standard_face([i], 4)
            assert fixes == (w in stab)
        assert face_stabilizer(i, 4) == stab | {h * tau1 for h in stab}


@pytest.mark.parametrize("n", [4, 5])
def test_cell_counts(n):
    for i in range(n + 1):
        plus, minus = enumerate_perm(i, "+", n), enumerate_perm(i, "-", n)
        if i in (0, n):
            assert len(plus) == len(minus) == 1
        else:
            assert len(plus | minus) == min(i, n - i) + 4


def test_perm_equals_adm_at_vertex_2():
    assert enumerate_perm(2, "+", 4) == cell_keys(admissible_set(mu_plus(4)), [2])


def test_general_perm_examples():
    assert enumerate_perm_general([2], "+", 4) == enumerate_perm(2, "+", 4)
    pulled = enumerate_perm_general([0, 2], "+", 4)
    assert {project_coset(c, 0) for c in pulled} <= enumerate_perm(0, "+", 4)


def test_permissible_subsets_and_classes():
    subs = permissible_subsets(2, 4)
    labels = {orbit_classify(E, 2, 4) for E in subs}
    assert len(labels) == 6
    assert orbit_classify(frozenset(range(1, 5)), 2, 4) == (2, 1)
    for ell in (0, 1):
        E = representative_subset(ell, 1, 2, 4)
        assert E == frozenset(range(3 - ell, 7 - ell))
        assert orbit_classify(E, 2, 4) == (ell, 1)
        assert stratum_rank(E, 2, 4) == ell
    with pytest.raises(ValueError):
        stratum_rank({1, 8, 2, 3}, 2, 4)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_representatives_cover_classes(n):
    for i in range(1, n):
        got = {orbit_classify(E, i, n) for E in permissible_subsets(i, n)}
        assert got == set(class_labels(i, n))
        assert len(got) == min(i, n - i) + 4
        for ell, d in class_labels(i, n):
            E = representative_subset(ell, d, i, n)
            assert is_permissible_subset(E, i, n)
            assert orbit_classify(E, i, n) == (ell, d)


def test_top_rank_signs_even_n():
    n = 4
    for i in range(1, n):
        signs = {d: subset_sign(representative_subset(i, d, i, n), n) for d in (1, 2, 3, 4)}
        assert signs == {1: "+", 2: "+", 3: "-", 4: "-"}


def test_top_rank_signs_swap_for_odd_n():
    n = 5
    for i in range(1, n):
        signs = {d: subset_sign(representative_subset(i, d, i, n), n) for d in (1, 2, 3, 4)}
        assert signs == {1: "-", 2: "-", 3: "+", 4: "+"}


def test_lower_rank_points_not_isotropic():
    for ell in (0, 1):
        assert subset_sign(representative_subset(ell, 1, 2, 4), 4) is None


def test_stratum_rank_matches_matrix():
    for i in range(5):
        for E in permissible_subsets(i, 4):
            assert stratum_rank(E, i, 4) == stratum_rank_matrix(E, i, 4)


@pytest.mark.parametrize("n", [4, 5])
def test_orbit_coset_bijection(n):
    for i in range(1, n):
        keys = enumerate_perm(i, "+", n) | enumerate_perm(i, "-", n)
        labels = {orbit_classify(e_of(c.rep, i), i, n) for c in keys}
        assert len(labels) == len(keys) == min(i, n - i) + 4


def test_subset_of_permissible_element_is_permissible():
    rng = random.Random(1)
    elems = sorted(perm_elements(2, "+", 4))
    for w in rng.sample(elems, 40):
        assert is_permissible_subset(e_of(w, 2), 2, 4)


def test_rank_range():
    assert list(rank_range(2, 4)) == [0, 1, 2]
    assert list(rank_range(3, 4)) == [2, 3]
