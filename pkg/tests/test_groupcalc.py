import random

import pytest

from buraubuilding.building import (
    apply,
    canonicalize,
    identity_vertex,
    induced_link_permutation,
    link,
)
from buraubuilding.groupcalc import (
    LINK_GROUP_WORDS,
    entry_degree_bounds,
    form_pullback,
    kernel_witness_check,
    n_point_base,
    normalize_mod_homothety,
    orbit_bfs,
    perm_group_order,
    perm_orbit_sizes,
    seven_star,
    seven_star_pair,
    stab_exact,
    stab_identity_exact,
    stab_words,
    verify_relations,
)
from buraubuilding.rep import (
    MatrixRF,
    is_unitary,
    letter_matrix,
    named_matrix,
    order_mod_homothety,
    parse_word,
    word_evaluate,
)


# -- permutation helpers --------------------------------------------------------

def test_perm_group_order():
    # <(0 1 2)> and <(0 1), (0 1 2)> on three letters
    assert perm_group_order([(1, 2, 0)]) == 3
    assert perm_group_order([(1, 0, 2), (1, 2, 0)]) == 6


def test_perm_orbit_sizes():
    assert perm_orbit_sizes([(1, 0, 2, 3)], 4) == (1, 1, 2)


def test_normalize_mod_homothety():
    u = named_matrix("u", 3)
    shifted = u.entry_map(lambda e: e.shift_pi(2))
    assert normalize_mod_homothety(shifted) == normalize_mod_homothety(u)


# -- the pulled-back form ---------------------------------------------------------

def test_form_pullback_identity_fixed_by_unitary_constants():
    F0 = form_pullback(identity_vertex(3))
    # entries live over t: even part of M* J M in s
    bounds = entry_degree_bounds(F0)
    assert all(b >= 0 for b in (bounds[0][0], bounds[1][1], bounds[2][2]))


def test_degree_bounds_cut_search():
    v = canonicalize(named_matrix("M19", 3))
    F0 = form_pullback(v)
    D = entry_degree_bounds(F0)
    assert max(max(row) for row in D) <= 8


# -- exact stabilizers -------------------------------------------------------------

def test_stab_identity_small_primes():
    for p, n in ((2, 4), (3, 4), (5, 4)):
        rpt = stab_identity_exact(p)
        assert rpt.complete
        assert rpt.image_order == n


def test_stab_identity_generated_by_x():
    rpt = stab_identity_exact(3)
    x = letter_matrix("x", 3)
    keys = {normalize_mod_homothety(g).rows for g in rpt.elements}
    assert normalize_mod_homothety(x).rows in keys


def test_stab_exact_matches_identity_enumeration():
    a = stab_identity_exact(3)
    b = stab_exact(identity_vertex(3))
    assert a.order == b.order == 4
    assert a.image_order == b.image_order


def test_stab_exact_n_point():
    rpt = stab_exact(n_point_base(3))
    assert rpt.complete
    assert rpt.order == 6
    assert rpt.image_order == 6
    assert rpt.element_orders == (1, 2, 3, 3, 6, 6)


def test_stab_words_lower_bound():
    rpt = stab_words(identity_vertex(3), ("x",), depth=4)
    assert not rpt.complete
    assert rpt.image_order == 4


# -- distinguished vertices ----------------------------------------------------------

def test_n_point_is_u_fixed_neighbor():
    v = n_point_base(3)
    I = identity_vertex(3)
    u = named_matrix("u", 3)
    assert apply(u, v) == v
    assert v in {lv.vclass for lv in link(I)}
    others = [lv.vclass for lv in link(I)
              if apply(u, lv.vclass) == lv.vclass and lv.vclass != v]
    assert not others


def test_seven_star_pair_swap():
    a, b = seven_star_pair(3)
    u = letter_matrix("u", 3)
    u1 = letter_matrix("u1", 3)
    xyx = word_evaluate(parse_word("x.y.x"), 3)
    assert a != b
    assert apply(u, a) == a and apply(u, b) == b
    assert apply(u1, a) == a
    assert apply(xyx, a) == b


def test_h_stabilizes_seven_star():
    h = named_matrix("h", 3)
    v = seven_star(3)
    assert apply(h, v) == v
    assert order_mod_homothety(h) == 3
    assert is_unitary(h)


# -- orbits ------------------------------------------------------------------------

def test_orbit_bfs_identity_small_depth():
    orb = orbit_bfs(identity_vertex(3), ("x", "y"), depth=1)
    assert identity_vertex(3) in orb
    assert len(orb) > 1


def test_orbit_budget():
    with pytest.raises(ValueError):
        orbit_bfs(identity_vertex(3), ("x", "y", "u"), depth=6, budget=10)


def test_link_group_words_distinct():
    I = identity_vertex(3)
    lk = {lv.vclass for lv in link(I)}
    from buraubuilding.groupcalc import _relator_word
    verts = [apply(word_evaluate(_relator_word(w), 3), I)
             for w in LINK_GROUP_WORDS]
    assert len(set(verts)) == 18
    assert all(v in lk for v in verts)


# -- relations and the witness ---------------------------------------------------

def test_relations_all_hold():
    reports = verify_relations(3)
    assert len(reports) == 9
    assert all(r.holds_mod_p for r in reports)
    braid = [r for r in reports if r.holds_integrally is not None]
    assert all(r.holds_integrally for r in braid)
    assert any(r.name == "[x^2, yxy]" for r in braid)


def test_relations_wrong_prime():
    with pytest.raises(ValueError):
        verify_relations(5)


def test_kernel_witness():
    r = kernel_witness_check()
    assert r.holds_mod_p
    assert not r.holds_integrally
    assert len(r.relator) == 72
