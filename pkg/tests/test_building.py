import random

import pytest

from buraubuilding.arith import RatFunc, LaurentPoly
from buraubuilding.building import (
    VertexClass,
    apply,
    canonicalize,
    identity_vertex,
    induced_link_permutation,
    is_adjacent,
    is_chamber,
    link,
    link_dot,
    relative_position,
)
from buraubuilding.rep import MatrixRF, letter_matrix, named_matrix, word_evaluate, parse_word


def random_unit(rng, p, span=3):
    # valuation-0 Laurent polynomial in pi: nonzero constant term
    coeffs = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(span)]
    return LaurentPoly(p, coeffs[::-1], -span, "t").to_ratfunc()


def random_o_elt(rng, p, span=3):
    # element of O = F_p[pi] localized away from pi, here a polynomial in pi
    k = rng.randint(0, span)
    coeffs = [rng.randrange(p) for _ in range(span + 1)]
    return LaurentPoly(p, coeffs[::-1], -span, "t").to_ratfunc().shift_pi(k) \
        if any(coeffs) else RatFunc.zero(p)


def random_matrix(rng, p, span=2):
    rows = tuple(tuple(
        LaurentPoly(p, [rng.randrange(p) for _ in range(span + 1)],
                    -rng.randint(0, span), "t").to_ratfunc()
        for _ in range(3)) for _ in range(3))
    return MatrixRF(p, rows)


def random_column_ops(rng, v: VertexClass):
    """Apply a random sequence of GL3(O) column operations and a homothety."""
    p = v.p
    m = [[v.canon[i, j] for j in range(3)] for i in range(3)]
    for _ in range(rng.randint(1, 6)):
        op = rng.randrange(3)
        if op == 0:
            j, k = rng.sample(range(3), 2)
            lam = random_o_elt(rng, p)
            for i in range(3):
                m[i][j] = m[i][j] + lam * m[i][k]
        elif op == 1:
            j = rng.randrange(3)
            u = random_unit(rng, p)
            for i in range(3):
                m[i][j] = m[i][j] * u
        else:
            j, k = rng.sample(range(3), 2)
            for i in range(3):
                m[i][j], m[i][k] = m[i][k], m[i][j]
    shift = rng.randint(-2, 2)
    rows = tuple(tuple(m[i][j].shift_pi(shift) for j in range(3)) for i in range(3))
    return MatrixRF(p, rows)


# -- canonical forms ----------------------------------------------------------

def test_identity_vertex():
    I = identity_vertex(3)
    assert I.exps == (0, 0, 0)
    assert I.canon == MatrixRF.identity(3)


def test_canonicalize_invariance_column_ops():
    rng = random.Random(20240601)
    for _ in range(100):
        p = rng.choice((2, 3, 5))
        m = random_matrix(rng, p)
        if m.det().is_zero():
            continue
        v = canonicalize(m)
        w = canonicalize(random_column_ops(rng, v))
        assert w == v


def test_canonicalize_rejects_singular():
    z = RatFunc.zero(3)
    m = MatrixRF(3, ((z, z, z),) * 3)
    with pytest.raises(ValueError):
        canonicalize(m)


def test_equality_iff_unimodular_quotient():
    # distinct canonical forms define distinct classes
    rng = random.Random(7)
    seen = {}
    for _ in range(50):
        m = random_matrix(rng, 3)
        if m.det().is_zero():
            continue
        v = canonicalize(m)
        if v.to_text() in seen:
            assert seen[v.to_text()] == v
        seen[v.to_text()] = v


# -- relative position and adjacency -------------------------------------------

def test_relative_position_reflexive():
    rng = random.Random(11)
    for _ in range(20):
        m = random_matrix(rng, 3)
        if m.det().is_zero():
            continue
        v = canonicalize(m)
        assert relative_position(v, v) == (0, 0, 0)


def test_adjacency_symmetric():
    I = identity_vertex(3)
    for lv in link(I):
        assert is_adjacent(I, lv.vclass)
        assert is_adjacent(lv.vclass, I)


def test_link_counts():
    for p, n in ((2, 14), (3, 26), (5, 62)):
        lk = link(identity_vertex(p))
        assert len(lk) == n
        assert len({lv.vclass for lv in lk}) == n


def test_link_within_degree_p3():
    lk = link(identity_vertex(3))
    for i in range(26):
        deg = sum(1 for j in range(26) if i != j
                  and is_adjacent(lk[i].vclass, lk[j].vclass))
        assert deg == 4


def test_chamber_from_flag():
    I = identity_vertex(3)
    lk = link(I)
    # an incident (line, plane) flag gives a chamber with I
    found = False
    for a in lk:
        for b in lk:
            if a.dim == 1 and b.dim == 2 and is_adjacent(a.vclass, b.vclass):
                assert is_chamber(I, a.vclass, b.vclass)
                found = True
                break
        if found:
            break
    assert found


def test_not_chamber_same_dim():
    I = identity_vertex(3)
    lk = link(I)
    lines = [lv.vclass for lv in lk if lv.dim == 1]
    assert not is_chamber(I, lines[0], lines[1])


# -- the action ----------------------------------------------------------------

def test_action_associativity():
    rng = random.Random(20240601)
    letters = ["s1", "s2", "s3", "x", "y", "u"]
    I = identity_vertex(3)
    for _ in range(25):
        w1 = ".".join(rng.choice(letters) for _ in range(rng.randint(1, 4)))
        w2 = ".".join(rng.choice(letters) for _ in range(rng.randint(1, 4)))
        g = word_evaluate(parse_word(w1), 3)
        h = word_evaluate(parse_word(w2), 3)
        assert apply(g * h, I) == apply(g, apply(h, I))


def test_action_preserves_adjacency():
    rng = random.Random(5)
    I = identity_vertex(3)
    lk = link(I)
    g = word_evaluate(parse_word("x.y.u^-1.x"), 3)
    gI = apply(g, I)
    for lv in rng.sample(lk, 8):
        assert is_adjacent(gI, apply(g, lv.vclass))


def test_homothety_acts_trivially():
    v = canonicalize(named_matrix("M19", 3))
    tI = MatrixRF.identity(3).entry_map(lambda e: e.shift_pi(3))
    assert apply(tI, v) == v


# -- induced link permutations ---------------------------------------------------

def test_identity_induces_identity():
    I = identity_vertex(3)
    lp = induced_link_permutation(MatrixRF.identity(3), I)
    assert lp.perm == tuple(range(26))
    assert lp.type_preserving


def test_u_cycle_type_on_link_of_fixed_vertex():
    u = named_matrix("u", 3)
    v = canonicalize(named_matrix("M19", 3))
    lp = induced_link_permutation(u, v)
    assert lp.cycle_type == (1, 1, 1, 1, 2, 2, 3, 3, 6, 6)
    assert lp.type_preserving


def test_non_stabilizer_raises():
    x = letter_matrix("x", 3)
    v = canonicalize(named_matrix("M19", 3))
    with pytest.raises(ValueError):
        induced_link_permutation(x, v)


def test_link_dot_shape():
    out = link_dot(identity_vertex(2))
    assert out.startswith("graph link {")
    assert out.count("n0 ") >= 1
