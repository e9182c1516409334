"""The Euclidean building Delta(p) for GL3(F_p(t)): lattice classes as
canonical forms over the valuation ring O, relative position and adjacency,
link enumeration via the flag geometry of F_p^3, the matrix action, and
induced link permutations.

Lattice classes are represented by a Hermite-style canonical form: a lower
triangular matrix with diagonal pi^(a_i), min a_i = 0, and each entry below
the diagonal reduced to its pi-adic Laurent prefix modulo pi^(a_row).  Row
order is fixed (no row permutations), so diagonal exponents are positional;
``relative_position`` provides the sorted view.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Optional

from .arith import INF, RatFunc, laurent_prefix, render_laurent
from .rep import MatrixRF


def _pi(p, k):
    return RatFunc.one(p).shift_pi(k)


class VertexClass:
    """A vertex of Delta(p): a lattice class with its canonical basis matrix."""

    __slots__ = ("p", "canon", "exps", "_key")

    def __init__(self, p, canon: MatrixRF, exps):
        self.p = p
        self.canon = canon
        self.exps = tuple(exps)
        self._key = canon.rows

    def __eq__(self, other):
        return isinstance(other, VertexClass) and self.p == other.p \
            and self._key == other._key

    def __hash__(self):
        return hash((self.p, self._key))

    def sort_key(self):
        return (self.exps, self.to_text())

    def to_text(self):
        """Serialize as `(a1,a2,a3 | e21;e31;e32)` with Laurent entries."""
        below = [self.canon[1, 0], self.canon[2, 0], self.canon[2, 1]]
        return "(%s | %s)" % (",".join(str(a) for a in self.exps),
                              ";".join(render_laurent(e.to_laurent())
                                       for e in below))

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return "VertexClass(p=%d, %s)" % (self.p, self.to_text())


def identity_vertex(p) -> VertexClass:
    return canonicalize(MatrixRF.identity(p))


def canonicalize(M: MatrixRF) -> VertexClass:
    """Canonical lattice-class representative of the column span of M.

    Column operations over GL3(O) and global scaling do not change the
    output; the result is lower triangular with diagonal pi^(a_i) and
    min a_i = 0.
    """
    p = M.p
    if M.det().is_zero():
        raise ValueError("singular matrix does not define a lattice")
    cols = [[M[i, j] for i in range(3)] for j in range(3)]
    exps = [0, 0, 0]

    for r in range(3):
        # pivot: minimum-valuation entry of row r among columns >= r
        best, bestval = None, INF
        for j in range(r, 3):
            v = cols[j][r].valuation()
            if v < bestval:
                best, bestval = j, v
        cols[r], cols[best] = cols[best], cols[r]
        a = int(bestval)
        exps[r] = a
        unit_inv = (cols[r][r].shift_pi(-a)).inverse()
        cols[r] = [e * unit_inv for e in cols[r]]
        for j in range(r + 1, 3):
            lam = cols[j][r].shift_pi(-a)
            cols[j] = [e - lam * f for e, f in zip(cols[j], cols[r])]

    # homothety: make the minimum diagonal exponent 0
    m = min(exps)
    if m:
        cols = [[e.shift_pi(-m) for e in col] for col in cols]
        exps = [a - m for a in exps]

    # reduce below-diagonal entries to pi-adic prefixes modulo the row pivot
    for j in range(2):
        for i in range(j + 1, 3):
            e = cols[j][i]
            pref = laurent_prefix(e, exps[i])
            lam = (e - pref).shift_pi(-exps[i])
            cols[j] = [a - lam * b for a, b in zip(cols[j], cols[i])]

    canon = MatrixRF(p, tuple(tuple(cols[j][i] for j in range(3))
                              for i in range(3)))
    return VertexClass(p, canon, exps)


def apply(g: MatrixRF, v: VertexClass) -> VertexClass:
    """The simplicial action: the class of g * (basis of v)."""
    return canonicalize(g * v.canon)


# ---------------------------------------------------------------------------
# relative position and adjacency

def relative_position(v1: VertexClass, v2: VertexClass):
    """Sorted pi-elementary-divisor exponents of M1^-1 M2, normalized d1 = 0.

    (0,0,0) iff equal classes; adjacency iff the result is (0,0,1) or (0,1,1).
    """
    N = v1.canon.inverse() * v2.canon
    vals = [e.valuation() for row in N.rows for e in row]
    d1 = min(vals)
    minors2 = []
    rows = N.rows
    for i in range(3):
        for j in range(i + 1, 3):
            for k in range(3):
                for l in range(k + 1, 3):
                    m = rows[i][k] * rows[j][l] - rows[i][l] * rows[j][k]
                    minors2.append(m.valuation())
    d12 = min(minors2)
    d123 = N.det().valuation()
    e = sorted((d1, d12 - d1, d123 - d12))
    # orient so that one step down an index-p sublattice reads (0,1,1)
    e = sorted(-x for x in e)
    return tuple(x - e[0] for x in e)


def is_adjacent(v1: VertexClass, v2: VertexClass) -> bool:
    return relative_position(v1, v2) in ((0, 0, 1), (0, 1, 1))


def is_chamber(v0: VertexClass, v1: VertexClass, v2: VertexClass) -> bool:
    """True iff representatives can be ordered pi*L0 < L2 < L1 < L0."""
    trio = (v0, v1, v2)
    if len({v0, v1, v2}) != 3:
        return False
    import itertools
    for a, b, c in itertools.permutations(trio):
        if (relative_position(a, b) == (0, 1, 1)
                and relative_position(b, c) == (0, 1, 1)
                and relative_position(a, c) == (0, 0, 1)):
            return True
    return False


# ---------------------------------------------------------------------------
# the flag geometry of F_p^3 and link enumeration

@lru_cache(maxsize=None)
def projective_points(p):
    """Normalized homogeneous representatives of the lines of F_p^3."""
    pts = []
    for b in range(p):
        for c in range(p):
            pts.append((1, b, c))
    for c in range(p):
        pts.append((0, 1, c))
    pts.append((0, 0, 1))
    return tuple(pts)


def plane_basis(phi, p):
    """Two spanning vectors of the kernel of the functional phi."""
    if phi[0] == 1:
        return ((-phi[1]) % p, 1, 0), ((-phi[2]) % p, 0, 1)
    if phi[1] == 1:
        return (1, 0, 0), (0, (-phi[2]) % p, 1)
    return (1, 0, 0), (0, 1, 0)


class LinkVertex(NamedTuple):
    dim: int                 # 1 = line, 2 = plane
    subspace: tuple          # normalized point (dim 1) or annihilator (dim 2)
    vclass: VertexClass


def _pivot(vec):
    for i, c in enumerate(vec):
        if c:
            return i
    raise ValueError("zero vector")


def _lift_columns(vecs, p):
    """Columns for the sublattice generated by the given residue vectors and pi*L."""
    pivots = {_pivot(v) for v in vecs}
    pi1 = _pi(p, 1)
    cols = [tuple(RatFunc.const(c, p) for c in v) for v in vecs]
    for j in range(3):
        if j not in pivots:
            cols.append(tuple(pi1 if i == j else RatFunc.zero(p)
                              for i in range(3)))
    return cols[:3]


def link(v: VertexClass):
    """All 2(p^2+p+1) vertices adjacent to v, ordered reproducibly.

    One per dimension-1 and dimension-2 subspace of L/pi*L = F_p^3 in the
    basis given by the canonical form of v.
    """
    p = v.p
    out = []
    for pt in projective_points(p):
        cols = _lift_columns([pt], p)
        G = MatrixRF(p, tuple(tuple(cols[j][i] for j in range(3))
                              for i in range(3)))
        out.append(LinkVertex(1, pt, canonicalize(v.canon * G)))
    for phi in projective_points(p):
        b1, b2 = plane_basis(phi, p)
        cols = _lift_columns([b1, b2], p)
        G = MatrixRF(p, tuple(tuple(cols[j][i] for j in range(3))
                              for i in range(3)))
        out.append(LinkVertex(2, phi, canonicalize(v.canon * G)))
    return out


class LinkPermutation(NamedTuple):
    perm: tuple              # perm[i] = index of the image of link vertex i
    cycle_type: tuple        # sorted multiset of cycle lengths
    type_preserving: bool    # dim-1 / dim-2 bipartition preserved


def cycle_type_of(perm):
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        out.append(n)
    return tuple(sorted(out))


def induced_link_permutation(g: MatrixRF, v: VertexClass) -> LinkPermutation:
    """The permutation g induces on link(v); g must stabilize v."""
    if apply(g, v) != v:
        raise ValueError("matrix does not stabilize the vertex")
    lk = link(v)
    index = {lv.vclass: i for i, lv in enumerate(lk)}
    perm = []
    ok = True
    for lv in lk:
        w = apply(g, lv.vclass)
        j = index.get(w)
        if j is None:
            raise ValueError("image of a link vertex left the link")
        if lk[j].dim != lv.dim:
            ok = False
        perm.append(j)
    return LinkPermutation(tuple(perm), cycle_type_of(perm), ok)


# ---------------------------------------------------------------------------
# DOT export

def link_dot(v: VertexClass) -> str:
    """Graphviz DOT of the link graph of v (vertices adjacent within the link)."""
    lk = link(v)
    lines = ["graph link {"]
    for i, lv in enumerate(lk):
        shape = "circle" if lv.dim == 1 else "box"
        lines.append('  n%d [shape=%s, label="%d"];' % (i, shape, i))
    for i in range(len(lk)):
        for j in range(i + 1, len(lk)):
            if is_adjacent(lk[i].vclass, lk[j].vclass):
                lines.append("  n%d -- n%d;" % (i, j))
    lines.append("}")
    return "\n".join(lines) + "\n"
