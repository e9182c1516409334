"""Stabilizer computation for the J-isometry action on the building:
exact bounded enumeration (constant matrices at the identity vertex,
pi-adic digit enumeration elsewhere), word search, orbit classification
outward from the identity vertex, relation verification for the
presentation of the isometry group at p = 3, the kernel-witness check,
and the tube pattern walk.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Optional

import numpy as np

from .arith import INF, LaurentPoly, RatFunc, check_prime, inv_mod
from .rep import (
    GroupWord,
    MatrixRF,
    is_homothety,
    is_unitary,
    letter_matrix,
    named_matrix,
    named_word,
    order_mod_homothety,
    parse_word,
    squier_form,
    word_evaluate,
    word_evaluate_integral,
)
from .building import (
    VertexClass,
    apply,
    canonicalize,
    identity_vertex,
    induced_link_permutation,
    link,
)


# ---------------------------------------------------------------------------
# normalization of matrices modulo homothety

def normalize_mod_homothety(A: MatrixRF) -> MatrixRF:
    """Canonical representative of A modulo scalars c*t^k.

    Requires Laurent entries.  The minimum t-exponent over all entries is
    shifted to 0 and the first nonzero coefficient (row-major, lowest
    exponent first) is scaled to 1.
    """
    ls = [A[i, j].to_laurent() for i in range(3) for j in range(3)]
    m = min(l.minexp for l in ls if not l.is_zero())
    shift = RatFunc.one(A.p, A.var).shift_pi(m)   # t^-m
    B = A.scale(shift)
    lead = None
    for i in range(3):
        for j in range(3):
            e = B[i, j].to_laurent()
            if not e.is_zero():
                lead = e.coeffs[0]
                break
        if lead is not None:
            break
    c = RatFunc.const(inv_mod(lead, A.p), A.p, A.var)
    return B.scale(c)


def perm_group_order(perms):
    """Order of the permutation group generated by the given tuples."""
    n = None
    gens = []
    for pm in perms:
        n = len(pm)
        gens.append(tuple(pm))
    if not gens:
        return 1
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = tuple(h[g[i]] for i in range(n))
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return len(seen)


def perm_orbit_sizes(perms, n):
    """Sorted orbit-size multiset of the group generated by perms on n points."""
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for pm in perms:
        for i in range(n):
            a, b = find(i), find(pm[i])
            if a != b:
                parent[a] = b
    sizes = {}
    for i in range(n):
        r = find(i)
        sizes[r] = sizes.get(r, 0) + 1
    return tuple(sorted(sizes.values()))


# ---------------------------------------------------------------------------
# the pulled-back form and valuation bounds

def form_pullback(v: VertexClass) -> MatrixRF:
    """(M* J M) / s over F_p(t), where M is the canonical basis of v.

    J has odd s-exponents, matrices over t have even ones, so M*JM is s
    times a matrix over t.  A matrix g with Laurent entries satisfies
    g*Jg = J iff alpha = M^-1 g M satisfies alpha* F alpha = F for this F.
    """
    p = v.p
    Ms = v.canon.to_s()
    F = Ms.star() * squier_form(p) * Ms
    s_inv = RatFunc(p, (0, 1), (1,), "s").inverse()
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            e = F[i, j] * s_inv
            if any(e.num[1::2]) or any(e.den[1::2]):
                raise ValueError("pulled-back form entry has odd s-exponents")
            row.append(RatFunc(p, e.num[0::2], e.den[0::2], "t"))
        rows.append(tuple(row))
    return MatrixRF(p, rows, "t")


def entry_degree_bounds(F0: MatrixRF):
    """Per-entry pi-degree bounds for candidate alpha with alpha* F0 alpha = F0.

    From alpha* = F0 alpha^-1 F0^-1 and alpha, alpha^-1 over O:
    nu(alpha*_ij) >= r_i + c_j, hence deg_pi(alpha_ji) <= -(r_i + c_j)
    where r_i is the row minimum of nu over F0 and c_j the column minimum
    over F0^-1.  Entries with a negative bound are forced to zero.
    """
    Finv = F0.inverse()
    r = [min(F0[i, k].valuation() for k in range(3)) for i in range(3)]
    c = [min(Finv[l, j].valuation() for l in range(3)) for j in range(3)]
    return [[-(r[b] + c[a]) for b in range(3)] for a in range(3)]


# ---------------------------------------------------------------------------
# reports

class StabReport(NamedTuple):
    vertex: VertexClass
    method: str                  # "exact" | "word-search"
    complete: bool
    elements: tuple              # MatrixRF acting on the building, one per class mod homothety
    order: int                   # classes modulo homothety (lower bound if not complete)
    image_order: int             # order of the induced permutation group on the link
    element_orders: tuple        # sorted orders mod homothety of the elements
    image_orbit_sizes: tuple     # orbit-size multiset of the image group on the link
    bounds: dict

    def to_json_dict(self):
        return {
            "bounds": {k: self.bounds[k] for k in sorted(self.bounds)},
            "complete": self.complete,
            "elementOrders": list(self.element_orders),
            "imageOrbitSizes": list(self.image_orbit_sizes),
            "imageOrder": self.image_order,
            "method": self.method,
            "order": self.order,
            "vertex": self.vertex.to_text(),
        }


class RelationReport(NamedTuple):
    name: str
    relator: object              # GroupWord
    holds_mod_p: bool
    holds_integrally: Optional[bool]   # None when the relator involves u

    def to_json_dict(self):
        return {
            "holdsIntegrally": self.holds_integrally,
            "holdsModP": self.holds_mod_p,
            "name": self.name,
            "relator": str(self.relator),
        }


# ---------------------------------------------------------------------------
# exact stabilizer at the identity vertex: constant matrices

IDENTITY_STAB_PRIME_BOUND = 11


def stab_identity_exact(p: int) -> StabReport:
    """All A in GL3(F_p) with A^T J A = J, modulo scalars, with link action.

    For constant matrices the unitarity condition over F_p[s,1/s] splits
    by s-degree into A^T (N - I) A = N - I where N is the strict upper
    shift; the s^+1 component is the transpose of the same equation.
    """
    check_prime(p)
    if p > IDENTITY_STAB_PRIME_BOUND:
        raise ValueError(
            "identity-stabilizer enumeration supports p <= %d, got %d"
            % (IDENTITY_STAB_PRIME_BOUND, p))
    K = np.array([[-1, 1, 0], [0, -1, 1], [0, 0, -1]], dtype=np.int64) % p
    vecs = np.array(list(itertools.product(range(p), repeat=3)), dtype=np.int64)
    q = np.einsum("ni,ij,nj->n", vecs, K, vecs) % p
    C = vecs[q == (p - 1) % p]          # columns with the diagonal value K_ii = -1
    sols = []
    for c0 in C:
        kt0 = (K.T @ c0) % p            # c0^T K v = kt0 . v
        k0 = (K @ c0) % p               # v^T K c0 = k0 . v
        m1 = ((C @ kt0) % p == K[0][1]) & ((C @ k0) % p == K[1][0])
        m2base = ((C @ kt0) % p == K[0][2]) & ((C @ k0) % p == K[2][0])
        for c1 in C[m1]:
            kt1 = (K.T @ c1) % p
            k1 = (K @ c1) % p
            m2 = m2base & ((C @ kt1) % p == K[1][2]) & ((C @ k1) % p == K[2][1])
            for c2 in C[m2]:
                sols.append(np.stack([c0, c1, c2], axis=1) % p)
    # quotient by the unitary scalars {c : c^2 = 1}
    scalars = [c for c in range(1, p) if (c * c) % p == 1]
    seen = set()
    classes = []
    for A in sols:
        key = min(tuple(((c * A) % p).flatten()) for c in scalars)
        if key not in seen:
            seen.add(key)
            classes.append(A)
    mats = [MatrixRF.from_strings([[str(int(A[i, j])) for j in range(3)]
                                   for i in range(3)], p) for A in classes]
    I = identity_vertex(p)
    perms = []
    orders = []
    for g in mats:
        if apply(g, I) != I or not is_unitary(g):
            raise AssertionError("enumerated matrix fails the independent re-check")
        perms.append(induced_link_permutation(g, I).perm)
        orders.append(order_mod_homothety(g))
    return StabReport(
        vertex=I, method="exact", complete=True, elements=tuple(mats),
        order=len(mats), image_order=perm_group_order(perms),
        element_orders=tuple(sorted(orders)),
        image_orbit_sizes=perm_orbit_sizes(perms, 2 * (p * p + p + 1)),
        bounds={"primeBound": IDENTITY_STAB_PRIME_BOUND})


# ---------------------------------------------------------------------------
# exact stabilizer at a general vertex: bounded pi-adic digit enumeration

DEFAULT_DIGIT_BOUND = 8
DEFAULT_COLUMN_BUDGET = 4_000_000


def _laurent_pi_coeffs(e: RatFunc):
    """Laurent entry as {pi-exponent: coefficient}."""
    l = e.to_laurent()
    return {-(l.minexp + i): c for i, c in enumerate(l.coeffs) if c}


def _column_candidates(p, F0pi, degs, b, window, budget):
    """Digit arrays for column b passing B(c, c) = F0[b][b].

    degs[a] is the pi-degree bound of entry (a, b); negative means the
    entry is identically zero.  Returns (digit matrix, per-entry digit
    counts).  B(u, v) = sum_a,e bar(u_a) F0[a][e] v_e.
    """
    ns = [max(d + 1, 0) for d in degs]
    total = sum(ns)
    N = p ** total
    if N > budget:
        raise ValueError("column candidate space %d exceeds budget %d" % (N, budget))
    idx = np.arange(N, dtype=np.int64)
    digs = np.empty((N, total), dtype=np.int16)
    for k in range(total):
        digs[:, k] = (idx // (p ** k)) % p
    starts = np.cumsum([0] + ns)
    lo, hi = window
    width = hi - lo + 1
    P = np.zeros((N, width), dtype=np.int64)
    for a in range(3):
        if ns[a] == 0:
            continue
        ca = digs[:, starts[a]:starts[a + 1]]
        for e in range(3):
            if ns[e] == 0 or not F0pi[a][e]:
                continue
            ce = digs[:, starts[e]:starts[e + 1]]
            for r in range(-(ns[a] - 1), ns[e]):
                k0 = max(0, -r)
                k1 = min(ns[a], ns[e] - r)
                if k0 >= k1:
                    continue
                corr = np.einsum("nk,nk->n", ca[:, k0:k1], ce[:, k0 + r:k1 + r],
                                 dtype=np.int64)
                for q, f in F0pi[a][e].items():
                    P[:, q + r - lo] += f * corr
    P %= p
    target = np.zeros(width, dtype=np.int64)
    for q, f in F0pi[b][b].items():
        target[q - lo] = f
    mask = np.all(P == target, axis=1)
    return digs[mask], ns


def _digits_to_ratfuncs(row, ns, p):
    """One digit row back to a column of three RatFunc entries."""
    out = []
    pos = 0
    for n in ns:
        e = LaurentPoly(p, [int(d) for d in row[pos:pos + n]][::-1], -(n - 1), "t") \
            if n else LaurentPoly.zero(p)
        out.append(e.to_ratfunc())
        pos += n
    return tuple(out)


def _linear_pair_filter(p, F0, fixed_col, digs, ns, target_entry):
    """Mask of candidate columns w with B(fixed_col, w) = target_entry.

    B(u, w) = sum_e g_e w_e with g_e = sum_a bar(u_a) F0[a][e], so for a
    fixed u the constraint is linear in the digits of w.
    """
    g = []
    for e in range(3):
        acc = RatFunc.zero(p)
        for a in range(3):
            if not fixed_col[a].is_zero() and not F0[a, e].is_zero():
                acc = acc + fixed_col[a].involution() * F0[a, e]
        g.append(_laurent_pi_coeffs(acc))
    tgt = _laurent_pi_coeffs(target_entry)
    exps = [q for d in g for q in d]
    if not exps:
        ok = not tgt
        return np.full(len(digs), ok, dtype=bool)
    lo = min(min(d) for d in g if d)
    hi = max(max(d) + ns[e] - 1 for e, d in enumerate(g) if d)
    if any(q < lo or q > hi for q in tgt):
        return np.zeros(len(digs), dtype=bool)
    width = hi - lo + 1
    starts = np.cumsum([0] + list(ns))
    L = np.zeros((sum(ns), width), dtype=np.int64)
    for e in range(3):
        for r, f in g[e].items():
            for m in range(ns[e]):
                L[starts[e] + m, r + m - lo] += f
    P = (digs.astype(np.int64) @ L) % p
    target = np.zeros(width, dtype=np.int64)
    for q, f in tgt.items():
        target[q - lo] = f % p
    return np.all(P == target, axis=1)


def stab_exact(v: VertexClass, digit_bound: int = DEFAULT_DIGIT_BOUND,
               column_budget: int = DEFAULT_COLUMN_BUDGET) -> StabReport:
    """All building isometries with Laurent entries stabilizing v, mod homothety.

    Enumerates alpha in GL3(O) with Laurent entries and alpha* F0 alpha = F0
    (F0 the pulled-back form of v); each class of the stabilizer modulo
    homothety has exactly the representatives +-alpha, since the canonical
    basis of v has monomial determinant.  Every reported element is
    re-checked independently: unitary, Laurent, and fixes v.
    """
    p = v.p
    F0 = form_pullback(v)
    D = entry_degree_bounds(F0)
    if max(max(row) for row in D) > digit_bound:
        raise ValueError("entry degree bound %d exceeds digit bound %d"
                         % (max(max(row) for row in D), digit_bound))
    F0pi = [[_laurent_pi_coeffs(F0[a, e]) for e in range(3)] for a in range(3)]
    exps = [q for row in F0pi for d in row for q in d]
    dmax = max(max(row) for row in D)
    lo = min(exps) - dmax
    hi = max(exps) + dmax
    digsets = []
    for b in range(3):
        digs, ns = _column_candidates(p, F0pi, [D[a][b] for a in range(3)], b,
                                      (lo, hi), column_budget)
        digsets.append((digs, ns))

    # chain the cross constraints B(c_b, c_e) = F0[b][e], smallest column
    # first; the reversed constraint is implied since bar(F0^T) = t F0
    b0, b1, b2 = sorted(range(3), key=lambda b: len(digsets[b][0]))
    M = v.canon
    Minv = M.inverse()
    found = []
    seen = set()
    for row0 in digsets[b0][0]:
        c0 = _digits_to_ratfuncs(row0, digsets[b0][1], p)
        mask1 = _linear_pair_filter(p, F0, c0, digsets[b1][0], digsets[b1][1],
                                    F0[b0, b1])
        mask2a = _linear_pair_filter(p, F0, c0, digsets[b2][0], digsets[b2][1],
                                     F0[b0, b2])
        digs2a = digsets[b2][0][mask2a]
        for row1 in digsets[b1][0][mask1]:
            c1 = _digits_to_ratfuncs(row1, digsets[b1][1], p)
            mask2 = _linear_pair_filter(p, F0, c1, digs2a, digsets[b2][1],
                                        F0[b1, b2])
            for row2 in digs2a[mask2]:
                c2 = _digits_to_ratfuncs(row2, digsets[b2][1], p)
                bycol = {b0: c0, b1: c1, b2: c2}
                alpha = MatrixRF(p, tuple(tuple(bycol[col][row]
                                                for col in range(3))
                                          for row in range(3)))
            if alpha.det().valuation() != 0:
                continue
            if alpha.star() * F0 * alpha != F0:
                continue
            g = M * alpha * Minv
            key = _sign_key(g)
            if key in seen:
                continue
            seen.add(key)
            if not all(g[a, b].is_laurent() for a in range(3) for b in range(3)):
                raise AssertionError("conjugated stabilizer element is not Laurent")
            if not is_unitary(g) or apply(g, v) != v:
                raise AssertionError("enumerated matrix fails the independent re-check")
            found.append(normalize_mod_homothety(g))
    found.sort(key=_matrix_sort_key)
    perms = [induced_link_permutation(g, v).perm for g in found]
    orders = sorted(order_mod_homothety(g) for g in found)
    return StabReport(
        vertex=v, method="exact", complete=True, elements=tuple(found),
        order=len(found), image_order=perm_group_order(perms),
        element_orders=tuple(orders),
        image_orbit_sizes=perm_orbit_sizes(perms, 2 * (p * p + p + 1)),
        bounds={"digitBound": digit_bound, "columnBudget": column_budget,
                "degreeBounds": D})


def _sign_key(g: MatrixRF):
    """Dedup key identifying g with -g and scalar t-shifts."""
    A = normalize_mod_homothety(g)
    return tuple(A[i, j] for i in range(3) for j in range(3))


def _matrix_sort_key(g: MatrixRF):
    return tuple(str(g[i, j]) for i in range(3) for j in range(3))


# ---------------------------------------------------------------------------
# word search

def _gen_matrices(gens, p):
    out = []
    for g in gens:
        if isinstance(g, MatrixRF):
            out.append(g)
        elif isinstance(g, str):
            out.append(letter_matrix(g, p))
        else:
            out.append(word_evaluate(g, p))
    return out


def stab_words(v: VertexClass, gens, depth: int) -> StabReport:
    """BFS over words in gens; lower bound for the stabilizer of v.

    Collects elements fixing v, reports the order of the permutation
    group their link actions generate.  Never complete: word search can
    only undercount.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    p = v.p
    mats = _gen_matrices(gens, p)
    mats = mats + [m.inverse() for m in mats]
    ident = MatrixRF.identity(p)
    seen = {_sign_key(ident): ident}
    frontier = [ident]
    for _ in range(depth):
        nxt = []
        for g in frontier:
            for m in mats:
                h = g * m
                key = _sign_key(h)
                if key not in seen:
                    seen[key] = h
                    nxt.append(h)
        frontier = nxt
    stab = [g for g in seen.values() if apply(g, v) == v]
    for g in stab:
        if not is_unitary(g):
            raise AssertionError("word-search element fails the unitarity re-check")
    stab = [normalize_mod_homothety(g) for g in stab]
    stab.sort(key=_matrix_sort_key)
    perms = [induced_link_permutation(g, v).perm for g in stab]
    orders = sorted(order_mod_homothety(g, maxn=200) or 0 for g in stab)
    return StabReport(
        vertex=v, method="word-search", complete=False, elements=tuple(stab),
        order=len(stab), image_order=perm_group_order(perms),
        element_orders=tuple(orders),
        image_orbit_sizes=perm_orbit_sizes(perms, 2 * (p * p + p + 1)),
        bounds={"depth": depth, "generators": len(gens)})


# ---------------------------------------------------------------------------
# distinguished vertices at p = 3

def n_point_base(p: int = 3) -> VertexClass:
    """The unique vertex adjacent to [I] whose class is fixed by u."""
    return canonicalize(named_matrix("M19", p))


def seven_star_pair(p: int = 3):
    """The distinguished u-fixed pair in the link of the n-point base.

    The first vertex is the 7*-type representative: xyx maps it onto the
    second, so that u1 = (xyx)^-1.u.xyx stabilizes the first.  Candidates
    are ordered canonically before testing, making the choice reproducible.
    """
    u = letter_matrix("u", p)
    u1 = letter_matrix("u1", p)
    xyx = word_evaluate(parse_word("x.y.x"), p)
    base = n_point_base(p)
    fixed = sorted((lv.vclass for lv in link(base)
                    if apply(u, lv.vclass) == lv.vclass),
                   key=lambda w: w.sort_key())
    for a in fixed:
        img = apply(xyx, a)
        if img != a and img in fixed and apply(u1, a) == a:
            return a, img
    raise AssertionError("no xyx-swapped pair among the u-fixed link vertices")


def seven_star(p: int = 3) -> VertexClass:
    return seven_star_pair(p)[0]


# ---------------------------------------------------------------------------
# orbits

def orbit_bfs(start: VertexClass, gens, depth: int, budget: int = 200_000):
    """Vertices reachable from start by generator applications up to depth."""
    p = start.p
    mats = _gen_matrices(gens, p)
    mats = mats + [m.inverse() for m in mats]
    seen = {start}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for m in mats:
                w = apply(m, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
            if len(seen) > budget:
                raise ValueError("orbit budget %d exhausted" % budget)
        frontier = nxt
    return seen


def ball(p: int, radius: int):
    """All vertices within the given link-distance of the identity vertex."""
    I = identity_vertex(p)
    seen = {I: 0}
    frontier = [I]
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for lv in link(v):
                if lv.vclass not in seen:
                    seen[lv.vclass] = d
                    nxt.append(lv.vclass)
        frontier = nxt
    return seen


class OrbitTable(NamedTuple):
    p: int
    radius: int
    generators: tuple
    orbits: tuple        # of dicts
    complete: bool

    def to_json_dict(self):
        return {
            "complete": self.complete,
            "generators": list(self.generators),
            "orbits": [
                {k: o[k] for k in sorted(o)} for o in self.orbits
            ],
            "p": self.p,
            "radius": self.radius,
        }


def orbit_classify(p: int, gens=("x", "y", "u"), radius: int = 1,
                   orbit_depth: int = 6, budget: int = 200_000,
                   stab_reports: bool = True) -> OrbitTable:
    """Partition the radius-ball around [I] into orbits of the gens-group.

    Orbits are labeled by the distinguished representatives they contain:
    the identity vertex (group points), the u-fixed neighbor of [I]
    (n-points), and the tube chain vertices.  Labels never rely on any
    external numbering of vertices.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    B = ball(p, radius)
    labeled = {}
    complete = True
    anchors = [("group-point", identity_vertex(p))]
    if p == 3 and any(str(g) == "u" for g in gens):
        anchors.append(("n-point", n_point_base(p)))
        seven, eleven = seven_star_pair(p)
        anchors.append(("tube(1)", seven))
        if radius >= 2:
            lvl = seven
            prev = {seven, eleven}
            for k in range(2, radius + 1):
                nxt = _tube_next(lvl, p, prev)
                anchors.append(("tube(%d)" % k, nxt[0]))
                prev = set(nxt)
                lvl = nxt[0]
    orbit_entries = []
    assigned = {}
    for label, rep in anchors:
        if rep not in B:
            continue
        try:
            orb = orbit_bfs(rep, gens, orbit_depth, budget)
        except ValueError:
            complete = False
            orb = {rep}
        members = [w for w in B if w in orb and w not in assigned]
        for w in members:
            assigned[w] = label
        entry = {
            "label": label,
            "representative": rep.to_text(),
            "sizeWithinRadius": len(members),
        }
        orbit_entries.append((entry, rep))
    leftovers = [w for w in B if w not in assigned]
    while leftovers:
        rep = min(leftovers, key=lambda w: w.sort_key())
        try:
            orb = orbit_bfs(rep, gens, orbit_depth, budget)
        except ValueError:
            complete = False
            orb = {rep}
        members = [w for w in leftovers if w in orb]
        for w in members:
            assigned[w] = "unknown"
        orbit_entries.append((
            {"label": "unknown", "representative": rep.to_text(),
             "sizeWithinRadius": len(members)}, rep))
        leftovers = [w for w in leftovers if w not in orb]
    if stab_reports:
        for entry, rep in orbit_entries:
            label = entry["label"]
            if label == "group-point":
                rpt = stab_exact(rep)
            elif label in ("n-point", "tube(1)"):
                rpt = stab_exact(rep)
            else:
                rpt = stab_words(rep, ("u", "u1", "h"), depth=3)
            entry["stabOrder"] = rpt.order
            entry["stabImageOrder"] = rpt.image_order
            entry["stabComplete"] = rpt.complete
    return OrbitTable(p=p, radius=radius, generators=tuple(str(g) for g in gens),
                      orbits=tuple(e for e, _ in orbit_entries), complete=complete)


# eighteen words whose images of [I] exhaust the group points in Link(I)
LINK_GROUP_WORDS = (
    "y", "y^2", "x.y", "x.y^2", "x^2.y", "x^2.y^2",
    "x^3.y", "x^3.y^2", "y.x.y", "y^-1.x^-1.y^-1", "x.y.x.y",
    "x.y^-1.x^-1.y^-1", "w", "w^-1", "y^-1.x^-1.y^-1.w",
    "x.y^-1.x^-1.y^-1.w", "y.x.y.w^-1", "x.y.x.y.w^-1",
)


def link_group_points_check(p: int = 3):
    """The 18 listed words applied to [I]: distinct, in Link(I), and exactly
    the group points of the link.

    Returns (vertices, distinct_in_link, matches_orbit).
    """
    I = identity_vertex(p)
    lk = {lv.vclass for lv in link(I)}
    verts = [apply(word_evaluate(_relator_word(text), p), I)
             for text in LINK_GROUP_WORDS]
    distinct_in_link = len(set(verts)) == len(verts) and all(v in lk for v in verts)
    orb = orbit_bfs(I, ("x", "y", "u"), 6)
    matches = set(verts) == {v for v in lk if v in orb}
    return verts, distinct_in_link, matches


# ---------------------------------------------------------------------------
# relations and the kernel witness

RELATION_FAMILIES = (
    ("x^4", "x^4", True),
    ("y^3", "y^3", True),
    ("u^6", "u^6", False),
    ("[x^2, yxy]", "x^-2.y^-1.x^-1.y^-1.x^2.y.x.y", True),
    ("[x, w]", "x^-1.w^-1.x.w", False),
    ("[yxy, w]", "y^-1.x^-1.y^-1.w^-1.y.x.y.w", False),
    ("[xyx, u^2]", "x^-1.y^-1.x^-1.u^-2.x.y.x.u^2", False),
    ("[x^2yx, u^3]", "x^-1.y^-1.x^-2.u^-3.x^2.y.x.u^3", False),
    ("(u^2x^2yx)^2 = (x^2yxu^2)^2",
     "u^2.x^2.y.x.u^2.x^2.y.x.u^-2.x^-1.y^-1.x^-2.u^-2.x^-1.y^-1.x^-2", False),
)


def _relator_word(text):
    w = named_word("w")
    out = []
    for part in text.split("."):
        name = part
        e = 1
        if "^" in part:
            name, es = part.split("^")
            e = int(es)
        if name == "w":
            seg = w if e > 0 else w.inverse()
            for _ in range(abs(e)):
                out.extend(seg)
        else:
            sign = 1 if e > 0 else -1
            out.extend([(name, sign)] * abs(e))
    return GroupWord(out)


def verify_relations(p: int = 3):
    """Evaluate the presentation relators mod p; braid-only ones also integrally."""
    if p != 3:
        raise ValueError("the relation list involves u, defined at p = 3 only")
    out = []
    for name, text, braid_only in RELATION_FAMILIES:
        word = _relator_word(text)
        m = word_evaluate(word, p)
        holds = is_homothety(m) is not None
        integral = None
        if braid_only:
            mi = word_evaluate_integral(word)
            integral = is_homothety(mi) is not None
        out.append(RelationReport(name=name, relator=word,
                                  holds_mod_p=holds, holds_integrally=integral))
    return out


def kernel_witness_check():
    """The displayed braid relator: homothety mod 3, non-homothety integrally."""
    word = named_word("kernel_word")
    m3 = word_evaluate(word, 3)
    mi = word_evaluate_integral(word)
    return RelationReport(
        name="kernel witness (%d letters)" % len(word), relator=word,
        holds_mod_p=is_homothety(m3) is not None,
        holds_integrally=is_homothety(mi) is not None)


# ---------------------------------------------------------------------------
# the tube

def _tube_next(level: VertexClass, p: int, exclude):
    """The distinguished pair in the link one step farther from the identity.

    Fixed points of the stabilizer image that are neither group points,
    n-points, nor members of exclude; the pair is returned in canonical
    order and must be swapped by xyx.
    """
    rpt = stab_words(level, ("u", "u1", "h"), depth=3)
    lk = link(level)
    n = len(lk)
    fixed_idx = set(range(n))
    for pm in [induced_link_permutation(g, level).perm for g in rpt.elements]:
        fixed_idx = {i for i in fixed_idx if pm[i] == i}
    group_orb = orbit_bfs(identity_vertex(p), ("x", "y", "u"), 6)
    n_orb = orbit_bfs(n_point_base(p), ("x", "y", "u"), 6)
    cands = [lk[i].vclass for i in sorted(fixed_idx)]
    cands = [w for w in cands
             if w not in group_orb and w not in n_orb and w not in exclude]
    xyx = word_evaluate(parse_word("x.y.x"), p)
    for a in sorted(cands, key=lambda w: w.sort_key()):
        img = apply(xyx, a)
        if img != a and img in cands:
            return a, img
    raise AssertionError("tube step found no xyx-swapped distinguished pair")


class TubeLevel(NamedTuple):
    k: int
    vertex: VertexClass
    image_order: int
    stab_order_found: int
    claimed_total_order: int

    def to_json_dict(self):
        return {
            "claimedTotalOrder": self.claimed_total_order,
            "imageOrder": self.image_order,
            "k": self.k,
            "stabOrderFound": self.stab_order_found,
            "vertex": self.vertex.to_text(),
        }


def tube_pattern_check(kmax: int = 2, depth: int = 3, p: int = 3):
    """Walk 7^(1) -> ... -> 7^(kmax), word-searching each stabilizer image.

    Level 1 uses exact enumeration; levels >= 2 use word search over
    u, h, alpha_1, ..., alpha_k.  The claimed total order 2*3^(2k+1) is
    recorded for comparison, not asserted.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    seven, eleven = seven_star_pair(p)
    out = []
    rpt = stab_exact(seven)
    out.append(TubeLevel(1, seven, rpt.image_order, rpt.order, 2 * 3 ** 3))
    level = seven
    prev = {seven, eleven}
    for k in range(2, kmax + 1):
        nxt, other = _tube_next(level, p, prev)
        gens = ["u", "h"] + ["alpha%d" % i for i in range(1, k + 1)]
        rptk = stab_words(nxt, gens, depth)
        out.append(TubeLevel(k, nxt, rptk.image_order, rptk.order,
                             2 * 3 ** (2 * k + 1)))
        level = nxt
        prev = {nxt, other}
    return out
