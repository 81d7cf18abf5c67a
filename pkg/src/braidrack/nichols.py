"""Quantum symmetrizers, graded dimensions, cubic kernels and conditions.

Elements of the degree-n tensor component are sparse dicts word -> scalar,
a word being an n-tuple of rack elements.  The symmetrizer follows the
recursion S_n = (id (x) S_{n-1}) o X_n with
X_n = sum_{k=0}^{n-1} c_{12} c_{23} ... c_{k,k+1}; the skew-derivations
d_x extract the first tensor leg of X_n, so u lies in ker S_n exactly when
every d_x(u) lies in ker S_{n-1}.  That biconditional is what the fast
graded-dimension engine is built on, and it is re-verified at runtime on
small degrees by the structural tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import hilbert
from .hurwitz import orbits as hurwitz_orbits
from .linalg import SparseMatrix, rank
from .percolate import minimal_plague_cached

DIRECT_WORD_CAP = 3 * 10**5
DIRECT_BLOCK_CAP = 420


class DegreeCap(Exception):
    pass


class NotHomogeneous(Exception):
    pass


# ---------------------------------------------------------------------------
# word-level operators

def vec_add_into(f, acc, word, coeff):
    cur = acc.get(word)
    if cur is None:
        acc[word] = coeff
    else:
        s = f.add(cur, coeff)
        if f.is_zero(s):
            del acc[word]
        else:
            acc[word] = s


def braid_map(b, i, vec):
    """c_{i,i+1} on a sparse vector of n-letter words (1 <= i <= n-1)."""
    f = b.field
    q = b.cocycle.q
    t = b.rack.table
    out = {}
    for w, c in vec.items():
        x, y = w[i - 1], w[i]
        nw = w[: i - 1] + (t[x][y], x) + w[i + 1 :]
        vec_add_into(f, out, nw, f.mul(c, q[x][y]))
    return out


def braid_map_inv(b, i, vec):
    f = b.field
    q = b.cocycle.q
    out = {}
    for w, c in vec.items():
        a, bb = w[i - 1], w[i]
        y = b.rack.phi_inv(bb)[a]
        nw = w[: i - 1] + (bb, y) + w[i + 1 :]
        vec_add_into(f, out, nw, f.div(c, q[bb][y]))
    return out


def _x_terms(b, word, off, k):
    """Terms of X_k applied to slots off..off+k-1 of a word."""
    f = b.field
    q = b.cocycle.q
    t = b.rack.table
    letters = word[off : off + k]
    yield word, f.one
    for tt in range(1, k):
        z = letters[tt]
        coeff = f.one
        for i in range(tt - 1, -1, -1):
            coeff = f.mul(coeff, q[letters[i]][z])
            z = t[letters[i]][z]
        nw = word[:off] + (z,) + letters[:tt] + letters[tt + 1 :] + word[off + k :]
        yield nw, coeff


def apply_x(b, vec, off, k):
    f = b.field
    out = {}
    for w, c in vec.items():
        for nw, coeff in _x_terms(b, w, off, k):
            vec_add_into(f, out, nw, f.mul(c, coeff))
    return out


def x3_apply(b, vec):
    """1 + c12 + c12 c23 on 3-letter words."""
    return apply_x(b, vec, 0, 3)


def symmetrizer_apply(b, n, vec):
    """S_n applied to a sparse vector of n-letter words."""
    for k in range(n, 1, -1):
        vec = apply_x(b, vec, n - k, k)
    return vec


def derive(b, x, vec):
    """The degree-lowering skew-derivation d_x on free words.

    d_x(y w) = delta_{x,y} w + q[y][phi_y^{-1}(x)] * y d_{phi_y^{-1}(x)}(w);
    equivalently d_x picks the v_x-leg coefficient of X_n.
    """
    f = b.field
    q = b.cocycle.q
    t = b.rack.table
    out = {}
    for w, c in vec.items():
        n = len(w)
        for tt in range(n):
            # term removing position tt: z = w_1 |> (w_2 |> ... (w_tt |> w_{tt+1}))
            z = w[tt]
            coeff = c
            for i in range(tt - 1, -1, -1):
                coeff = f.mul(coeff, q[w[i]][z])
                z = t[w[i]][z]
            if z == x:
                rest = w[:tt] + w[tt + 1 :]
                vec_add_into(f, out, rest, coeff)
    return out


def derive_chain(b, letters, vec):
    """Compose derivations: letters are applied right to left as written."""
    for x in reversed(letters):
        vec = derive(b, x, vec)
    return vec


# ---------------------------------------------------------------------------
# grading by monomial matrices (used to block eliminations)

def grading_matrices(b):
    """M_x = action of x on the space: they satisfy M_x M_y = M_{x|>y} M_x."""
    d = b.dim
    q = b.cocycle.q
    t = b.rack.table
    return [
        (tuple(t[x][y] for y in range(d)), tuple(q[x][y] for y in range(d)))
        for x in range(d)
    ]


def grade_mul(m1, m2):
    """Product of monomial matrices ((perm, scalars) acting v_y -> s[y] v_{p[y]})."""
    p1, s1 = m1
    p2, s2 = m2
    return tuple(p1[p2[y]] for y in range(len(p2))), tuple(s2[y] for y in range(len(p2)))


class _Grading:
    """Word grades in the monoid the grading matrices generate."""

    def __init__(self, b):
        self.f = b.field
        self.mats = grading_matrices(b)
        d = b.dim
        self.unit = (tuple(range(d)), (self.f.one,) * d)

    def mul(self, m, x):
        """grade(m) * M_x (append letter x on the right)."""
        p1, s1 = m
        p2, s2 = self.mats[x]
        f = self.f
        return (
            tuple(p1[p2[y]] for y in range(len(p2))),
            tuple(f.mul(s1[p2[y]], s2[y]) for y in range(len(p2))),
        )

    def lmul(self, x, m):
        """M_x * grade(m) (prepend letter x on the left)."""
        p1, s1 = self.mats[x]
        p2, s2 = m
        f = self.f
        return (
            tuple(p1[p2[y]] for y in range(len(p2))),
            tuple(f.mul(s1[p2[y]], s2[y]) for y in range(len(p2))),
        )

    def of_word(self, word):
        m = self.unit
        for x in word:
            m = self.mul(m, x)
        return m


# ---------------------------------------------------------------------------
# direct engine: rank of S_n blockwise over the Hurwitz orbits of X^n

def graded_dim_direct(b, n, word_cap=DIRECT_WORD_CAP, block_cap=None):
    """dim of the degree-n component as rank S_n, summed over orbit blocks."""
    if n == 0:
        return 1
    if b.dim**n > word_cap:
        raise DegreeCap("d^n = %d exceeds the word cap" % b.dim**n)
    f = b.field
    total = 0
    for o in hurwitz_orbits(b.rack, n, cap=word_cap):
        if block_cap is not None and o.size > block_cap:
            raise DegreeCap("orbit block of size %d exceeds the cap" % o.size)
        index = o.index
        m = SparseMatrix(o.size, o.size)
        for j, w in enumerate(o.tuples):
            img = symmetrizer_apply(b, n, {w: f.one})
            for nw, c in img.items():
                # index[nw] raises if S_n ever left the orbit block, so the
                # block-diagonality of the symmetrizer is asserted for free
                m.rows[index[nw]][j] = c
        total += rank(f, m)
    return total


# ---------------------------------------------------------------------------
# differential engine: basis and normal forms degree by degree

class NicholsEngine:
    """Graded data of the braided space's quotient by the symmetrizer kernels.

    Degree n is represented by a list of basis words (each of the form
    letter + lower-degree basis word) together with:

    * nfmul[n][(y, j)]: the class of y * basis[n-1][j] expanded in basis[n];
    * dmat[n][x][i]: d_x of basis[n][i] expanded in basis[n-1].

    Everything is exact over the cocycle's field; eliminations are blocked
    by the monomial-matrix grade of the words, which the kernels respect.
    """

    def __init__(self, b):
        self.b = b
        self.f = b.field
        self.grading = _Grading(b)
        d = b.dim
        f = self.f
        self.basis = {0: [()], 1: [(x,) for x in range(d)]}
        self.grades = {
            0: [self.grading.unit],
            1: [self.grading.of_word((x,)) for x in range(d)],
        }
        self.nfmul = {1: {(x, 0): {x: f.one} for x in range(d)}}
        self.dmat = {1: [[{0: f.one} if w[0] == x else {} for w in self.basis[1]] for x in range(d)]}

    def dims(self, up_to):
        self.extend(up_to)
        return [len(self.basis[n]) for n in range(up_to + 1)]

    def dim(self, n):
        self.extend(n)
        return len(self.basis[n])

    def extend(self, up_to):
        n = max(self.basis) + 1
        while n <= up_to:
            self._build_degree(n)
            n += 1

    def _build_degree(self, n):
        f = self.f
        d = self.b.dim
        q = self.b.cocycle.q
        phi = [self.b.rack.phi(x) for x in range(d)]
        prev_basis = self.basis[n - 1]
        prev_grades = self.grades[n - 1]
        prev_d = self.dmat[n - 1]

        # tuple coordinates: (x, i) -> flat index x * len(prev_basis) + i
        nb = len(prev_basis)

        # candidates (y, j) ~ word y + basis[n-1][j], grouped by word grade
        fadd, fmul, fzero = f.add, f.mul, f.is_zero
        nfm = self.nfmul[n - 1]
        by_grade = {}
        cand_vectors = {}
        cand_grades = {}
        for j, w in enumerate(prev_basis):
            for y in range(d):
                cand = (y, j)
                vec = {y * nb + j: f.one}  # delta term of d_y
                for xp in range(d):
                    dv = prev_d[xp][j]
                    if not dv:
                        continue
                    xnb = phi[y][xp] * nb
                    qc = q[y][xp]
                    for i2, c2 in dv.items():
                        # y * basis[n-2][i2] expanded in basis[n-1]
                        qc2 = fmul(qc, c2)
                        for i1, c1 in nfm[(y, i2)].items():
                            key = xnb + i1
                            cur = vec.get(key)
                            add = fmul(qc2, c1)
                            if cur is None:
                                vec[key] = add
                            else:
                                s = fadd(cur, add)
                                if fzero(s):
                                    del vec[key]
                                else:
                                    vec[key] = s
                cand_vectors[cand] = vec
                g = self.grading.lmul(y, prev_grades[j])
                cand_grades[cand] = g
                by_grade.setdefault(g, []).append(cand)

        basis_words = []
        basis_grades = []
        nf = {}
        dmat_cols = []
        # process grade blocks in deterministic order of first candidate
        order = sorted(by_grade.values(), key=lambda cands: cands[0])
        for cands in order:
            self._reduce_block(
                cands, cand_vectors, cand_grades, basis_words, basis_grades, nf, dmat_cols, n
            )

        self.basis[n] = basis_words
        self.grades[n] = basis_grades
        self.nfmul[n] = nf
        # dmat[n][x][i]: from stored candidate vectors of the chosen words
        dm = [[dict() for _ in basis_words] for _ in range(d)]
        for i, vec in enumerate(dmat_cols):
            for key, c in vec.items():
                x, i1 = divmod(key, nb)
                dm[x][i][i1] = c
        self.dmat[n] = dm

    def _reduce_block(
        self, cands, cand_vectors, cand_grades, basis_words, basis_grades, nf, dmat_cols, n
    ):
        f = self.f
        fadd, fmul, fneg, fzero = f.add, f.mul, f.neg, f.is_zero
        echelon = []      # list of (pivot_key, row, expr) with row[pivot] = 1
        pivot_keys = {}
        prev_basis = self.basis[n - 1]
        for cand in cands:
            y, j = cand
            vec = dict(cand_vectors[cand])
            expr = {}
            while True:
                hit = None
                for key in vec:
                    idx = pivot_keys.get(key)
                    if idx is not None:
                        hit = (key, idx)
                        break
                if hit is None:
                    break
                key, idx = hit
                coef = vec[key]
                _, row, rexpr = echelon[idx]
                ncoef = fneg(coef)
                for k2, v2 in row.items():
                    cur = vec.get(k2)
                    add = fmul(ncoef, v2)
                    if cur is None:
                        vec[k2] = add
                    else:
                        s = fadd(cur, add)
                        if fzero(s):
                            del vec[k2]
                        else:
                            vec[k2] = s
                for bi, v2 in rexpr.items():
                    cur = expr.get(bi)
                    add = fmul(ncoef, v2)
                    if cur is None:
                        expr[bi] = add
                    else:
                        s = fadd(cur, add)
                        if fzero(s):
                            del expr[bi]
                        else:
                            expr[bi] = s
            if vec:
                # independent: new basis word
                bi = len(basis_words)
                word = (y,) + prev_basis[j]
                basis_words.append(word)
                basis_grades.append(cand_grades[cand])
                dmat_cols.append(cand_vectors[cand])
                nf[cand] = {bi: f.one}
                piv = min(vec)
                inv = f.inv(vec[piv])
                row = {k: f.mul(v, inv) for k, v in vec.items()}
                rexpr = {k: f.mul(v, inv) for k, v in expr.items()}
                rexpr[bi] = inv
                pivot_keys[piv] = len(echelon)
                echelon.append((piv, row, rexpr))
            else:
                # dependent: its class is -(expr) combination of chosen words
                nf[cand] = {bi: f.neg(c) for bi, c in expr.items()}

    # -- normal forms and chains --

    def nf_vector(self, vec, n):
        """Class of a free degree-n vector in basis[n] coordinates."""
        self.extend(n)
        f = self.f
        out = {}
        for w, c in vec.items():
            if len(w) != n:
                raise NotHomogeneous("vector mixes degrees")
            for bi, c2 in self._nf_word(w).items():
                cur = out.get(bi)
                s = f.mul(c, c2)
                if cur is not None:
                    s = f.add(cur, s)
                if f.is_zero(s):
                    out.pop(bi, None)
                else:
                    out[bi] = s
        return out

    def _nf_word(self, w):
        f = self.f
        if not w:
            return {0: f.one}
        tail = self._nf_word(w[1:])
        y = w[0]
        n = len(w)
        out = {}
        nf = self.nfmul[n]
        for j, c in tail.items():
            for bi, c2 in nf[(y, j)].items():
                cur = out.get(bi)
                s = f.mul(c, c2)
                if cur is not None:
                    s = f.add(cur, s)
                if f.is_zero(s):
                    out.pop(bi, None)
                else:
                    out[bi] = s
        return out

    def derive_in_basis(self, x, coords, n):
        """d_x on basis[n] coordinates, landing in basis[n-1] coordinates."""
        f = self.f
        dm = self.dmat[n][x]
        out = {}
        for i, c in coords.items():
            for i1, c2 in dm[i].items():
                cur = out.get(i1)
                s = f.mul(c, c2)
                if cur is not None:
                    s = f.add(cur, s)
                if f.is_zero(s):
                    out.pop(i1, None)
                else:
                    out[i1] = s
        return out

    def derive_chain_value(self, letters, word):
        """Apply the chain (rightmost first) to a top word; scalar result.

        The word's class is taken in the quotient, the derivations are the
        induced maps, and the value is the coefficient of the empty word.
        """
        n = len(word)
        if len(letters) != n:
            raise ValueError("chain length must equal the word degree")
        coords = self.nf_vector({tuple(word): self.f.one}, n)
        deg = n
        for x in reversed(letters):
            coords = self.derive_in_basis(x, coords, deg)
            deg -= 1
            if not coords:
                return self.f.zero
        return coords.get(0, self.f.zero)


def graded_dims(b, up_to, engine=None):
    """Graded dimensions 0..up_to via the differential engine."""
    eng = engine or NicholsEngine(b)
    return eng.dims(up_to)


def graded_dim(b, n, method="auto", word_cap=DIRECT_WORD_CAP):
    """dim of the degree-n component (= rank S_n).

    method "direct" computes blockwise symmetrizer ranks over the Hurwitz
    orbit decomposition; "differential" uses the derivation engine; "auto"
    picks direct only when the word count and block sizes stay small.
    """
    if method == "direct":
        return graded_dim_direct(b, n, word_cap=word_cap)
    if method == "differential":
        return NicholsEngine(b).dim(n)
    if b.dim**n <= 4096:
        try:
            return graded_dim_direct(b, n, word_cap=word_cap, block_cap=DIRECT_BLOCK_CAP)
        except DegreeCap:
            pass
    return NicholsEngine(b).dim(n)


# ---------------------------------------------------------------------------
# cubic kernel per orbit block

@dataclass
class OrbitKernel:
    seed: tuple
    size: int
    kernel_dim: int
    immunity_bound: Fraction   # imm * size * e^3
    optimal: bool


@dataclass
class CubicKernelReport:
    total: int
    blocks: list
    dim_v: int

    @property
    def per_orbit(self):
        return {blk.seed: blk.kernel_dim for blk in self.blocks}

    def many_cubic_threshold(self):
        return Fraction(self.dim_v * (self.dim_v**2 - 1), 3)

    def has_many_cubic_relations(self):
        return Fraction(self.total) >= self.many_cubic_threshold()


def cubic_kernel(b, bound_orbit_cap=24):
    """dim ker(1 + c12 + c12 c23) summed over Hurwitz 3-orbit blocks.

    Each block is checked against the immunity bound (kernel <= imm * size);
    the bound is only evaluated for orbit sizes <= ``bound_orbit_cap`` where
    the exact minimal plague search is cheap.
    """
    f = b.field
    blocks = []
    total = 0
    for o in hurwitz_orbits(b.rack, 3):
        index = o.index
        m = SparseMatrix(o.size, o.size)
        for j, w in enumerate(o.tuples):
            for nw, c in _x_terms(b, w, 0, 3):
                cur = m.rows[index[nw]].get(j)
                v = c if cur is None else f.add(cur, c)
                if f.is_zero(v):
                    m.rows[index[nw]].pop(j, None)
                else:
                    m.rows[index[nw]][j] = v
        dim = o.size - rank(f, m)
        if o.size <= bound_orbit_cap:
            imm = minimal_plague_cached(o).immunity
            bound = imm * o.size
            if dim > bound:
                raise AssertionError(
                    "kernel dim %d exceeds immunity bound %s on a size-%d orbit"
                    % (dim, bound, o.size)
                )
            optimal = Fraction(dim) == bound
        else:
            bound = Fraction(o.size)
            optimal = False
        blocks.append(OrbitKernel(o.tuples[0], o.size, dim, bound, optimal))
        total += dim
    return CubicKernelReport(total=total, blocks=blocks, dim_v=b.dim)


# ---------------------------------------------------------------------------
# the three conditions

@dataclass
class ConditionsReport:
    dims: list
    cond1_truncated: bool
    factorizations: list
    cond2: bool
    cond3: bool
    cubic_total: int
    threshold: Fraction

    def all_true(self):
        return self.cond1_truncated and self.cond2 and self.cond3


def check_conditions(b, hilbert_degree=4, engine=None):
    """Evaluate the three equivalent finiteness conditions.

    cond3: dim ker(1 + c12 + c12 c23) >= dim V ((dim V)^2 - 1) / 3;
    cond2: dim B_3 <= dim V (dim B_2 - ((dim V)^2 - 1) / 3);
    cond1: the dims up to ``hilbert_degree`` extend to a product of factors
    (n)_t, (n)_{t^2} (a truncated check, not a certificate).
    """
    if hilbert_degree < 3:
        raise ValueError("hilbert_degree must be >= 3")
    dims = graded_dims(b, hilbert_degree, engine=engine)
    ck = cubic_kernel(b)
    dv = b.dim
    threshold = Fraction(dv * (dv * dv - 1), 3)
    cond3 = Fraction(ck.total) >= threshold
    cond2 = Fraction(dims[3]) <= dv * (Fraction(dims[2]) - Fraction(dv * dv - 1, 3))
    facts = hilbert.factorizations(dims, hilbert_degree)
    return ConditionsReport(
        dims=dims,
        cond1_truncated=bool(facts),
        factorizations=facts,
        cond2=cond2,
        cond3=cond3,
        cubic_total=ck.total,
        threshold=threshold,
    )


# ---------------------------------------------------------------------------
# closed forms and the general inequality

def closed_form_kernel_1orbit(e, q, field):
    """Kernel dimension of 1 + c12 + c12 c23 on a rank-e one-point block."""
    f = field
    char = f.characteristic
    one = f.one
    q2 = f.mul(q, q)
    if char == 3 and q == one:
        return e * (e * e + 2) // 3
    if q == f.neg(one) or (char != 3 and q == one):
        return e * (e * e - 1) // 3
    if char != 3 and f.is_zero(f.add(f.add(one, q), q2)):
        return e * (e + 1) * (e + 2) // 6
    if char not in (2, 3) and f.is_zero(f.add(f.sub(one, q), q2)):
        return e * (e - 1) * (e - 2) // 6
    return 0


def closed_form_kernel_8orbit_bound(e, q, field):
    """Upper bound for the kernel on an 8-orbit block with fiber dimension e."""
    if q == field.neg(field.one):
        return e * e * (5 * e + 1) // 2
    return e * e * (5 * e - 1) // 2


def one_orbit_operator_matrix(field, e, q):
    """1 + c12 + c12 c23 on (V_x)^{(x)3} with dim V_x = e, x acting by q."""
    idx = {}
    words = []
    for i in range(e):
        for j in range(e):
            for k in range(e):
                idx[(i, j, k)] = len(words)
                words.append((i, j, k))
    q2 = field.mul(q, q)
    m = SparseMatrix(len(words), len(words))
    for col, (i, j, k) in enumerate(words):
        for w, c in (((i, j, k), field.one), ((j, i, k), q), ((k, i, j), q2)):
            row = idx[w]
            cur = m.rows[row].get(col)
            v = c if cur is None else field.add(cur, c)
            if field.is_zero(v):
                m.rows[row].pop(col, None)
            else:
                m.rows[row][col] = v
    return m


def general_inequality_lhs(d, e, k3, m, d1, d8):
    """LHS of the census-derived necessary inequality for many cubic relations.

    Derived by summing the per-orbit immunity bounds with the orbit counts
    written in terms of (d, k2 = d - k3 - 1, k3, m, t); both t and d cancel:

        24 d1 + 12 k3 d8 - e^3 k3^2 - 30 e^3 k3 + e^3 m - 8 e^3 + 8 e >= 0.

    At e = 1 this is 24 d1 + 12 k3 d8 - k3^2 - 30 k3 + m >= 0.
    """
    e3 = e**3
    return Fraction(24) * d1 + 12 * k3 * Fraction(d8) - e3 * k3 * k3 - 30 * e3 * k3 + e3 * m - 8 * e3 + 8 * e


def general_inequality(d, e, k3, m, d1, d8):
    return general_inequality_lhs(d, e, k3, m, d1, d8) >= 0


def lemma_reduction_minus_one(e, k3, m):
    """With d1 = e(e^2-1)/3, d8 = e^2(5e+1)/2 the inequality reduces to
    e k3^2 - e m - 6 k3 <= 0; returns that LHS."""
    return e * k3 * k3 - e * m - 6 * k3


def lemma_reduction_generic(e, k3, m):
    """With d1 = e(e^2+2)/3, d8 = e^2(5e-1)/2 the inequality reduces to
    e^2 k3^2 - e^2 m + 6 e k3 - 24 <= 0; returns that LHS."""
    return e * e * k3 * k3 - e * e * m + 6 * e * k3 - 24


def max_k3(e, minus_one=True, scan_to=200):
    """Largest k3 for which some admissible m (0 <= m <= k3, 3 | m) passes."""
    best = 0
    for k3 in range(scan_to + 1):
        ms = [m for m in range(0, k3 + 1, 3)]
        if minus_one:
            ok = any(lemma_reduction_minus_one(e, k3, m) <= 0 for m in ms)
        else:
            ok = any(lemma_reduction_generic(e, k3, m) <= 0 for m in ms)
        if ok:
            best = k3
    return best


# ---------------------------------------------------------------------------
# structural identities (asserted by the test suite on every computed space)

def kernel_identity_terms(b):
    """(dim ker S3, dim V * dim ker(1+c), dim ker X3) for the identity
    dim ker S3 <= dim V dim ker(1+c) + dim ker X3."""
    f = b.field
    d = b.dim
    words2 = [(x, y) for x in range(d) for y in range(d)]
    idx2 = {w: i for i, w in enumerate(words2)}
    m2 = SparseMatrix(len(words2), len(words2))
    for col, w in enumerate(words2):
        img = apply_x(b, {w: f.one}, 0, 2)
        for nw, c in img.items():
            m2.rows[idx2[nw]][col] = c
    ker_1c = len(words2) - rank(f, m2)

    words3 = [(x, y, z) for x in range(d) for y in range(d) for z in range(d)]
    idx3 = {w: i for i, w in enumerate(words3)}
    mx = SparseMatrix(len(words3), len(words3))
    ms = SparseMatrix(len(words3), len(words3))
    for col, w in enumerate(words3):
        for nw, c in x3_apply(b, {w: f.one}).items():
            mx.rows[idx3[nw]][col] = c
        for nw, c in symmetrizer_apply(b, 3, {w: f.one}).items():
            if not f.is_zero(c):
                ms.rows[idx3[nw]][col] = c
    ker_x3 = len(words3) - rank(f, mx)
    ker_s3 = len(words3) - rank(f, ms)
    return ker_s3, d * ker_1c, ker_x3
