"""Exact sparse linear algebra over the fields of :mod:`braidrack.fields`.

Matrices are row-sparse: a list of dicts column -> scalar, with no explicit
zeros.  Two elimination engines are provided:

* plain Gaussian elimination over the field (used for kernels and for all
  finite-field work);
* fraction-free Bareiss elimination over an integral model (used for ranks
  in characteristic 0, where clearing denominators keeps entries integral
  and avoids big-rational blowup).

Pivoting is Markowitz-style: among candidate pivots pick one minimising
(row fill - 1) * (column fill - 1).
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .fields import (
    PrimeField,
    QuadraticRationalField,
    QuotientRing,
    RationalField,
)


class SparseMatrix:
    """A rows x cols matrix, entries indexed (row, col), no stored zeros."""

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [dict() for _ in range(nrows)]
        if entries:
            for (i, j), v in entries.items():
                self.set(i, j, v)

    def set(self, i, j, v, field=None):
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError((i, j))
        if (field is not None and field.is_zero(v)) or (field is None and v == 0):
            self.rows[i].pop(j, None)
        else:
            self.rows[i][j] = v

    def get(self, i, j, zero=0):
        return self.rows[i].get(j, zero)

    @classmethod
    def from_dense(cls, field, rows):
        m = cls(len(rows), len(rows[0]) if rows else 0)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if not field.is_zero(v):
                    m.rows[i][j] = v
        return m

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def copy_rows(self):
        return [dict(r) for r in self.rows]


def row_reduce(field, rows, ncols):
    """In-place Gaussian elimination over ``field``.

    ``rows`` is a list of sparse row dicts (consumed).  Returns
    ``(pivots, reduced)`` where ``pivots`` is a list of (row_index, col)
    into ``reduced`` and every reduced row is normalised (pivot = 1) and
    fully back-substituted (reduced row echelon form).
    """
    reduced = []       # rows in echelon form, pivot -> 1
    pivot_of_col = {}  # col -> index into reduced
    for row in rows:
        row = _eliminate(field, row, reduced, pivot_of_col)
        if not row:
            continue
        # Markowitz flavour: pick the sparsest-column candidate available;
        # within one row just take the smallest column for determinism.
        piv = min(row)
        inv = field.inv(row[piv])
        row = {j: field.mul(v, inv) for j, v in row.items()}
        # back-substitute into existing rows
        for r in reduced:
            c = r.get(piv)
            if c is not None:
                _axpy(field, r, row, field.neg(c))
        pivot_of_col[piv] = len(reduced)
        reduced.append(row)
    pivots = sorted((c, i) for c, i in pivot_of_col.items())
    return [(i, c) for c, i in pivots], reduced


def _eliminate(field, row, reduced, pivot_of_col):
    row = dict(row)
    while True:
        hit = None
        for j in row:
            i = pivot_of_col.get(j)
            if i is not None:
                hit = (j, i)
                break
        if hit is None:
            return row
        j, i = hit
        _axpy(field, row, reduced[i], field.neg(row[j]))


def _axpy(field, target, source, factor):
    """target += factor * source, dropping zeros."""
    if field.is_zero(factor):
        return
    for j, v in source.items():
        cur = target.get(j)
        if cur is None:
            target[j] = field.mul(factor, v)
        else:
            s = field.add(cur, field.mul(factor, v))
            if field.is_zero(s):
                del target[j]
            else:
                target[j] = s


def rank(field, mat):
    """Exact rank.  Fraction-free (Bareiss) over characteristic 0."""
    if field.characteristic == 0:
        return _rank_bareiss(field, mat)
    pivots, _ = row_reduce(field, mat.copy_rows(), mat.ncols)
    return len(pivots)


def _to_integral(field, rows):
    """Clear denominators so entries live in Z or Z[t]/(m) with int coeffs."""
    if isinstance(field, RationalField):
        out = []
        for row in rows:
            if not row:
                continue
            den = lcm(*[Fraction(v).denominator for v in row.values()])
            out.append({j: int(Fraction(v) * den) for j, v in row.items()})
        return out, _IntegerDomain()
    if isinstance(field, QuadraticRationalField):
        out = []
        for row in rows:
            if not row:
                continue
            den = lcm(*[v[2] for v in row.values()])
            out.append(
                {
                    j: (a * (den // d), b * (den // d))
                    for j, (a, b, d) in row.items()
                }
            )
        return out, _IntegerQuotientDomain(field)
    if isinstance(field, QuotientRing) and isinstance(field.base, RationalField):
        out = []
        for row in rows:
            if not row:
                continue
            den = lcm(*[Fraction(c).denominator for v in row.values() for c in v] or [1])
            out.append(
                {j: tuple(int(Fraction(c) * den) for c in v) for j, v in row.items()}
            )
        return out, _IntegerQuotientDomain(field)
    raise ValueError("no integral model for %s" % field.spec_string())


class _IntegerDomain:
    zero = 0

    def mul(self, a, b):
        return a * b

    def sub(self, a, b):
        return a - b

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        assert r == 0, "Bareiss division not exact"
        return q

    def is_zero(self, a):
        return a == 0

    def size_hint(self, a):
        return abs(a)


class _IntegerQuotientDomain:
    """Z[t]/(m) with integer coefficient tuples, m the field's monic modulus."""

    def __init__(self, field):
        self.degree = field.degree
        # monic integer modulus (the field guarantees monic; coefficients of
        # the presets used here are integers already)
        self.modulus = tuple(int(Fraction(c)) for c in field.modulus)
        self.zero = (0,) * self.degree

    def mul(self, a, b):
        d = self.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(d):
                    prod[i - d + j] -= c * self.modulus[j]
        return tuple(prod[:d])

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def is_zero(self, a):
        return not any(a)

    def exact_div(self, a, b):
        # divide in Q[t]/(m), then check integrality
        d = self.degree
        # compute b^{-1} via resultant-free approach: solve a = q*b by
        # linear system over Q using the multiplication matrix of b
        cols = []
        for k in range(d):
            e = [0] * d
            e[k] = 1
            cols.append(self.mul(tuple(e), b))
        # solve M q = a where M[i][k] = cols[k][i]
        m = [[Fraction(cols[k][i]) for k in range(d)] + [Fraction(a[i])] for i in range(d)]
        q = _solve_dense_fraction(m, d)
        assert q is not None, "Bareiss division not exact (singular multiplier)"
        out = []
        for c in q:
            assert c.denominator == 1, "Bareiss division not exact"
            out.append(int(c))
        return tuple(out)

    def size_hint(self, a):
        return max(abs(c) for c in a)


def _solve_dense_fraction(aug, n):
    """Solve an n x n dense Fraction system given as augmented rows."""
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _rank_bareiss(field, mat):
    rows, dom = _to_integral(field, mat.copy_rows())
    rows = [r for r in rows if r]
    rank_ = 0
    prev = None  # previous pivot (denominator of the Bareiss step)
    while rows:
        # Markowitz: pick the entry minimising (row_nnz - 1) * (col_nnz - 1)
        col_count = {}
        for r in rows:
            for j in r:
                col_count[j] = col_count.get(j, 0) + 1
        best = None
        for ri, r in enumerate(rows):
            rw = len(r) - 1
            for j, v in r.items():
                score = rw * (col_count[j] - 1)
                key = (score, dom.size_hint(v), ri, j)
                if best is None or key < best[0]:
                    best = (key, ri, j)
        _, ri, pj = best
        prow = rows.pop(ri)
        pval = prow[pj]
        rank_ += 1
        nxt = []
        for r in rows:
            rv = r.get(pj)
            if rv is None:
                # entries still must be divided per Bareiss; division only
                # changes entries in rows that had the pivot column, others
                # get multiplied/divided trivially:
                if prev is not None:
                    r = {
                        j: dom.exact_div(dom.mul(v, pval), prev) for j, v in r.items()
                    }
                else:
                    r = {j: dom.mul(v, pval) for j, v in r.items()}
            else:
                new = {}
                for j in set(r) | set(prow):
                    if j == pj:
                        continue
                    a = dom.mul(r.get(j, dom.zero), pval)
                    b = dom.mul(prow.get(j, dom.zero), rv)
                    v = dom.sub(a, b)
                    if not dom.is_zero(v):
                        new[j] = v
                if prev is not None:
                    new = {j: dom.exact_div(v, prev) for j, v in new.items()}
                r = new
            if r:
                nxt.append(r)
        rows = nxt
        prev = pval
    return rank_


def kernel_basis(field, mat):
    """Basis of the right kernel: vectors v (dicts col -> scalar) with Mv = 0."""
    pivots, reduced = row_reduce(field, mat.copy_rows(), mat.ncols)
    pivot_cols = {c for _, c in pivots}
    row_for_col = {c: reduced[i] for i, c in pivots}
    basis = []
    for free in range(mat.ncols):
        if free in pivot_cols:
            continue
        vec = {free: field.one}
        for c, row in row_for_col.items():
            coef = row.get(free)
            if coef is not None:
                vec[c] = field.neg(coef)
        basis.append(vec)
    return basis


def kernel_dim(field, mat):
    return mat.ncols - rank(field, mat)


DEFAULT_PROBE_PRIMES = (7, 13)


def rank_with_probe(field, mat, probe_primes=DEFAULT_PROBE_PRIMES):
    """Exact rank plus modular probe metadata.

    Over characteristic 0 the rank is first probed modulo small primes where
    the quotient modulus splits or stays irreducible (a lower bound), then
    confirmed exactly; a probe exceeding the exact rank is impossible and a
    probe below it is recorded.  Returns (rank, metadata dict).
    """
    meta = {"probes": []}
    exact = rank(field, mat)
    if field.characteristic == 0:
        for p in probe_primes:
            pr = _probe_rank_mod_p(field, mat, p)
            if pr is None:
                continue
            meta["probes"].append({"prime": p, "rank": pr})
            if pr > exact:
                raise AssertionError(
                    "modular probe rank %d exceeds exact rank %d" % (pr, exact)
                )
    meta["rank"] = exact
    return exact, meta


def _probe_rank_mod_p(field, mat, p):
    fp = PrimeField(p)
    try:
        if isinstance(field, RationalField):
            def conv(v):
                v = Fraction(v)
                if v.denominator % p == 0:
                    raise ZeroDivisionError
                return fp.from_int(v.numerator) * pow(v.denominator, p - 2, p) % p

            target = fp
        elif isinstance(field, (QuadraticRationalField, QuotientRing)) and isinstance(
            getattr(field, "base", None), RationalField
        ):
            # probe only at primes where the modulus splits: send t to a root
            coeffs = []
            for c in field.modulus:
                c = Fraction(c)
                if c.denominator % p == 0:
                    return None
                coeffs.append(c.numerator * pow(c.denominator, p - 2, p) % p)
            root = None
            for r in range(p):
                acc = 0
                for c in reversed(coeffs):
                    acc = (acc * r + c) % p
                if acc == 0:
                    root = r
                    break
            if root is None:
                return None
            target = fp

            if isinstance(field, QuadraticRationalField):

                def conv(v, root=root):
                    a, b, den = v
                    if den % p == 0:
                        raise ZeroDivisionError
                    return (a + b * root) * pow(den, p - 2, p) % p

            else:

                def conv(v, root=root):
                    acc = 0
                    for k, c in enumerate(v):
                        c = Fraction(c)
                        if c.denominator % p == 0:
                            raise ZeroDivisionError
                        acc += c.numerator * pow(c.denominator, p - 2, p) * pow(root, k, p)
                    return acc % p

        else:
            return None
    except Exception:
        return None
    try:
        probe = SparseMatrix(mat.nrows, mat.ncols)
        for i, row in enumerate(mat.rows):
            for j, v in row.items():
                w = conv(v)
                if not target.is_zero(w):
                    probe.rows[i][j] = w
        pivots, _ = row_reduce(target, probe.copy_rows(), probe.ncols)
        return len(pivots)
    except (ZeroDivisionError, NotImplementedError):
        return None
