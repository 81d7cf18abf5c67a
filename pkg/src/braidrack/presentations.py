"""Finitely presented graded quotients, derivation chains, integrals.

A presentation is a braided space together with homogeneous relation
vectors (sparse dicts word -> scalar).  The quotient T(V)/(relations) is
built degree by degree: degree n is V (x) A_{n-1} modulo the image of all
relations placed at the left edge, which together with the recursion
covers the whole ideal component.
"""
from __future__ import annotations

from dataclasses import dataclass

from .braiding import BraidedSpace
from .nichols import (
    NicholsEngine,
    NotHomogeneous,
    _Grading,
    symmetrizer_apply,
)


@dataclass
class Presentation:
    space: BraidedSpace
    relations: list  # sparse dicts word -> scalar, each homogeneous

    def __post_init__(self):
        for r in self.relations:
            degs = {len(w) for w in r}
            if len(degs) != 1:
                raise NotHomogeneous("every relation must be homogeneous")

    def relation_degrees(self):
        return sorted({len(next(iter(r))) for r in self.relations})


def relation_in_kernel(p, engine=None, method="nf"):
    """For each relation r of degree n, whether S_n(r) = 0.

    method "nf": reduce r in the differential engine (its normal form is 0
    exactly when r is in the symmetrizer kernel).  method "direct": apply
    S_n literally and test for the zero vector.
    """
    results = []
    if method == "nf":
        eng = engine or NicholsEngine(p.space)
        for r in p.relations:
            n = len(next(iter(r)))
            results.append(not eng.nf_vector(r, n))
    elif method == "direct":
        f = p.space.field
        for r in p.relations:
            n = len(next(iter(r)))
            img = symmetrizer_apply(p.space, n, r)
            results.append(all(f.is_zero(c) for c in img.values()))
    else:
        raise ValueError("unknown method %r" % method)
    return results


class QuotientEngine:
    """Degree-by-degree basis of T(V)/(relations).

    Mirrors the differential engine's bookkeeping: per degree a list of
    basis words of the form letter + lower basis word, and nfmul[(y, j)]
    expanding y * basis[n-1][j].  The eliminated space in degree n is
    spanned by pi(r * b) over relations r of degree g and basis words b of
    degree n - g, which equals the full ideal component.
    """

    def __init__(self, presentation):
        self.p = presentation
        self.b = presentation.space
        self.f = self.b.field
        self.grading = _Grading(self.b)
        d = self.b.dim
        self.rels_by_degree = {}
        for r in presentation.relations:
            n = len(next(iter(r)))
            self.rels_by_degree.setdefault(n, []).append(r)
            self._check_relation_grade(r)
        self.basis = {0: [()]}
        self.grades = {0: [self.grading.unit]}
        self.nfmul = {}
        min_rel = min(self.rels_by_degree) if self.rels_by_degree else None
        if min_rel == 1:
            raise NotHomogeneous("degree-1 relations are not supported")
        self.basis[1] = [(x,) for x in range(d)]
        self.grades[1] = [self.grading.of_word((x,)) for x in range(d)]
        self.nfmul[1] = {(x, 0): {x: self.f.one} for x in range(d)}

    def _check_relation_grade(self, r):
        grades = {self.grading.of_word(w) for w in r}
        if len(grades) != 1:
            raise NotHomogeneous(
                "relation is not grade-homogeneous; split it by group degree"
            )

    def dims(self, up_to, stop_at_zero=True):
        out = [len(self.basis[0]), len(self.basis[1])]
        n = 2
        while n <= up_to:
            self.extend(n)
            out.append(len(self.basis[n]))
            if stop_at_zero and out[-1] == 0:
                # generated in degree one: all later components vanish too
                out += [0] * (up_to - n)
                break
            n += 1
        return out[: up_to + 1]

    def extend(self, up_to):
        n = max(self.basis) + 1
        while n <= up_to:
            self._build_degree(n)
            n += 1

    def _build_degree(self, n):
        f = self.f
        d = self.b.dim
        prev_basis = self.basis[n - 1]
        prev_grades = self.grades[n - 1]
        nb = len(prev_basis)
        if not prev_basis:
            self.basis[n] = []
            self.grades[n] = []
            self.nfmul[n] = {}
            return

        # ideal vectors pi(r * b) in candidate coordinates (y, j)
        by_grade = {}
        cand_grade = {}
        for j in range(nb):
            for y in range(d):
                g = self.grading.lmul(y, prev_grades[j])
                cand_grade[(y, j)] = g
                by_grade.setdefault(g, {"cands": [], "ideal": []})["cands"].append((y, j))

        for g_deg, rels in self.rels_by_degree.items():
            tail_deg = n - g_deg
            if tail_deg < 0:
                continue
            for r in rels:
                for bidx in range(len(self.basis[tail_deg])):
                    vec = self._place_relation(r, tail_deg, bidx, nb)
                    if not vec:
                        continue
                    some = next(iter(vec))
                    g = cand_grade[divmod(some, nb)]
                    by_grade[g]["ideal"].append(vec)

        basis_words = []
        basis_grades = []
        nf = {}
        for g in sorted(by_grade, key=lambda g: by_grade[g]["cands"][0]):
            blk = by_grade[g]
            self._reduce_block(blk["cands"], blk["ideal"], basis_words, basis_grades, nf, nb, n)
        self.basis[n] = basis_words
        self.grades[n] = basis_grades
        self.nfmul[n] = nf

    def _place_relation(self, r, tail_deg, bidx, nb):
        """pi(r * basis[tail_deg][bidx]) in candidate coordinates of degree n."""
        f = self.f
        out = {}
        for w, c in r.items():
            # tail = w[1:] * b expanded in basis[n-1]
            tail = {bidx: f.one}
            deg = tail_deg
            for letter in reversed(w[1:]):
                nxt = {}
                nfm = self.nfmul[deg + 1]
                for j, cj in tail.items():
                    for j2, c2 in nfm[(letter, j)].items():
                        cur = nxt.get(j2)
                        s = f.mul(cj, c2)
                        if cur is not None:
                            s = f.add(cur, s)
                        if f.is_zero(s):
                            nxt.pop(j2, None)
                        else:
                            nxt[j2] = s
                tail = nxt
                deg += 1
            y = w[0]
            for j, cj in tail.items():
                key = y * nb + j
                cur = out.get(key)
                s = f.mul(c, cj)
                if cur is not None:
                    s = f.add(cur, s)
                if f.is_zero(s):
                    out.pop(key, None)
                else:
                    out[key] = s
        return out

    def _reduce_block(self, cands, ideal_vecs, basis_words, basis_grades, nf, nb, n):
        f = self.f
        # RREF of the ideal vectors within this block
        from .linalg import row_reduce

        pivots, reduced = row_reduce(f, ideal_vecs, nb * self.b.dim)
        pivot_cols = {c for _, c in pivots}
        row_for_col = {c: reduced[i] for i, c in pivots}
        prev_basis = self.basis[n - 1]
        # non-pivot candidates become basis words
        local_index = {}
        for cand in cands:
            y, j = cand
            key = y * nb + j
            if key in pivot_cols:
                continue
            local_index[key] = len(basis_words)
            basis_words.append((y,) + prev_basis[j])
            basis_grades.append(self.grading.lmul(y, self.grades[n - 1][j]))
            nf[cand] = {local_index[key]: f.one}
        for cand in cands:
            y, j = cand
            key = y * nb + j
            if key not in pivot_cols:
                continue
            row = row_for_col[key]
            expr = {}
            for c2, v in row.items():
                if c2 == key:
                    continue
                expr[local_index[c2]] = f.neg(v)
            nf[cand] = expr


def quotient_dims(p, up_to, stop_at_zero=True):
    """Graded dims of T(V)/(relations), stopping at the first zero level."""
    return QuotientEngine(p).dims(up_to, stop_at_zero=stop_at_zero)


# ---------------------------------------------------------------------------
# relation tables for the two finite-dimensional quotients shipped as presets

def _words(s):
    """Parse 'aab' into a tuple of 0-based letters."""
    return tuple(ord(ch) - ord("a") for ch in s)


def _rel(field, terms):
    """terms: list of (word string, scalar string); 'q' is the generator."""
    out = {}
    for w, cs in terms:
        out[_words(w)] = field.parse(cs)
    return out


def d3_char2_relations(field):
    """Defining relations of the 432-dimensional quotient (char 2, q^2+q+1=0)."""
    rels = [
        _rel(field, [("ab", "1"), ("bc", "q^2"), ("ca", "q")]),
        _rel(field, [("ac", "1"), ("cb", "q^2"), ("ba", "q")]),
        _rel(field, [("aaa", "1")]),
        _rel(field, [("bbb", "1")]),
        _rel(field, [("ccc", "1")]),
        _rel(
            field,
            [
                ("aabbaabbaabb", "1"),
                ("baabbaabbaab", "1"),
                ("bbaabbaabbaa", "1"),
                ("abbaabbaabba", "1"),
            ],
        ),
    ]
    return rels


def t_new_relations(field):
    """Defining relations of the 5184-dimensional quotient (q^2+q+1=0)."""
    rels = [
        _rel(field, [("aaa", "1")]),
        _rel(field, [("bbb", "1")]),
        _rel(field, [("ccc", "1")]),
        _rel(field, [("ddd", "1")]),
        _rel(field, [("ab", "-q^2"), ("bc", "-q"), ("ca", "1")]),
        _rel(field, [("ac", "-q^2"), ("cd", "-q"), ("da", "1")]),
        _rel(field, [("ad", "q"), ("ba", "-q^2"), ("db", "1")]),
        _rel(field, [("bd", "q"), ("cb", "q^2"), ("dc", "1")]),
        _rel(
            field,
            [
                ("aabcbb", "1"),
                ("abcbba", "1"),
                ("bcbbaa", "1"),
                ("cbbaab", "1"),
                ("bbaabc", "1"),
                ("baabcb", "1"),
                ("bcbaac", "1"),
                ("cbabac", "1"),
                ("cbbaca", "1"),
            ],
        ),
    ]
    return rels


D3_CHAR2_INTEGRAL = "aabaabaabbaabbaabbcc"
D3_CHAR2_CHAIN = "bbaaccaaccbbcbcbcbcc"
T_NEW_INTEGRAL = "aabaabaabbaacbbaacbbaadd"
T_NEW_CHAIN = "ccdccdccddccbbddbaddaabb"


def integral_preset(name):
    """(braided space, relations, integral word, derivation chain letters)."""
    from .braiding import cocycle_preset

    if name == "d3char2":
        space = cocycle_preset("d3char2")
        rels = d3_char2_relations(space.field)
        return space, rels, _words(D3_CHAR2_INTEGRAL), _words(D3_CHAR2_CHAIN)
    if name == "t-new":
        space = cocycle_preset("t-new")
        rels = t_new_relations(space.field)
        return space, rels, _words(T_NEW_INTEGRAL), _words(T_NEW_CHAIN)
    raise KeyError("unknown integral preset %r" % name)
