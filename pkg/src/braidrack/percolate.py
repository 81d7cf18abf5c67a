"""Quarantine closures, exact minimal plagues, and the immunity invariant.

The closure rule on a 3-orbit: for every tuple T the ordered triple
(T, sigma2 T, sigma1 sigma2 T) is an instance; whenever at least two of its
three positions hold members of Q, all three members are in Q.  Positions
count with multiplicity, so a degenerate instance (T, T, U) forces U from T
but not T from U.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .hurwitz import canonical_code, orbits, sigma


class EmptySeed(Exception):
    pass


class ImmunityMismatch(Exception):
    pass


def closure_instances(o):
    """The list of (i, j, k) index triples, one instance per orbit member."""
    inst = []
    for idx, t in enumerate(o.tuples):
        s2 = sigma(o.rack, 2, t)
        s12 = sigma(o.rack, 1, s2)
        inst.append((idx, o.index[s2], o.index[s12]))
    return inst


def _forcing_tables(o):
    """Per-element instance incidence for the worklist closure."""
    inst = closure_instances(o)
    touch = [[] for _ in range(o.size)]  # element -> [(instance idx, multiplicity)]
    for n, triple in enumerate(inst):
        mult = {}
        for v in triple:
            mult[v] = mult.get(v, 0) + 1
        for v, m in mult.items():
            touch[v].append((n, m))
    return inst, touch


def quarantine_closure(o, seed):
    """Least fixpoint of the two-of-three rule containing the seed set."""
    seed = set(seed)
    if not seed:
        raise EmptySeed("quarantine closure needs a nonempty seed")
    inst, touch = _forcing_tables(o)
    return _close(inst, touch, seed, o.size)


def _close(inst, touch, seed, size):
    in_q = [False] * size
    counts = [0] * len(inst)
    stack = []
    for v in seed:
        if not in_q[v]:
            in_q[v] = True
            stack.append(v)
    while stack:
        v = stack.pop()
        for n, mult in touch[v]:
            counts[n] += mult
            if counts[n] >= 2:
                for w in inst[n]:
                    if not in_q[w]:
                        in_q[w] = True
                        stack.append(w)
    return frozenset(i for i, b in enumerate(in_q) if b)


@dataclass
class PlagueResult:
    orbit_size: int
    min_size: int
    witness: tuple       # member indices, lexicographically least witness
    immunity: Fraction
    certified: bool      # exhaustive search below min_size found nothing

    def witness_tuples(self, o):
        return [o.tuples[i] for i in self.witness]


def is_plague(o, seed):
    return len(quarantine_closure(o, seed)) == o.size


def minimal_plague(o, max_size=None):
    """Exact minimum plague by iterative deepening over subsets.

    Exhausts all subsets of each size k before moving to k+1, so the
    returned minimum is certified and the witness is the lexicographically
    least plague of that size.
    """
    if o.arity != 3:
        raise ValueError("plagues are defined for 3-orbits")
    size = o.size
    inst, touch = _forcing_tables(o)
    limit = size if max_size is None else min(size, max_size)
    for k in range(1, limit + 1):
        for seed in combinations(range(size), k):
            closed = _close(inst, touch, seed, size)
            if len(closed) == size:
                return PlagueResult(
                    orbit_size=size,
                    min_size=k,
                    witness=seed,
                    immunity=Fraction(k, size),
                    certified=True,
                )
    raise AssertionError("the full orbit is always a plague")


_BY_CODE_CACHE = {}


def minimal_plague_cached(o):
    """Minimal plague size keyed by the orbit's canonical graph code.

    Isomorphic orbit graphs have identical closure instances up to
    relabelling, hence equal minimal plague sizes; the witness returned is
    the one computed for the first representative seen.
    """
    code = canonical_code(o)
    if code not in _BY_CODE_CACHE:
        _BY_CODE_CACHE[code] = minimal_plague(o)
    cached = _BY_CODE_CACHE[code]
    if cached.orbit_size != o.size:
        raise AssertionError("canonical code collision")
    return cached


def immunity_table(r, certify_each=False):
    """Map orbit size -> PlagueResult over all 3-orbits of a braided rack.

    One exact search per isomorphism class; orbits of equal size are checked
    to be isomorphic (they share a canonical code), so a same-size orbit
    with a different minimal plague size would surface as a second class and
    raises ImmunityMismatch.  ``certify_each`` forces an independent search
    on every orbit instead.
    """
    table = {}
    for o in orbits(r, 3):
        res = minimal_plague(o) if certify_each else minimal_plague_cached(o)
        prev = table.get(o.size)
        if prev is not None and prev.min_size != res.min_size:
            raise ImmunityMismatch(
                "orbits of size %d disagree: plagues of %d and %d"
                % (o.size, prev.min_size, res.min_size)
            )
        if prev is None:
            table[o.size] = res
    return table


EXPECTED_MIN_PLAGUE = {1: 1, 3: 1, 6: 2, 8: 3, 9: 3, 12: 4, 16: 5, 24: 7}
