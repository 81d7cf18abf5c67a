import random

from braidrack.hilbert import (
    expand_product,
    factor_series,
    factorizations,
    format_factorization,
    poly_mul,
    product_exponents,
)


def naive_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_poly_mul_against_naive():
    rng = random.Random(0)
    for _ in range(50):
        a = [rng.randint(0, 5) for _ in range(rng.randint(1, 6))]
        b = [rng.randint(0, 5) for _ in range(rng.randint(1, 6))]
        assert poly_mul(a, b) == naive_mul(a, b)


def test_factor_series():
    assert factor_series(3, 1, 5) == [1, 1, 1, 0, 0, 0]
    assert factor_series(2, 2, 5) == [1, 0, 1, 0, 0, 0]
    assert factor_series(None, 2, 6) == [1, 0, 1, 0, 1, 0, 1]


def test_known_products():
    # (2)^2 (3): 12-dimensional case
    assert expand_product([(2, 1), (2, 1), (3, 1)], 4) == [1, 3, 4, 3, 1]
    # (3)(4)(6)(6)_{t^2}: 432 with top degree 20
    s = expand_product([(3, 1), (4, 1), (6, 1), (6, 2)], 22)
    assert sum(s) == 432 and s[20] == 1 and s[21] == 0
    # (6)^4 (2)_{t^2}^2: 5184 with top degree 24
    s = expand_product([(6, 1)] * 4 + [(2, 2)] * 2, 26)
    assert sum(s) == 5184 and s[24] == 1 and s[25] == 0


def test_product_exponents_roundtrip():
    rng = random.Random(1)
    for _ in range(30):
        factors = []
        for _ in range(rng.randint(1, 5)):
            factors.append((rng.randint(2, 6), rng.choice((1, 2))))
        trunc = 8
        series = expand_product(factors, trunc)
        exps = product_exponents(series, trunc)
        # rebuild prod (1 - t^k)^{c_k} and compare
        out = [1] + [0] * trunc
        for k, c in sorted(exps.items()):
            step = [1] + [0] * trunc
            step[k] = -1
            for _ in range(abs(c)):
                if c > 0:
                    out = poly_mul(out, step, trunc)
                else:
                    # divide by (1 - t^k): multiply by geometric series
                    geo = [1 if i % k == 0 else 0 for i in range(trunc + 1)]
                    out = poly_mul(out, geo, trunc)
        assert out == series


def test_factorizations_find_the_truth():
    series = expand_product([(2, 1), (2, 1), (3, 1)], 4)
    sols = factorizations(series, 4)
    assert [(2, 1), (2, 1), (3, 1)] in sols
    for sol in sols:
        assert expand_product(sol, 4) == series


def test_factorizations_reject_non_products():
    assert factorizations([1, 3, 2], 2) == []
    assert factorizations([1, 4, 3], 2) == []
    assert factorizations([1, 3, 4, 2], 3) == []
    assert factorizations([1, 2, 2, 4], 3) == []


def test_factorizations_accept_truncation_ambiguity():
    # 1 + 3t + 3t^2 is (2)_t^3 cut at degree 2
    assert [(2, 1)] * 3 in factorizations([1, 3, 3], 2)
    # all-ones tails are explained by infinite factors
    sols = factorizations([1, 2, 4], 2)
    assert sols and all(s.count((None, 2)) or s.count((None, 1)) for s in sols)


def test_factorizations_with_infinite_tail():
    # (inf)_t = 1/(1-t): series all ones
    series = [1, 1, 1, 1, 1]
    sols = factorizations(series, 4)
    assert [(None, 1)] in sols
    # (2)_t (inf)_{t^2}: 1, 1, 1, 1, ... could also be explained differently;
    # every found solution must reproduce the series
    for sol in sols:
        assert expand_product(sol, 4) == series


def test_format_factorization():
    s = format_factorization([(2, 1), (2, 1), (3, 2), (None, 1)])
    assert "(2)_{t}^2" in s and "(3)_{t^2}" in s and "inf" in s
