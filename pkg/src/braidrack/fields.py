"""Exact coefficient arithmetic: rationals, prime fields, univariate quotient rings.

A field is described by a spec string:

    QQ                      rationals
    Fp(7)                   integers mod 7
    QQ[t]/(t^2+t+1)         quotient ring over the rationals
    Fp(2)[t]/(t^2+t+1)      quotient ring over a prime field

Scalars are plain hashable values: ``fractions.Fraction`` for QQ, ints in
[0, p) for Fp(p), and fixed-length tuples of base scalars (degree many
coefficients, lowest power first) for quotient rings.  All arithmetic goes
through the Field object so hot loops never allocate wrapper objects.
"""
from __future__ import annotations

import re
from fractions import Fraction


class FieldError(Exception):
    pass


class NotAField(FieldError):
    """A quotient-ring inversion hit a zero divisor."""

    def __init__(self, message, zero_divisor=None):
        super().__init__(message)
        self.zero_divisor = zero_divisor


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface; subclasses set ``zero``/``one`` and implement ops."""

    characteristic = 0
    is_exact_field = True

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def from_int(self, n):
        raise NotImplementedError

    def parse(self, s):
        raise NotImplementedError

    def to_str(self, a):
        raise NotImplementedError

    def elements(self):
        raise NotImplementedError("field is not finite")

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec_string() == other.spec_string()

    def __hash__(self):
        return hash(self.spec_string())

    def __repr__(self):
        return "Field(%r)" % self.spec_string()

    def spec_string(self):
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def parse(self, s):
        return Fraction(s.strip().replace("−", "-"))

    def to_str(self, a):
        return str(a)

    def spec_string(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError("Fp(%d): %d is not prime" % (p, p))
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in Fp(%d)" % self.p)
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def parse(self, s):
        s = s.strip().replace("−", "-")
        if "/" in s:
            num, den = s.split("/")
            return self.div(self.from_int(int(num)), self.from_int(int(den)))
        return self.from_int(int(s))

    def to_str(self, a):
        return str(a % self.p)

    def elements(self):
        return list(range(self.p))

    def spec_string(self):
        return "Fp(%d)" % self.p


def _poly_trim(cs):
    n = len(cs)
    while n > 0 and cs[n - 1] == 0:
        n -= 1
    return cs[:n]


def _poly_divmod(base, num, den):
    """Division with remainder of coefficient lists over the base field."""
    num = list(num)
    dd = len(den) - 1
    lead_inv = base.inv(den[dd])
    quot = [base.zero] * max(0, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if base.is_zero(c):
            continue
        f = base.mul(c, lead_inv)
        quot[i - dd] = f
        for j in range(dd + 1):
            num[i - dd + j] = base.sub(num[i - dd + j], base.mul(f, den[j]))
    return quot, _poly_trim(num)


class QuotientRing(Field):
    """base[t] / (modulus).  Used as a field when the modulus is irreducible.

    Irreducibility is verified for modulus degree <= 3 (no roots in the base);
    higher degrees are accepted with ``irreducible_assumed`` recorded, and any
    zero divisor met during inversion raises NotAField.
    """

    def __init__(self, base, modulus):
        if isinstance(base, QuotientRing):
            raise FieldError("nested quotient rings are not supported")
        modulus = tuple(modulus)
        if len(modulus) < 2:
            raise FieldError("modulus degree must be >= 1")
        if modulus[-1] != base.one:
            raise FieldError("modulus must be monic")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.characteristic = base.characteristic
        self.zero = (base.zero,) * self.degree
        one = [base.zero] * self.degree
        one[0] = base.one
        self.one = tuple(one)
        gen = [base.zero] * self.degree
        if self.degree >= 2:
            gen[1] = base.one
        else:
            # t reduces to a base element when the modulus is linear
            gen[0] = base.neg(modulus[0])
        self.gen = tuple(gen)
        self.irreducible_checked, self.irreducible_assumed = self._check_irreducible()

    def _check_irreducible(self):
        if self.degree == 1:
            return True, False
        if self.degree > 3:
            return False, True
        # degree 2 or 3: irreducible over the base iff it has no root there
        if isinstance(self.base, PrimeField):
            candidates = self.base.elements()
        else:
            candidates = self._rational_root_candidates()
        for c in candidates:
            acc = self.base.zero
            for coef in reversed(self.modulus):
                acc = self.base.add(self.base.mul(acc, c), coef)
            if self.base.is_zero(acc):
                raise FieldError(
                    "modulus %s is reducible (root %s)"
                    % (self._poly_str(self.modulus), self.base.to_str(c))
                )
        return True, False

    def _rational_root_candidates(self):
        # monic over QQ: clear denominators, then any rational root of the
        # integer polynomial a_n x^n + ... + a_0 is p/q with p | a_0, q | a_n
        from math import lcm

        den = lcm(*[Fraction(c).denominator for c in self.modulus])
        ints = [int(Fraction(c) * den) for c in self.modulus]
        a0, an = ints[0], ints[-1]
        if a0 == 0:
            return [Fraction(0)]
        cands = set()
        for p in _divisors(abs(a0)):
            for q in _divisors(abs(an)):
                cands.add(Fraction(p, q))
                cands.add(Fraction(-p, q))
        return sorted(cands)

    # -- arithmetic on fixed-length coefficient tuples --

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        base = self.base
        return tuple(base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        d = self.degree
        prod = [base.zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j, y in enumerate(b):
                if base.is_zero(y):
                    continue
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        # reduce modulo the monic modulus
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if base.is_zero(c):
                continue
            prod[i] = base.zero
            for j in range(self.degree):
                prod[i - self.degree + j] = base.sub(
                    prod[i - self.degree + j], base.mul(c, self.modulus[j])
                )
        return tuple(prod[:d])

    def inv(self, a):
        base = self.base
        if all(base.is_zero(c) for c in a):
            raise ZeroDivisionError("inverse of zero in %s" % self.spec_string())
        # extended Euclid on (a, modulus)
        r0, r1 = list(self.modulus), _poly_trim(list(a))
        s0, s1 = [], [base.one]
        while True:
            q, r = _poly_divmod(base, r0, r1)
            if not r:
                break
            s = list(s0)
            while len(s) < len(q) + len(s1):
                s.append(base.zero)
            for i, qc in enumerate(q):
                if base.is_zero(qc):
                    continue
                for j, sc in enumerate(s1):
                    s[i + j] = base.sub(s[i + j], base.mul(qc, sc))
            r0, r1, s0, s1 = r1, r, s1, _poly_trim(s)
        if len(r1) != 1:
            zd = tuple(list(r1) + [base.zero] * (self.degree - len(r1)))
            raise NotAField(
                "%s is not a field: %s is a zero divisor"
                % (self.spec_string(), self.to_str(zd)),
                zero_divisor=zd,
            )
        c = base.inv(r1[0])
        out = [base.mul(c, x) for x in s1]
        out += [base.zero] * (self.degree - len(out))
        return tuple(out[: self.degree])

    def from_int(self, n):
        out = [self.base.zero] * self.degree
        out[0] = self.base.from_int(n)
        return tuple(out)

    def from_base(self, c):
        out = [self.base.zero] * self.degree
        out[0] = c
        return tuple(out)

    def elements(self):
        if not isinstance(self.base, PrimeField):
            raise NotImplementedError("field is not finite")
        elems = [self.zero]
        for k in range(self.degree):
            new = []
            for e in elems:
                for c in self.base.elements():
                    if c == self.base.zero:
                        continue
                    v = list(e)
                    v[k] = c
                    new.append(tuple(v))
            elems = elems + new
        return elems

    # -- parsing / printing --

    _TERM = re.compile(r"^([+-]?[^+-]*(?:/[0-9]+)?)")

    def parse(self, s):
        s = s.strip().replace("−", "-").replace(" ", "")
        s = s.replace("q", "t")  # "q" aliases the generator in cocycle files
        if not s:
            raise ValueError("empty scalar")
        acc = self.zero
        i = 0
        while i < len(s):
            j = i + 1
            while j < len(s) and s[j] not in "+-":
                j += 1
            acc = self.add(acc, self._parse_term(s[i:j]))
            i = j
        return acc

    def _parse_term(self, term):
        sign = 1
        if term.startswith("+"):
            term = term[1:]
        elif term.startswith("-"):
            sign = -1
            term = term[1:]
        if "t" in term:
            coef_s, _, pow_s = term.partition("t")
            coef_s = coef_s.rstrip("*")
            coef = self.base.parse(coef_s) if coef_s else self.base.one
            if pow_s.startswith("^"):
                k = int(pow_s[1:])
            elif pow_s == "":
                k = 1
            else:
                raise ValueError("bad term %r" % term)
        else:
            coef = self.base.parse(term)
            k = 0
        if sign < 0:
            coef = self.base.neg(coef)
        return self.mul(self.from_base(coef), self.pow(self.gen, k))

    def to_str(self, a):
        base = self.base
        parts = []
        for k in range(self.degree - 1, -1, -1):
            c = a[k]
            if base.is_zero(c):
                continue
            cs = base.to_str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if k == 0:
                body = cs
            else:
                tpow = "t" if k == 1 else "t^%d" % k
                body = tpow if cs == "1" else "%s*%s" % (cs, tpow)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("-" if neg else "+") + body)
        return "".join(parts) if parts else "0"

    def _poly_str(self, coeffs):
        return "+".join(
            "%s*t^%d" % (self.base.to_str(c), k)
            for k, c in enumerate(coeffs)
            if not self.base.is_zero(c)
        )

    def spec_string(self):
        base = self.base
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.modulus[k]
            if base.is_zero(c):
                continue
            cs = base.to_str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if k == 0:
                body = cs
            else:
                tpow = "t" if k == 1 else "t^%d" % k
                body = tpow if cs == "1" else "%s*%s" % (cs, tpow)
            parts.append(("-" if neg and parts else ("-" if neg else "+" if parts else "")) + body)
        poly = "".join(parts)
        return "%s[t]/(%s)" % (base.spec_string(), poly)


def _divisors(n):
    out = []
    f = 1
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            if f != n // f:
                out.append(n // f)
        f += 1
    return sorted(out)


class QuadraticRationalField(Field):
    """QQ[t]/(t^2 + u t + v) with integer u, v and irreducible modulus.

    Drop-in replacement for the generic quotient ring in the common case;
    scalars are normalized integer triples (a, b, den) meaning
    (a + b t) / den with gcd(a, b, den) = 1 and den >= 1.  The compact
    representation keeps the eliminations in the graded engines fast.
    """

    characteristic = 0
    degree = 2

    def __init__(self, u, v):
        disc = u * u - 4 * v
        r = _isqrt_exact(abs(disc))
        if disc >= 0 and r is not None:
            raise FieldError(
                "modulus t^2%+d*t%+d is reducible over QQ" % (u, v)
            )
        self.u = u
        self.v = v
        self.modulus = (Fraction(v), Fraction(u), Fraction(1))
        self.zero = (0, 0, 1)
        self.one = (1, 0, 1)
        self.gen = (0, 1, 1)
        self.irreducible_checked = True
        self.irreducible_assumed = False
        self.base = RationalField()

    @staticmethod
    def _norm(a, b, den):
        from math import gcd

        if den < 0:
            a, b, den = -a, -b, -den
        g = gcd(gcd(a, b), den)
        if g > 1:
            return (a // g, b // g, den // g)
        return (a, b, den)

    def add(self, x, y):
        a1, b1, d1 = x
        a2, b2, d2 = y
        if d1 == d2:
            return self._norm(a1 + a2, b1 + b2, d1)
        return self._norm(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)

    def sub(self, x, y):
        a1, b1, d1 = x
        a2, b2, d2 = y
        if d1 == d2:
            return self._norm(a1 - a2, b1 - b2, d1)
        return self._norm(a1 * d2 - a2 * d1, b1 * d2 - b2 * d1, d1 * d2)

    def neg(self, x):
        return (-x[0], -x[1], x[2])

    def mul(self, x, y):
        a1, b1, d1 = x
        a2, b2, d2 = y
        bb = b1 * b2
        return self._norm(
            a1 * a2 - self.v * bb, a1 * b2 + a2 * b1 - self.u * bb, d1 * d2
        )

    def inv(self, x):
        a, b, den = x
        n = a * a - self.u * a * b + self.v * b * b
        if n == 0:
            raise ZeroDivisionError("inverse of zero in %s" % self.spec_string())
        return self._norm(den * (a - self.u * b), -den * b, n)

    def is_zero(self, x):
        return x[0] == 0 and x[1] == 0

    def from_int(self, n):
        return (n, 0, 1)

    def from_base(self, c):
        c = Fraction(c)
        return (c.numerator, 0, c.denominator)

    def pair(self, c0, c1):
        """Element c0 + c1 t from base-field coefficients."""
        c0, c1 = Fraction(c0), Fraction(c1)
        den = c0.denominator * c1.denominator // _gcd2(c0.denominator, c1.denominator)
        return self._norm(
            int(c0 * den), int(c1 * den), den
        )

    def coefficients(self, x):
        """(constant, t-coefficient) as Fractions."""
        a, b, den = x
        return Fraction(a, den), Fraction(b, den)

    def parse(self, s):
        return _parse_poly_scalar(self, s)

    def to_str(self, x):
        c0, c1 = self.coefficients(x)
        parts = []
        if c1:
            cs = str(c1)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            body = "t" if cs == "1" else "%s*t" % cs
            parts.append(("-" if neg else "") + body)
        if c0 or not parts:
            cs = str(c0)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            parts.append(("-" if neg else "+" if parts else "") + cs)
        return "".join(parts)

    def spec_string(self):
        terms = ["t^2"]
        if self.u:
            terms.append(_int_term(self.u, "t"))
        if self.v:
            terms.append(_int_term(self.v, ""))
        return "QQ[t]/(%s)" % "".join(terms)


def _int_term(c, sym):
    sign = "-" if c < 0 else "+"
    c = abs(c)
    if sym and c == 1:
        return sign + sym
    if sym:
        return "%s%d*%s" % (sign, c, sym)
    return "%s%d" % (sign, c)


def _gcd2(a, b):
    from math import gcd

    return gcd(a, b)


def _isqrt_exact(n):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def _parse_poly_scalar(field, s):
    """Parse 'c*t^k' sums for any field exposing base/gen/from_base/pow."""
    s = s.strip().replace("−", "-").replace(" ", "")
    s = s.replace("q", "t")
    if not s:
        raise ValueError("empty scalar")
    acc = field.zero
    i = 0
    while i < len(s):
        j = i + 1
        while j < len(s) and s[j] not in "+-":
            j += 1
        acc = field.add(acc, _poly_scalar_term(field, s[i:j]))
        i = j
    return acc


def _poly_scalar_term(field, term):
    sign = 1
    if term.startswith("+"):
        term = term[1:]
    elif term.startswith("-"):
        sign = -1
        term = term[1:]
    if "t" in term:
        coef_s, _, pow_s = term.partition("t")
        coef_s = coef_s.rstrip("*")
        coef = field.base.parse(coef_s) if coef_s else field.base.one
        if pow_s.startswith("^"):
            k = int(pow_s[1:])
        elif pow_s == "":
            k = 1
        else:
            raise ValueError("bad term %r" % term)
    else:
        coef = field.base.parse(term)
        k = 0
    if sign < 0:
        coef = field.base.neg(coef)
    return field.mul(field.from_base(coef), field.pow(field.gen, k))


_SPEC_RE = re.compile(
    r"^\s*(QQ|Fp\((\d+)\))\s*(?:\[t\]\s*/\s*\(([^)]+)\))?\s*$"
)


def parse_field(spec):
    """Build a Field from its spec string.  Round-trips with spec_string()."""
    m = _SPEC_RE.match(spec)
    if not m:
        raise FieldError("cannot parse field spec %r" % spec)
    if m.group(1) == "QQ":
        base = RationalField()
    else:
        base = PrimeField(int(m.group(2)))
    if m.group(3) is None:
        return base
    coeffs = _parse_modulus(base, m.group(3))
    if (
        isinstance(base, RationalField)
        and len(coeffs) == 3
        and all(Fraction(c).denominator == 1 for c in coeffs)
    ):
        return QuadraticRationalField(int(Fraction(coeffs[1])), int(Fraction(coeffs[0])))
    return QuotientRing(base, coeffs)


def _parse_modulus(base, s):
    s = s.replace(" ", "").replace("−", "-")
    terms = {}
    i = 0
    while i < len(s):
        j = i + 1
        while j < len(s) and s[j] not in "+-":
            j += 1
        term = s[i:j]
        i = j
        sign = 1
        if term.startswith("+"):
            term = term[1:]
        elif term.startswith("-"):
            sign = -1
            term = term[1:]
        if "t" in term:
            coef_s, _, pow_s = term.partition("t")
            coef_s = coef_s.rstrip("*")
            coef = base.parse(coef_s) if coef_s else base.one
            k = int(pow_s[1:]) if pow_s.startswith("^") else (1 if pow_s == "" else None)
            if k is None:
                raise FieldError("bad modulus term %r" % term)
        else:
            coef = base.parse(term)
            k = 0
        if sign < 0:
            coef = base.neg(coef)
        terms[k] = base.add(terms.get(k, base.zero), coef)
    deg = max(terms)
    return [terms.get(k, base.zero) for k in range(deg + 1)]


QQ = RationalField()


def GF(p):
    return PrimeField(p)
