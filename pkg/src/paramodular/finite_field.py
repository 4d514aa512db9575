"""Small finite fields F_q = F_p[t]/(m(t)) and polynomials over them.

Elements are plain ints in ``range(q)``: the element ``c_0 + c_1 t + ...``
is encoded as ``c_0 + c_1 p + c_2 p^2 + ...``.  With this encoding the prime
subfield is ``range(p)`` in every extension, so constants embed for free.

Polynomials over a field are lists of elements in ascending degree with no
trailing zeros (``[]`` is the zero polynomial).
"""

from __future__ import annotations

import functools
import random

from .errors import InputError

MAX_FIELD_SIZE = 10**6


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """The field F_p[t]/(modulus) with elements encoded as ints.

    ``modulus`` is a monic list of ints mod p of length k + 1.  When omitted
    the canonical modulus (smallest monic irreducible in the encoding order)
    is used.  Irreducibility is checked at construction.
    """

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        if k < 1:
            raise InputError("extension degree must be positive")
        if p**k > MAX_FIELD_SIZE:
            raise InputError(f"field of size {p}^{k} exceeds {MAX_FIELD_SIZE}")
        if modulus is None:
            modulus = canonical_modulus(p, k)
        else:
            modulus = [c % p for c in modulus]
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise InputError("modulus must be monic of degree k")
            if not is_irreducible_mod_p(modulus, p):
                raise InputError(f"modulus {modulus} is reducible mod {p}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        self._log = None
        self._exp = None
        self._zech = None
        self._sqrt = None
        self._as_root = None
        if k > 1:
            self._build_tables()

    def __repr__(self):
        return f"FiniteField({self.p}, {self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # digit-level helpers, used only while building tables
    def _digits(self, a):
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _encode(self, digits):
        a = 0
        for c in reversed(digits):
            a = a * self.p + c
        return a

    def _slow_mul(self, a, b):
        p, k, m = self.p, self.k, self.modulus
        x, y = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] = (prod[i + j] + xi * yj) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for j in range(k + 1):
                    prod[d - k + j] = (prod[d - k + j] - c * m[j]) % p
        return self._encode(prod[:k])

    def _slow_pow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        q = self.q
        order = q - 1
        factors = _prime_factors(order)
        g = next(c for c in range(2, q)
                 if all(self._slow_pow(c, order // r) != 1 for r in factors))
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        # zech[n] = log(1 + g^n), or -1 when 1 + g^n = 0
        p = self.p
        zech = [-1] * order
        for n in range(order):
            d = self._digits(exp[n])
            d[0] = (d[0] + 1) % p
            s = self._encode(d)
            zech[n] = log[s] if s else -1
        self.generator = g
        self._exp, self._log, self._zech = exp, log, zech

    def _ensure_tables(self):
        if self._log is None:
            self._build_tables()

    # arithmetic
    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        n = lb - la
        if n < 0:
            n += self.q - 1
        z = self._zech[n]
        return 0 if z < 0 else self._exp[la + z]

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        if a == 0 or self.p == 2:
            return a
        # -1 = g^((q-1)/2) in odd characteristic
        return self._exp[self._log[a] + (self.q - 1) // 2]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of a rational integer."""
        return n % self.p

    def elements(self):
        return range(self.q)

    def is_square(self, a) -> bool:
        if a == 0 or self.p == 2:
            return True
        if self.k == 1:
            return pow(a, (self.p - 1) // 2, self.p) == 1
        return self._log[a] % 2 == 0

    def sqrt(self, a):
        """One square root of ``a`` (the smaller encoding), or None."""
        if self._sqrt is None:
            table = {}
            for y in range(self.q):
                s = self.mul(y, y)
                if s not in table:
                    table[s] = y
            self._sqrt = table
        return self._sqrt.get(a)

    def artin_schreier_root(self, a):
        """Some z with z^2 + z = a in characteristic 2, or None."""
        if self._as_root is None:
            table = {}
            for z in range(self.q):
                table.setdefault(self.add(self.mul(z, z), z), z)
            self._as_root = table
        return self._as_root.get(a)

    def digits(self, a):
        """Coefficient vector of ``a`` in the basis 1, t, ..., t^(k-1)."""
        return self._digits(a)


@functools.lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> FiniteField:
    """Cached canonical field of order p^k."""
    return FiniteField(p, k)


@functools.lru_cache(maxsize=None)
def field_with_modulus(p: int, modulus: tuple) -> FiniteField:
    return FiniteField(p, len(modulus) - 1, list(modulus))


# ---------------------------------------------------------------------------
# polynomials over a field


def ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def pdeg(a) -> int:
    return len(a) - 1


def padd(F, a, b):
    n = max(len(a), len(b))
    out = [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return ptrim(out)


def psub(F, a, b):
    return padd(F, a, [F.neg(c) for c in b])


def pscale(F, a, c):
    return ptrim([F.mul(c, x) for x in a])


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(out)


def pdivmod(F, a, b):
    b = ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = ptrim(a)
    if len(a) < len(b):
        return [], a
    inv_lc = F.inv(b[-1])
    quot = [0] * (len(a) - len(b) + 1)
    rem = list(a)
    db = len(b) - 1
    for d in range(len(a) - 1, db - 1, -1):
        c = rem[d]
        if c:
            c = F.mul(c, inv_lc)
            quot[d - db] = c
            for j in range(db + 1):
                rem[d - db + j] = F.sub(rem[d - db + j], F.mul(c, b[j]))
    return ptrim(quot), ptrim(rem[:db])


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    a = ptrim(a)
    if not a:
        return a
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F, a, b):
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def pderiv(F, a):
    return ptrim([F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def ppowmod(F, a, e, m):
    result = [1]
    a = pmod(F, a, m)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, a), m)
        a = pmod(F, pmul(F, a, a), m)
        e >>= 1
    return result


def peval(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def is_irreducible_mod_p(m, p) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    F = field(p, 1)
    m = ptrim([c % p for c in m])
    k = pdeg(m)
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if psub(F, ppowmod(F, x, p**k, m), x):
        return False
    for r in _prime_factors(k):
        h = psub(F, ppowmod(F, x, p ** (k // r), m), x)
        if pdeg(pgcd(F, h, m)) > 0:
            return False
    return True


@functools.lru_cache(maxsize=None)
def canonical_modulus(p: int, k: int) -> tuple:
    """Smallest monic irreducible of degree k over F_p.

    Candidates ``c_0 + c_1 x + ... + x^k`` are ordered by the integer
    ``c_0 + c_1 p + ... + c_{k-1} p^(k-1)``.
    """
    if k == 1:
        return (0, 1)
    for n in range(p**k):
        coeffs = []
        for _ in range(k):
            n, r = divmod(n, p)
            coeffs.append(r)
        coeffs.append(1)
        if is_irreducible_mod_p(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


def roots_in_field(F, a):
    """All roots of ``a`` in F by exhaustive search, ascending."""
    return [x for x in F.elements() if peval(F, a, x) == 0]


def embedding(src: FiniteField, dst: FiniteField):
    """A field homomorphism src -> dst as a Python function.

    Sends t to the smallest root of ``src.modulus`` in ``dst``.
    """
    if src.p != dst.p or dst.k % src.k:
        raise InputError(f"no embedding of F_{src.q} into F_{dst.q}")
    if src.k == 1:
        return lambda a: a
    mod = list(src.modulus)
    theta = next(x for x in dst.elements() if peval(dst, mod, x) == 0)
    powers = [1]
    for _ in range(src.k - 1):
        powers.append(dst.mul(powers[-1], theta))
    table = {}

    def embed(a):
        if a < src.p:
            return a
        if a not in table:
            acc = 0
            for c, pw in zip(src.digits(a), powers):
                if c:
                    acc = dst.add(acc, dst.mul(c, pw))
            table[a] = acc
        return table[a]

    return embed


def solve_quadratic(F: FiniteField, b, c) -> list:
    """Sorted list of roots of ``y^2 + b y = c`` in F."""
    if F.p == 2:
        if b == 0:
            # squaring is a bijection; the root is c^(q/2)
            return [F.pow(c, F.q // 2)]
        # y = b z turns the equation into z^2 + z = c / b^2
        z = F.artin_schreier_root(F.div(c, F.mul(b, b)))
        if z is None:
            return []
        return sorted({F.mul(b, z), F.mul(b, F.add(z, 1))})
    disc = F.add(F.mul(b, b), F.mul(F.from_int(4), c))
    s = F.sqrt(disc)
    if s is None:
        return []
    half = F.inv(F.from_int(2))
    nb = F.neg(b)
    return sorted({F.mul(F.add(nb, s), half), F.mul(F.sub(nb, s), half)})


# ---------------------------------------------------------------------------
# factorization over a finite field


def squarefree_decomposition(F, a):
    """Yun-style decomposition of a monic ``a`` into [(factor, multiplicity)].

    Handles p-th powers in characteristic p.
    """
    a = pmonic(F, a)
    out = []
    _sqf(F, a, 1, out)
    merged = {}
    for g, m in out:
        if pdeg(g) > 0:
            key = tuple(g)
            merged[key] = merged.get(key, 0) + m
    return [(list(g), m) for g, m in sorted(merged.items(), key=lambda t: (t[1], t[0]))]


def _sqf(F, a, mult, out):
    if pdeg(a) < 1:
        return
    da = pderiv(F, a)
    if not da:
        # a(x) = b(x^p) = c(x)^p with c the p-th root of the coefficients
        p = F.p
        root = [F.pow(a[i], F.q // p) for i in range(0, len(a), p)]
        _sqf(F, root, mult * p, out)
        return
    c = pgcd(F, a, da)
    w = pdivmod(F, a, c)[0]
    i = 1
    while pdeg(w) > 0:
        y = pgcd(F, w, c)
        z = pdivmod(F, w, y)[0]
        if pdeg(z) > 0:
            out.append((pmonic(F, z), i * mult))
        i += 1
        w = y
        c = pdivmod(F, c, y)[0]
    if pdeg(c) > 0:
        _sqf(F, c, mult, out)


def distinct_degree(F, a):
    """Distinct-degree factorization of a monic squarefree ``a``.

    Returns [(d, g_d)] where g_d is the product of all degree-d irreducible
    factors.
    """
    a = pmonic(F, a)
    out = []
    x = [0, 1]
    h = x
    d = 0
    while pdeg(a) >= 2 * (d + 1):
        d += 1
        h = ppowmod(F, h, F.q, a)
        g = pgcd(F, psub(F, h, x), a)
        if pdeg(g) > 0:
            out.append((d, g))
            a = pdivmod(F, a, g)[0]
            h = pmod(F, h, a)
    if pdeg(a) > 0:
        out.append((pdeg(a), a))
    return out


def equal_degree(F, g, d, rng=None):
    """Split a product of degree-d irreducibles into its factors (Cantor-Zassenhaus)."""
    g = pmonic(F, g)
    if pdeg(g) == d:
        return [g]
    rng = rng or random.Random(0)
    n = pdeg(g)
    while True:
        r = ptrim([rng.randrange(F.q) for _ in range(n)])
        if pdeg(r) < 1:
            continue
        if F.p == 2:
            # trace map r + r^2 + ... + r^(2^(kd-1))
            t = r
            s = r
            for _ in range(F.k * d - 1):
                t = pmod(F, pmul(F, t, t), g)
                s = padd(F, s, t)
        else:
            s = psub(F, ppowmod(F, r, (F.q**d - 1) // 2, g), [1])
        h = pgcd(F, s, g)
        if 0 < pdeg(h) < n:
            other = pdivmod(F, g, h)[0]
            return equal_degree(F, h, d, rng) + equal_degree(F, other, d, rng)


def factor(F, a):
    """Complete factorization of ``a`` over F as sorted [(monic irreducible, multiplicity)]."""
    a = ptrim(a)
    if pdeg(a) < 1:
        return []
    rng = random.Random(0)
    out = []
    for sq, m in squarefree_decomposition(F, a):
        for d, g in distinct_degree(F, sq):
            for piece in equal_degree(F, g, d, rng):
                out.append((piece, m))
    return sorted(out, key=lambda t: (pdeg(t[0]), t[0], t[1]))
