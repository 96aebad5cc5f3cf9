"""Finite fields F_p and F_{p^n} with integer-encoded elements.

Extension field elements are encoded as integers in [0, p^n): the code of
sum(c_i x^i) is sum(c_i p^i).  Small fields (the only ones used by the
enumeration core) precompute full multiplication / inverse / Frobenius
tables, which keeps the inner loops of the census at plain list-indexing
speed.  Larger fields fall back to on-the-fly polynomial arithmetic.
"""

from math import isqrt

from .errors import NotInvertibleError
from .rings import Ring

_TABLE_LIMIT = 1024  # build s*s tables only up to this field size


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (coefficient lists, low degree first)


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(c, mod, p):
    c = list(c)
    dm = len(mod) - 1
    while len(c) > dm:
        lead = c[-1]
        if lead:
            shift = len(c) - 1 - dm
            for i, mi in enumerate(mod):
                c[shift + i] = (c[shift + i] - lead * mi) % p
        c.pop()
    return _poly_trim(c)


def _poly_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_mod(out, mod, p)


def _poly_powmod(a, e, mod, p):
    result = [1]
    base = _poly_mod(list(a), mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b with b made monic
        lead_inv = pow(b[-1], p - 2, p)
        bm = [(x * lead_inv) % p for x in b]
        r = list(a)
        while len(r) >= len(bm) and r:
            lead = r[-1]
            if lead:
                shift = len(r) - len(bm)
                for i, mi in enumerate(bm):
                    r[shift + i] = (r[shift + i] - lead * mi) % p
            r.pop()
        a, b = b, _poly_trim(r)
    return a


def is_irreducible(coeffs, p):
    """Irreducibility over F_p of a monic polynomial given low-first."""
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] != 1:
        return False
    if n == 1:
        return True
    # x^(p^n) = x mod f, and gcd(x^(p^(n/l)) - x, f) = 1 for prime l | n
    mod = list(coeffs)
    xq = _poly_powmod([0, 1], p**n, mod, p)
    if _poly_trim([(a - b) % p for a, b in zip_pad(xq, [0, 1])]):
        return False
    for ell in set(_prime_factors(n)):
        xe = _poly_powmod([0, 1], p ** (n // ell), mod, p)
        diff = _poly_trim([(a - b) % p for a, b in zip_pad(xe, [0, 1])])
        g = _poly_gcd(mod, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return zip(a, b)


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def default_modulus(p, n):
    """First irreducible monic polynomial of degree n over F_p in code order.

    Code order scans constant-plus-low coefficients first, so the result is
    reproducible; for (2, 2) it is x^2 + x + 1 and for (3, 2) it is x^2 + 1.
    """
    for code in range(p**n):
        coeffs = _decode(code, p, n) + [1]
        if is_irreducible(coeffs, p):
            return coeffs
    raise RuntimeError(f"no irreducible polynomial of degree {n} over F_{p}")


def _decode(code, p, n):
    out = []
    for _ in range(n):
        out.append(code % p)
        code //= p
    return out


def _encode(coeffs, p):
    out = 0
    for c in reversed(coeffs):
        out = out * p + (c % p)
    return out


class PrimeField(Ring):
    """F_p; payloads are ints in [0, p)."""

    is_finite = True

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, isqrt(p) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.size = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise NotInvertibleError(f"0 has no inverse in F_{self.p}")
        return pow(x, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def frobenius(self, x, power=1):
        return x

    def elements(self):
        return range(self.p)

    def units(self):
        return range(1, self.p)

    def multiplicative_generator(self):
        order = self.p - 1
        fac = set(_prime_factors(order))
        for g in range(2, self.p):
            if all(pow(g, order // q, self.p) != 1 for q in fac):
                return g
        return 1  # p == 2

    def random(self, rng):
        return rng.randrange(self.p)

    def to_json(self, x):
        return x

    def from_json(self, data):
        return int(data) % self.p

    def descriptor(self):
        return {"type": "prime", "p": self.p}

    def __repr__(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))


class ExtensionField(Ring):
    """F_{p^n} as F_p[x]/(modulus); payloads are codes in [0, p^n)."""

    is_finite = True

    def __init__(self, p, n, modulus=None):
        if n < 2:
            raise ValueError("use PrimeField for n = 1")
        self.p = p
        self.n = n
        self.base = PrimeField(p)
        if modulus is None:
            modulus = default_modulus(p, n)
        modulus = [c % p for c in modulus]
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {n}")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = tuple(modulus)
        self.size = p**n
        self.char = p
        self.zero = 0
        self.one = 1
        self.gen = p  # the class of x
        self._tables = None
        if self.size <= _TABLE_LIMIT:
            self._build_tables()

    # --- raw polynomial ops on codes ---

    def _mul_codes(self, x, y):
        a = _decode(x, self.p, self.n)
        b = _decode(y, self.p, self.n)
        c = _poly_mulmod(a, b, list(self.modulus), self.p)
        return _encode(c + [0] * (self.n - len(c)), self.p)

    def _add_codes(self, x, y):
        a = _decode(x, self.p, self.n)
        b = _decode(y, self.p, self.n)
        return _encode([(u + v) % self.p for u, v in zip(a, b)], self.p)

    def _build_tables(self):
        s = self.size
        add = [0] * (s * s)
        mul = [0] * (s * s)
        for x in range(s):
            for y in range(x, s):
                v = self._add_codes(x, y)
                add[x * s + y] = v
                add[y * s + x] = v
                w = self._mul_codes(x, y)
                mul[x * s + y] = w
                mul[y * s + x] = w
        neg = [add.index(0, x * s, (x + 1) * s) - x * s for x in range(s)]
        inv = [0] * s
        for x in range(1, s):
            for y in range(1, s):
                if mul[x * s + y] == 1:
                    inv[x] = y
                    break
        frob = [self._pow_code(x, self.p) for x in range(s)]
        self._tables = (add, mul, neg, inv, frob)
        self._add_t, self._mul_t, self._neg_t, self._inv_t, self._frob_t = self._tables

    def _pow_code(self, x, e):
        r = 1
        b = x
        while e:
            if e & 1:
                r = self._mul_codes(r, b)
            b = self._mul_codes(b, b)
            e >>= 1
        return r

    # --- ring interface ---

    def add(self, x, y):
        if self._tables:
            return self._add_t[x * self.size + y]
        return self._add_codes(x, y)

    def neg(self, x):
        if self._tables:
            return self._neg_t[x]
        a = _decode(x, self.p, self.n)
        return _encode([-c % self.p for c in a], self.p)

    def mul(self, x, y):
        if self._tables:
            return self._mul_t[x * self.size + y]
        return self._mul_codes(x, y)

    def inv(self, x):
        if x == 0:
            raise NotInvertibleError(f"0 has no inverse in {self!r}")
        if self._tables:
            return self._inv_t[x]
        return self._pow_code(x, self.size - 2)

    def from_int(self, n):
        return n % self.p

    def frobenius(self, x, power=1):
        """x -> x^(p^power), the canonical generator of Gal(F_{p^n}/F_p)."""
        for _ in range(power % self.n):
            x = self._frob_t[x] if self._tables else self._pow_code(x, self.p)
        return x

    def embed_base(self, x):
        """F_p -> F_{p^n} as constant polynomials."""
        return x % self.p

    def in_base(self, x):
        return x < self.p

    def to_base(self, x):
        if x >= self.p:
            raise ValueError(f"code {x} is not in the prime subfield")
        return x

    def coeffs(self, x):
        return _decode(x, self.p, self.n)

    def from_coeffs(self, coeffs):
        return _encode(list(coeffs) + [0] * (self.n - len(coeffs)), self.p)

    def elements(self):
        return range(self.size)

    def units(self):
        return range(1, self.size)

    def multiplicative_generator(self):
        order = self.size - 1
        fac = set(_prime_factors(order))
        for g in range(2, self.size):
            if all(self._pow_code(g, order // q) != 1 for q in fac):
                return g
        raise RuntimeError("no generator found")

    def random(self, rng):
        return rng.randrange(self.size)

    def to_json(self, x):
        return self.coeffs(x)

    def from_json(self, data):
        if isinstance(data, int):
            return data % self.p
        if not isinstance(data, list) or len(data) > self.n:
            raise ValueError(f"bad extension field element {data!r}")
        return self.from_coeffs([int(c) for c in data])

    def descriptor(self):
        return {"type": "ext", "p": self.p, "n": self.n, "modulus": list(self.modulus)}

    def __repr__(self):
        return f"F_{self.p}^{self.n}"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.n == self.n
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ext", self.p, self.n, self.modulus))


def GF(q, modulus=None):
    """Finite field of order q = p^n (q prime gives PrimeField)."""
    fac = _prime_factors(q)
    p = fac[0]
    if any(f != p for f in fac):
        raise ValueError(f"{q} is not a prime power")
    n = len(fac)
    if n == 1:
        return PrimeField(p)
    return ExtensionField(p, n, modulus)
