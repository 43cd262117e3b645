"""Exact field arithmetic: Q, prime fields F_p, and small extension fields F_{p^k}.

Field objects expose a uniform functional interface over plain hashable
values: Fraction for Q, ints 0..p-1 for F_p, and low-to-high coefficient
tuples for F_{p^k}.  Finite fields can also hand out dense add/mul/inv/neg
lookup tables so the jit kernels treat prime and extension fields alike.
"""

from fractions import Fraction

import numpy as np

from .errors import (
    NotPrimeError,
    ReduciblePolynomialError,
    TooLargeError,
    EffdimError,
)

MAX_EXT_DEGREE = 4
MAX_EXT_PRIME = 97
MAX_TABLE_SIZE = 4096


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Rationals:
    """The field Q with Fraction values."""

    kind = "Q"
    char = 0
    size = None

    zero = Fraction(0)
    one = Fraction(1)

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
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        return a / b

    def from_int(self, n):
        return Fraction(n)

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeField:
    """F_p with values 0..p-1."""

    kind = "Fp"

    def __init__(self, p):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.size = p
        self.zero = 0
        self.one = 1 % p
        self._tables = None

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
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return range(self.p)

    def to_code(self, a):
        return a

    def from_code(self, c):
        return int(c)

    def __repr__(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


def _poly_mulmod(a, b, modred, p, k):
    # a, b: length-k tuples, modred[j]: reduction of x^{k+j} as a length-k vector
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    out = prod[:k]
    for j in range(k - 1):
        c = prod[k + j]
        if c:
            red = modred[j]
            for t in range(k):
                out[t] = (out[t] + c * red[t]) % p
    return tuple(out)


def _poly_divmod(num, den, p):
    # monic-friendly polynomial division over F_p, coefficients low-to-high
    num = list(num)
    dd = len(den) - 1
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
        dd -= 1
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(1, len(num) - dd)
    for i in range(len(num) - dd - 1, -1, -1):
        c = (num[i + dd] * inv_lead) % p
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] = (num[i + j] - c * dj) % p
    return quot, num[:dd] if dd else [0]


def _is_irreducible(coeffs, k, p):
    # coeffs: low-to-high of the monic polynomial x^k + ...; exhaustive for k <= 4
    full = list(coeffs) + [1]
    for r in range(p):
        acc = 0
        for c in reversed(full):
            acc = (acc * r + c) % p
        if acc == 0:
            return False
    if k < 4:
        return True
    # degree 4 with no roots can still split into two irreducible quadratics
    for b in range(p):
        for c in range(p):
            quad = [c, b, 1]
            if any(((x * x + b * x + c) % p) == 0 for x in range(p)):
                continue
            _, rem = _poly_divmod(full, quad, p)
            if all(v == 0 for v in rem):
                return False
    return True


class ExtField:
    """F_{p^k} as F_p[x] modulo an irreducible monic polynomial.

    Values are length-k tuples of ints, constant coefficient first.  When no
    modulus is given the lexicographically least irreducible monic polynomial
    (low-to-high coefficient order) is selected.
    """

    kind = "Fq"

    def __init__(self, p, k, modulus=None):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if not (2 <= k <= MAX_EXT_DEGREE):
            raise EffdimError(f"extension degree must be 2..{MAX_EXT_DEGREE}, got {k}")
        if p > MAX_EXT_PRIME:
            raise TooLargeError(f"extension base prime capped at {MAX_EXT_PRIME}")
        self.p = p
        self.k = k
        if modulus is None:
            modulus = self._least_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k:
                raise ReduciblePolynomialError(
                    f"modulus needs {k} coefficients below the leading 1"
                )
            if not _is_irreducible(modulus, k, p):
                raise ReduciblePolynomialError(
                    f"x^{k} + {list(modulus)} reducible over F_{p}"
                )
        self.modulus = modulus
        self.char = p
        self.size = p**k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        # x^{k+j} rewritten as length-k vectors, j = 0..k-2
        red0 = tuple((-c) % p for c in modulus)
        reds = [red0]
        for _ in range(k - 2):
            prev = reds[-1]
            nxt = [0] * k
            for t in range(k - 1):
                nxt[t + 1] = prev[t]
            top = prev[k - 1]
            if top:
                for t in range(k):
                    nxt[t] = (nxt[t] + top * red0[t]) % p
            reds.append(tuple(nxt))
        self._reds = reds
        self._tables = None

    @staticmethod
    def _least_irreducible(p, k):
        for code in range(p**k):
            coeffs = []
            c = code
            for _ in range(k):
                coeffs.append(c % p)
                c //= p
            # code order makes the constant term the fastest-varying digit,
            # i.e. lexicographic on (c_{k-1}, ..., c_0)
            if _is_irreducible(tuple(coeffs), k, p):
                return tuple(coeffs)
        raise ReduciblePolynomialError(f"no irreducible degree-{k} poly over F_{p}?")

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        return _poly_mulmod(a, b, self._reds, self.p, self.k)

    def inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of 0")
        # extended Euclid in F_p[x] against the modulus
        p = self.p
        full_mod = list(self.modulus) + [1]
        r0, r1 = full_mod, list(a)
        s0, s1 = [0], [1]
        while any(c % p for c in r1):
            q, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            # s0 - q*s1
            prod = [0] * (len(q) + len(s1) - 1)
            for i, qi in enumerate(q):
                for j, sj in enumerate(s1):
                    prod[i + j] = (prod[i + j] + qi * sj) % p
            ns = [0] * max(len(s0), len(prod))
            for i in range(len(ns)):
                v = (s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
                ns[i] = v % p
            s0, s1 = s1, ns
        # r0 is now a nonzero constant gcd
        c_inv = pow(r0[0] % p, p - 2, p)
        out = [(c_inv * (s0[i] if i < len(s0) else 0)) % p for i in range(self.k)]
        return tuple(out)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def elements(self):
        return [self.from_code(code) for code in range(self.size)]

    def to_code(self, a):
        code = 0
        for c in reversed(a):
            code = code * self.p + c
        return code

    def from_code(self, c):
        c = int(c)
        out = []
        for _ in range(self.k):
            out.append(c % self.p)
            c //= self.p
        return tuple(out)

    def __repr__(self):
        return f"F{self.p}^{self.k}"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.k == self.k
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("Fq", self.p, self.k, self.modulus))


def field_tables(field):
    """Dense int64 lookup tables (add, mul, inv, neg) over element codes.

    Shared by the elimination and search kernels; capped at q <= 4096.
    """
    if field.size is None:
        raise EffdimError("lookup tables need a finite field")
    q = field.size
    if q > MAX_TABLE_SIZE:
        raise TooLargeError(f"field of size {q} too large for lookup tables")
    if field._tables is None:
        els = [field.from_code(c) for c in range(q)]
        add = np.empty((q, q), np.int64)
        mul = np.empty((q, q), np.int64)
        inv = np.zeros(q, np.int64)
        neg = np.empty(q, np.int64)
        for i, a in enumerate(els):
            neg[i] = field.to_code(field.neg(a))
            if i:
                inv[i] = field.to_code(field.inv(a))
            for j, b in enumerate(els):
                add[i, j] = field.to_code(field.add(a, b))
                mul[i, j] = field.to_code(field.mul(a, b))
        field._tables = (add, mul, inv, neg)
    return field._tables


def make_field(kind, *params):
    """Field factory: make_field("Q"), ("Fp", p), ("Fq", p, k[, modulus])."""
    if kind == "Q":
        return Rationals()
    if kind == "Fp":
        return PrimeField(params[0])
    if kind == "Fq":
        return ExtField(*params)
    raise EffdimError(f"unknown field kind {kind!r}")


def parse_field(text):
    """Parse CLI field syntax: Q | Fp:p | Fq:p,k."""
    if text == "Q":
        return Rationals()
    if text.startswith("Fp:"):
        return PrimeField(int(text[3:]))
    if text.startswith("Fq:"):
        parts = text[3:].split(",")
        if len(parts) != 2:
            raise EffdimError(f"bad field syntax {text!r}, want Fq:p,k")
        return ExtField(int(parts[0]), int(parts[1]))
    raise EffdimError(f"bad field syntax {text!r}, want Q, Fp:p or Fq:p,k")


def field_to_json(field):
    if isinstance(field, Rationals):
        return {"kind": "Q"}
    if isinstance(field, PrimeField):
        return {"kind": "Fp", "p": field.p}
    return {"kind": "Fq", "p": field.p, "k": field.k, "modulus": list(field.modulus)}


def field_from_json(obj):
    kind = obj["kind"]
    if kind == "Q":
        return Rationals()
    if kind == "Fp":
        return PrimeField(obj["p"])
    if kind == "Fq":
        return ExtField(obj["p"], obj["k"], obj.get("modulus"))
    raise EffdimError(f"unknown field kind {kind!r}")


def scalar_to_json(field, a):
    if isinstance(field, Rationals):
        return f"{a.numerator}/{a.denominator}"
    if isinstance(field, PrimeField):
        return int(a)
    return list(a)


def scalar_from_json(field, v):
    if isinstance(field, Rationals):
        if isinstance(v, str):
            num, _, den = v.partition("/")
            return Fraction(int(num), int(den or 1))
        return Fraction(v)
    if isinstance(field, PrimeField):
        return int(v) % field.p
    return tuple(int(c) % field.p for c in v)


def root_of_unity(N):
    """Smallest prime p = 1 (mod N) and the least element of F_p of order N."""
    if not (1 <= N <= 10**6):
        raise EffdimError("root_of_unity supports 1 <= N <= 10^6")
    p = 2
    while not (is_prime(p) and p % N == 1 % N):  # 1 % N handles N = 1
        p += 1
    # prime factorization of N for exact-order testing
    primes = []
    rem = N
    f = 2
    while f * f <= rem:
        if rem % f == 0:
            primes.append(f)
            while rem % f == 0:
                rem //= f
        f += 1
    if rem > 1:
        primes.append(rem)
    for xi in range(1, p):
        if pow(xi, N, p) != 1:
            continue
        if all(pow(xi, N // ell, p) != 1 for ell in primes):
            return p, xi
    raise EffdimError(f"no element of order {N} in F_{p}?")
