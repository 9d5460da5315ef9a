"""Arithmetic in F_p[t] and one-sided coprimality certificates.

If ``A mod p`` and ``B mod p`` are coprime and the leading coefficients of A
and B do not vanish mod p, then ``gcd(A, B) = 1`` over Q: the resultant is
nonzero mod p, hence nonzero.  A non-trivial gcd mod p proves nothing, so
callers treat that outcome as "not certified", never as "not coprime".

Primes are drawn below 2**31 so that a product of two residues fits in an
int64 and the Euclidean inner loop can run vectorised in numpy.
"""

import random

import numpy as np

from .poly import Poly

PRIME_BITS = 31
DEFAULT_SEED = 20140213

# deterministic Miller-Rabin bases for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_primes(count: int, seed: int = DEFAULT_SEED, bits: int = PRIME_BITS):
    """``count`` distinct primes in [2**(bits-1), 2**bits), reproducible from ``seed``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randrange(1 << (bits - 1), 1 << bits) | 1
        if n not in out and is_probable_prime(n):
            out.append(n)
    return out


class BadPrime(ArithmeticError):
    """The prime divides a denominator or a leading coefficient."""


def reduce_poly(a: Poly, p: int) -> np.ndarray:
    nums, den = a.integer_form()
    if den % p == 0:
        raise BadPrime(p)
    inv = pow(den, -1, p)
    return trim(np.array([x * inv % p for x in nums], dtype=np.int64))


def trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def add(a, b, p):
    if a.size < b.size:
        a, b = b, a
    out = a.copy()
    out[: b.size] = (out[: b.size] + b) % p
    return trim(out)


def sub(a, b, p):
    n = max(a.size, b.size)
    out = np.zeros(n, dtype=np.int64)
    out[: a.size] = a
    out[: b.size] = (out[: b.size] - b) % p
    return trim(out)


def mul(a, b, p):
    """Product mod p by Kronecker substitution through Python big ints."""
    if not a.size or not b.size:
        return a[:0]
    n = a.size + b.size - 1
    bits = 2 * PRIME_BITS + max(a.size, b.size).bit_length() + 1
    kb = (bits + 7) // 8
    pa = int.from_bytes(b"".join(int(x).to_bytes(kb, "little") for x in a), "little")
    if a is b:
        z = pa * pa
    else:
        z = pa * int.from_bytes(b"".join(int(x).to_bytes(kb, "little") for x in b), "little")
    raw = z.to_bytes(n * kb + kb, "little")
    out = np.array([int.from_bytes(raw[i * kb:(i + 1) * kb], "little") % p for i in range(n)],
                   dtype=np.int64)
    return trim(out)


def derivative(a, p):
    if a.size <= 1:
        return a[:0]
    return trim(a[1:] * np.arange(1, a.size, dtype=np.int64) % p)


def rem(a, b, p):
    db = b.size - 1
    if a.size - 1 < db:
        return a
    inv = pow(int(b[-1]), -1, p)
    r = a.copy()
    for i in range(r.size - 1, db - 1, -1):
        q = int(r[i]) * inv % p
        if q:
            r[i - db:i + 1] = (r[i - db:i + 1] - q * b) % p
    return trim(r[:db])


def quo(a, b, p):
    """Exact quotient a / b in F_p[t]; b must divide a."""
    db = b.size - 1
    if a.size - 1 < db:
        if a.size:
            raise ArithmeticError("quo: divisor does not divide")
        return a
    inv = pow(int(b[-1]), -1, p)
    r = a.copy()
    q = np.zeros(a.size - db, dtype=np.int64)
    for i in range(r.size - 1, db - 1, -1):
        c = int(r[i]) * inv % p
        q[i - db] = c
        if c:
            r[i - db:i + 1] = (r[i - db:i + 1] - c * b) % p
    if trim(r[:db]).size:
        raise ArithmeticError("quo: divisor does not divide")
    return trim(q)


def gcd(a, b, p):
    """Monic gcd in F_p[t]."""
    a, b = trim(a % p), trim(b % p)
    while b.size:
        a, b = b, rem(a, b, p)
    if not a.size:
        return a
    return a * pow(int(a[-1]), -1, p) % p


def odd_part(a, p):
    """Product of the factors of odd multiplicity in a (Yun's algorithm; needs p > deg a)."""
    if a.size <= 1:
        return a
    da = derivative(a, p)
    g = gcd(a, da, p)
    b = quo(a, g, p)
    c = quo(da, g, p)
    d = sub(c, derivative(b, p), p)
    out = np.ones(1, dtype=np.int64)
    i = 1
    while b.size > 1:
        x = gcd(b, d, p)
        if i % 2:
            out = mul(out, x, p)
        b = quo(b, x, p)
        c = quo(d, x, p)
        d = sub(c, derivative(b, p), p)
        i += 1
    return out


def evaluate_lc_nonzero(a: Poly, p: int) -> bool:
    nums, den = a.integer_form()
    return bool(nums) and nums[-1] % p != 0 and den % p != 0


def coprime_mod_p(a: Poly, b: Poly, p: int) -> bool:
    """True certifies gcd(a, b) == 1 over Q; False is inconclusive."""
    if a.is_zero or b.is_zero:
        return False
    if not (evaluate_lc_nonzero(a, p) and evaluate_lc_nonzero(b, p)):
        return False
    g = gcd(reduce_poly(a, p), reduce_poly(b, p), p)
    return g.size == 1


def certify_coprime(a: Poly, b: Poly, primes=None) -> bool:
    """Try each prime in turn; True is an exact certificate of coprimality."""
    if a.is_constant and not a.is_zero or b.is_constant and not b.is_zero:
        return True
    for p in primes or random_primes(3):
        if coprime_mod_p(a, b, p):
            return True
    return False
