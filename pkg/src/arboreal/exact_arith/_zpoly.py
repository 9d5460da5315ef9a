"""Dense integer polynomial kernels.

Polynomials are plain lists of Python ints, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial.  Everything above this module
works over Q by carrying a common denominator next to an integer list.
"""

from functools import reduce
from math import gcd

# below this length schoolbook beats the packing overhead
_KRONECKER_CUTOFF = 48


def strip(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n] if n != len(a) else a


def content(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def primitive(a):
    """Primitive part with a positive leading coefficient."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return list(a)
    return [x // g for x in a]


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return strip(out)


def sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return strip(out)


def scale(a, k):
    if not k:
        return []
    return [x * k for x in a]


def _schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(a, kb):
    pos = b"".join((x if x > 0 else 0).to_bytes(kb, "little") for x in a)
    neg = b"".join((-x if x < 0 else 0).to_bytes(kb, "little") for x in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(z, kb, n):
    half = 1 << (8 * kb - 1)
    offset = int.from_bytes((b"\x00" * (kb - 1) + b"\x80") * n, "little")
    raw = (z + offset).to_bytes(n * kb, "little")
    return [int.from_bytes(raw[i * kb:(i + 1) * kb], "little") - half for i in range(n)]


def mul(a, b):
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_CUTOFF:
        return strip(_schoolbook(a, b))
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    kb = (bound.bit_length() + 2 + 7) // 8
    if a is b:
        z = _pack(a, kb)
        z = z * z
    else:
        z = _pack(a, kb) * _pack(b, kb)
    return strip(_unpack(z, kb, len(a) + len(b) - 1))


def derivative(a):
    return strip([i * a[i] for i in range(1, len(a))])


def prem(f, g):
    """Pseudo-remainder: lc(g)**(deg f - deg g + 1) * f = q*g + r."""
    dg = len(g) - 1
    if dg < 0:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    lg = g[-1]
    r = list(f)
    e = len(f) - len(g) + 1
    while r and len(r) - 1 >= dg:
        lr = r[-1]
        s = len(r) - 1 - dg
        if lg != 1:
            r = [x * lg for x in r]
        for i, gi in enumerate(g):
            if gi:
                r[s + i] -= lr * gi
        r.pop()
        r = strip(r)
        e -= 1
    if e > 0 and r and lg != 1:
        r = scale(r, lg ** e)
    return r


def pdivmod(f, g):
    """Pseudo-division returning (q, r, e) with lc(g)**e * f = q*g + r."""
    dg = len(g) - 1
    lg = g[-1]
    r = list(f)
    q = [0] * max(0, len(f) - dg)
    e = 0
    while r and len(r) - 1 >= dg:
        lr = r[-1]
        s = len(r) - 1 - dg
        if lg != 1:
            r = [x * lg for x in r]
            q = [x * lg for x in q]
            e += 1
        q[s] += lr
        for i, gi in enumerate(g):
            if gi:
                r[s + i] -= lr * gi
        r.pop()
        r = strip(r)
    return strip(q), r, e


def gcd_prs(a, b):
    """Primitive-PRS gcd of two integer polynomials (primitive, lc > 0)."""
    a, b = primitive(a), primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = prem(a, b)
        a, b = b, primitive(r)
    return a


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def lcm_all(values):
    return reduce(lambda u, v: u * v // gcd(u, v), values, 1)
