"""Dense univariate polynomials over Z as plain lists of ints.

Coefficients are stored in ascending degree order and the zero polynomial is
the empty list.  Large products and exact quotients go through Kronecker
substitution: a polynomial is packed into one big integer, the operation is
done by GMP, and the result is unpacked with balanced digits.
"""

from __future__ import annotations

from math import gcd
from typing import List, Sequence

import gmpy2

ZX = List[int]

# below this size schoolbook multiplication wins
_KRONECKER_MIN = 24


def trim(a: Sequence[int]) -> ZX:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Sequence[int]) -> int:
    return len(a) - 1


def neg(a: Sequence[int]) -> ZX:
    return [-c for c in a]


def add(a: Sequence[int], b: Sequence[int]) -> ZX:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def sub(a: Sequence[int], b: Sequence[int]) -> ZX:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def scale(a: Sequence[int], k: int) -> ZX:
    if k == 0:
        return []
    return [k * c for c in a]


def shift(a: Sequence[int], n: int) -> ZX:
    """Multiply by x**n."""
    if not a:
        return []
    return [0] * n + list(a)


def maxbits(a: Sequence[int]) -> int:
    return max((abs(c).bit_length() for c in a), default=0)


def content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a: Sequence[int]) -> ZX:
    """Divide out the content; the sign of the leading coefficient is kept."""
    g = content(a)
    if g <= 1:
        return list(a)
    return [c // g for c in a]


def divexact_scalar(a: Sequence[int], k: int) -> ZX:
    return [c // k for c in a]


# -- Kronecker packing -------------------------------------------------------

def _slot_bytes(bits: int) -> int:
    # one sign bit plus headroom, rounded up to whole bytes
    return (bits + 2 + 7) // 8


def _pack(a: Sequence[int], nbytes: int):
    pos = b"".join(c.to_bytes(nbytes, "little") if c > 0 else bytes(nbytes) for c in a)
    negs = b"".join((-c).to_bytes(nbytes, "little") if c < 0 else bytes(nbytes) for c in a)
    return gmpy2.mpz(int.from_bytes(pos, "little")) - gmpy2.mpz(int.from_bytes(negs, "little"))


def _unpack(v, nbytes: int, n: int) -> ZX:
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes((bytes(nbytes - 1) + b"\x80") * n, "little")
    u = int(v) + offset
    if u < 0:
        raise ArithmeticError("packed value out of range")
    raw = u.to_bytes(nbytes * n, "little")
    return trim(
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(n)
    )


def mul(a: Sequence[int], b: Sequence[int]) -> ZX:
    if not a or not b:
        return []
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    if min(len(a), len(b)) < _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim(out)
    bits = maxbits(a) + maxbits(b) + min(len(a), len(b)).bit_length()
    nb = _slot_bytes(bits)
    prod = _pack(a, nb) * _pack(b, nb)
    return _unpack(prod, nb, len(a) + len(b) - 1)


def sqr(a: Sequence[int]) -> ZX:
    return mul(a, a)


def power(a: Sequence[int], e: int) -> ZX:
    result: ZX = [1]
    base = list(a)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def divexact(a: Sequence[int], b: Sequence[int], check: bool = True) -> ZX:
    """Quotient a/b, which must be exact in Z[x].

    Kronecker division needs a slot wide enough for the quotient's
    coefficients.  Mignotte's bound is safe but grows with the degree, so a
    narrow slot is tried first and the product is recomputed to verify it;
    the slot doubles until the check passes or the safe width is reached.
    ``check`` only matters for the final, provably wide enough attempt.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    if len(b) == 1:
        d = b[0]
        q = [c // d for c in a]
        if check and any(c % d for c in a):
            raise ArithmeticError("inexact division")
        return q
    n = len(a) - len(b) + 1
    if n <= 0:
        raise ArithmeticError("inexact division")
    if n < _KRONECKER_MIN or len(b) < 4:
        q, r = divmod_exact_lc(a, b)
        if r:
            raise ArithmeticError("inexact division")
        return q
    a = trim(a)
    norm2 = sum(c * c for c in a)
    safe = (norm2.bit_length() + 1) // 2 + n + 1
    bits = maxbits(a) + 64
    while bits < safe:
        q = _kronecker_div(a, b, n, bits)
        if q is not None and mul(q, b) == a:
            return q
        bits *= 2
    q = _kronecker_div(a, b, n, safe)
    if q is None or (check and mul(q, b) != a):
        raise ArithmeticError("inexact division")
    return q


def _kronecker_div(a: ZX, b: Sequence[int], n: int, bits: int):
    nb = _slot_bytes(bits)
    qv, rv = gmpy2.t_divmod(_pack(a, nb), _pack(b, nb))
    if rv:
        return None
    try:
        return _unpack(qv, nb, n)
    except ArithmeticError:
        return None


def divmod_exact_lc(a: Sequence[int], b: Sequence[int]):
    """Schoolbook division; every step must divide by lc(b) exactly."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        t, r = divmod(c, lb)
        if r:
            raise ArithmeticError("inexact division")
        q[i - db] = t
        for j in range(db + 1):
            a[i - db + j] -= t * b[j]
    return trim(q), trim(a[:db])


def prem(a: Sequence[int], b: Sequence[int]) -> ZX:
    """Pseudo-remainder of a by b: lc(b)**(deg a - deg b + 1) * a mod b."""
    if not b:
        raise ZeroDivisionError("pseudo-remainder by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return trim(r)
    lb = b[-1]
    e = len(r) - 1 - db + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        k = len(r) - 1 - db
        r = [lb * c for c in r]
        for j in range(db + 1):
            r[k + j] -= lr * b[j]
        r = trim(r)
        e -= 1
    if e > 0:
        f = lb ** e
        r = [f * c for c in r]
    return r


def derivative(a: Sequence[int]) -> ZX:
    return trim([i * a[i] for i in range(1, len(a))])


def compose_linear(a: Sequence[int], num: int, den: int) -> ZX:
    """den**deg(a) * a(num/den * x), an integer polynomial."""
    n = len(a) - 1
    return [c * num ** i * den ** (n - i) for i, c in enumerate(a)]


def reflect(a: Sequence[int]) -> ZX:
    """a(-x)."""
    return [c if i % 2 == 0 else -c for i, c in enumerate(a)]


def reverse(a: Sequence[int]) -> ZX:
    """x**deg(a) * a(1/x)."""
    return list(reversed(a))


def taylor_shift1(a: Sequence[int]) -> ZX:
    """a(x + 1)."""
    if len(a) > 96:
        return _taylor_shift1_dc(list(a))
    return _taylor_shift1_naive(a)


def _taylor_shift1_naive(a: Sequence[int]) -> ZX:
    c = list(a)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1]
    return c


def _binomial_row(m: int) -> ZX:
    return [int(gmpy2.comb(m, k)) for k in range(m + 1)]


def _taylor_shift1_dc(a: ZX) -> ZX:
    # a = lo + x**m * hi  =>  a(x+1) = lo(x+1) + (x+1)**m * hi(x+1)
    rows = {}

    def rec(p: ZX) -> ZX:
        n = len(p)
        if n <= 48:
            return _taylor_shift1_naive(p)
        m = n // 2
        if m not in rows:
            rows[m] = _binomial_row(m)
        out = mul(rows[m], rec(p[m:]))
        lo = rec(p[:m])
        out = out + [0] * (n - len(out))
        for i, c in enumerate(lo):
            out[i] += c
        return out

    return rec(a)


def sign_variations(a: Sequence[int]) -> int:
    v = 0
    last = 0
    for c in a:
        if c:
            if last and (c > 0) != (last > 0):
                v += 1
            last = c
    return v


def eval_frac(a: Sequence[int], num: int, den: int):
    """Return (N, D) with a(num/den) = N / D and D = den**deg(a) > 0."""
    if not a:
        return 0, 1
    n = len(a) - 1
    acc = 0
    dpow = 1
    for c in reversed(a):
        acc = acc * num + c * dpow
        dpow *= den
    return acc, den ** n


def sign_at_frac(a: Sequence[int], num: int, den: int) -> int:
    """Sign of a(num/den); den must be positive."""
    v, _ = eval_frac(a, num, den)
    return (v > 0) - (v < 0)


def resultant_int(a: Sequence[int], b: Sequence[int]) -> int:
    from .resultant import subresultant_resultant, INT_RING

    return subresultant_resultant(list(a), list(b), INT_RING)


_GCD_PRIMES = tuple(int(gmpy2.next_prime(1 << k)) for k in (61, 59, 53))


def _gcd_degree_mod(a: Sequence[int], b: Sequence[int], p: int) -> int:
    """Degree of gcd(a mod p, b mod p), by the Euclidean algorithm over GF(p)."""
    a = trim([c % p for c in a])
    b = trim([c % p for c in b])
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        a = list(a)
        while len(a) >= len(b):
            q = a[-1] * inv % p
            s = len(a) - len(b)
            if q:
                for i in range(db):
                    a[s + i] = (a[s + i] - q * b[i]) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def coprime_certificate(a: Sequence[int], b: Sequence[int]) -> bool:
    """True if a prime not dividing either leading coefficient gives a constant gcd.

    Reduction mod such a prime can only raise the gcd degree, so the gcd over
    Z is then constant too.  False means "not certified", not "not coprime".
    """
    for p in _GCD_PRIMES:
        if a[-1] % p and b[-1] % p and _gcd_degree_mod(a, b, p) == 0:
            return True
    return False


def gcd_poly(a: Sequence[int], b: Sequence[int]) -> ZX:
    """Primitive gcd over Z[x] with positive leading coefficient."""
    a, b = trim(a), trim(b)
    if not a:
        g = primitive(b)
    elif not b:
        g = primitive(a)
    elif len(a) > 2 and len(b) > 2 and coprime_certificate(a, b):
        # skips a pseudo-remainder sequence whose coefficients explode for large inputs
        g = [1]
    else:
        a, b = primitive(a), primitive(b)
        if len(a) < len(b):
            a, b = b, a
        while b:
            r = prem(a, b)
            a, b = b, primitive(r)
        g = a
        if len(g) == 1:
            g = [1]
    if g and g[-1] < 0:
        g = neg(g)
    return g


def squarefree_part(a: Sequence[int]) -> ZX:
    a = primitive(trim(a))
    if len(a) <= 2:
        return a if not a or a[-1] > 0 else neg(a)
    g = gcd_poly(a, derivative(a))
    if len(g) == 1:
        out = a
    else:
        out = primitive(divexact(a, g))
    return out if out[-1] > 0 else neg(out)


def interval_eval_scaled(a: Sequence[int], lo: int, hi: int, den: int):
    """Enclosure of den**deg(a) * a(x) for x in [lo/den, hi/den].

    Interval Horner scheme over the integers; returns (L, H) with L <= H.
    """
    if not a:
        return 0, 0
    L = H = a[-1]
    dpow = 1
    for c in reversed(a[:-1]):
        dpow *= den
        prods = (L * lo, L * hi, H * lo, H * hi)
        L = min(prods) + c * dpow
        H = max(prods) + c * dpow
    return L, H


def flatten2(rows: Sequence[Sequence[int]], stride: int) -> ZX:
    """Pack a bivariate array rows[i][j] into one polynomial via y -> z, x -> z**stride."""
    out = [0] * (len(rows) * stride)
    for i, r in enumerate(rows):
        base = i * stride
        out[base:base + len(r)] = r
    return trim(out)


def unflatten2(a: Sequence[int], stride: int) -> List[ZX]:
    return [trim(a[i:i + stride]) for i in range(0, len(a), stride)]
