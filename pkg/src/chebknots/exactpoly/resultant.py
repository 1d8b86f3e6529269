"""Resultants over Z and Z[y] by the subresultant PRS.

A polynomial in the eliminated variable is a list of ring elements in
ascending order.  Two coefficient rings are provided: plain integers and
integer polynomials (``zx`` lists).  The Sylvester determinant, computed by
fraction-free Bareiss elimination, is kept as an independent check.
"""

from __future__ import annotations

from typing import Any, List, Sequence

from . import zx


class IntRing:
    zero = 0
    one = 1

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def divexact(a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact division in Z")
        return q

    @staticmethod
    def pow(a, e):
        return a ** e


class ZxRing:
    """Z[y] with elements stored as trimmed ``zx`` lists."""

    zero: List[int] = []
    one = [1]

    def __init__(self, check: bool = False):
        self.check = check

    @staticmethod
    def is_zero(a):
        return not a

    add = staticmethod(zx.add)
    sub = staticmethod(zx.sub)
    neg = staticmethod(zx.neg)
    mul = staticmethod(zx.mul)
    pow = staticmethod(zx.power)

    def divexact(self, a, b):
        return zx.divexact(a, b, check=self.check)


INT_RING = IntRing()
ZX_RING = ZxRing()


def _trim(a: List[Any], R) -> List[Any]:
    while a and R.is_zero(a[-1]):
        a.pop()
    return a


def prem(a: Sequence[Any], b: Sequence[Any], R) -> List[Any]:
    """Pseudo-remainder lc(b)**(deg a - deg b + 1) * a mod b over ring R."""
    r = list(a)
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    if len(r) - 1 < db:
        return _trim(r, R)
    lb = b[-1]
    e = len(r) - 1 - db + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        k = len(r) - 1 - db
        r = [R.mul(lb, c) for c in r]
        for j in range(db + 1):
            if not R.is_zero(b[j]):
                r[k + j] = R.sub(r[k + j], R.mul(lr, b[j]))
        r.pop()  # leading term cancels by construction
        _trim(r, R)
        e -= 1
    if e > 0:
        f = R.pow(lb, e)
        r = [R.mul(f, c) for c in r]
    return r


def subresultant_resultant(a: Sequence[Any], b: Sequence[Any], R=INT_RING):
    """Res(a, b) with the Sylvester sign convention."""
    A = _trim(list(a), R)
    B = _trim(list(b), R)
    if not A or not B:
        return R.zero
    dA, dB = len(A) - 1, len(B) - 1
    s = 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA % 2 and dB % 2:
            s = -s
    if dB == 0:
        res = R.pow(B[0], dA)
        return res if s > 0 else R.neg(res)
    g = R.one
    h = R.one
    while True:
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        rem = prem(A, B, R)
        A = B
        div = R.mul(g, R.pow(h, delta))
        B = [R.divexact(c, div) for c in rem]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = R.divexact(R.pow(g, delta), R.pow(h, delta - 1))
        dA = len(A) - 1
        if not B:
            return R.zero
        dB = len(B) - 1
        if dB == 0:
            break
    if dA == 1:
        res = B[0]
    else:
        res = R.divexact(R.pow(B[0], dA), R.pow(h, dA - 1))
    return res if s > 0 else R.neg(res)


def sylvester_matrix(a: Sequence[Any], b: Sequence[Any], R=INT_RING):
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    da = list(reversed(a))
    db = list(reversed(b))
    for i in range(n):
        rows.append([R.zero] * i + da + [R.zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([R.zero] * i + db + [R.zero] * (size - i - n - 1))
    return rows


def bareiss_det(M, R=INT_RING):
    """Determinant by fraction-free Gaussian elimination."""
    M = [list(r) for r in M]
    n = len(M)
    if n == 0:
        return R.one
    sign = 1
    prev = R.one
    for k in range(n - 1):
        if R.is_zero(M[k][k]):
            for i in range(k + 1, n):
                if not R.is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return R.zero
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = R.sub(R.mul(M[i][j], pivot), R.mul(M[i][k], M[k][j]))
                M[i][j] = R.divexact(t, prev)
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else R.neg(det)


def sylvester_resultant(a: Sequence[Any], b: Sequence[Any], R=INT_RING):
    """Res(a, b) as the determinant of the Sylvester matrix (test oracle)."""
    A = _trim(list(a), R)
    B = _trim(list(b), R)
    if not A or not B:
        return R.zero
    if len(A) == 1 and len(B) == 1:
        return R.one
    return bareiss_det(sylvester_matrix(A, B, R), R)
