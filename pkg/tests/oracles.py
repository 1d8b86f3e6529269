"""Independent reference computations used to cross-check the package.

Nothing here imports chebknots: every oracle is a separate, slower route to
the same mathematical object.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import mpmath

Mono = Tuple[int, ...]
DPoly = Dict[Mono, int]


def _dadd(a: DPoly, b: DPoly, s: int = 1) -> DPoly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
        if out[k] == 0:
            del out[k]
    return out


def _dmul(a: DPoly, b: DPoly) -> DPoly:
    out: DPoly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def chebyshev_t_coeffs(n: int) -> List[int]:
    """T_n(t) by T_{k+1} = 2t T_k - T_{k-1}, ascending coefficients."""
    a, b = [1], [0, 1]
    if n == 0:
        return a
    for _ in range(n - 1):
        nxt = [0] + [2 * x for x in b]
        for i, x in enumerate(a):
            nxt[i] -= x
        a, b = b, nxt
    return b


def p_oracle(n: int) -> DPoly:
    """(T_n(t) - T_n(s)) / (t - s) in S = s + t, T = s t, keyed by (deg S, deg T).

    (t^k - s^k)/(t - s) is the complete homogeneous polynomial h_{k-1}, and
    h_k = S h_{k-1} - T h_{k-2}.
    """
    c = chebyshev_t_coeffs(n)
    h: List[DPoly] = [{(0, 0): 1}, {(1, 0): 1}]
    while len(h) < len(c):
        h.append(_dadd(_dmul({(1, 0): 1}, h[-1]), _dmul({(0, 1): 1}, h[-2]), -1))
    out: DPoly = {}
    for k in range(1, len(c)):
        if c[k]:
            out = _dadd(out, {m: c[k] * v for m, v in h[k - 1].items()})
    return out


def q_oracle(n: int) -> DPoly:
    """P_n(S + 2 phi, T + phi S + phi^2), keyed by (deg S, deg T, deg phi)."""
    s_sub = {(1, 0, 0): 1, (0, 0, 1): 2}
    t_sub = {(0, 1, 0): 1, (1, 0, 1): 1, (0, 0, 2): 1}
    out: DPoly = {}
    powers_s = [{(0, 0, 0): 1}]
    powers_t = [{(0, 0, 0): 1}]
    for (i, j), v in p_oracle(n).items():
        while len(powers_s) <= i:
            powers_s.append(_dmul(powers_s[-1], s_sub))
        while len(powers_t) <= j:
            powers_t.append(_dmul(powers_t[-1], t_sub))
        term = _dmul(powers_s[i], powers_t[j])
        out = _dadd(out, {m: v * x for m, x in term.items()})
    return out


def det_fraction(M: Sequence[Sequence[int]]) -> Fraction:
    """Determinant by Gaussian elimination over Q."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return det


def sylvester_det(a: Sequence[int], b: Sequence[int]) -> Fraction:
    """Res(a, b) as det of the Sylvester matrix; ascending coefficient lists."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    ra, rb = list(reversed(a)), list(reversed(b))
    for i in range(n):
        rows.append([0] * i + ra + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + rb + [0] * (size - n - 1 - i))
    return det_fraction(rows)


# -- numeric crossing geometry ---------------------------------------------------

def crossing_pairs(a: int, b: int):
    """Parameter pairs (t, s) of the double points of x = T_a(t), y = T_b(t)."""
    pi = mpmath.pi
    out = []
    for k in range(1, a):
        for h in range(1, b):
            if k * b + h * a < a * b:
                t = mpmath.cos(pi * (mpmath.mpf(k) / a + mpmath.mpf(h) / b))
                s = mpmath.cos(pi * (mpmath.mpf(k) / a - mpmath.mpf(h) / b))
                out.append((t, s))
    return out


def _divdiff(n: int, t, s):
    if n == 0:
        return mpmath.mpf(0)
    return (mpmath.chebyt(n, t) - mpmath.chebyt(n, s)) / (t - s)


def numeric_word(a: int, b: int, c: int, phi: Fraction, prec: int = 256, guard: int = 10):
    """Conway word of C(a,b,c,phi) from floating evaluation, or None if a sign is too close to 0.

    D at a crossing (t, s) is the product of the divided differences of
    T_c(. + phi) and T_{|b-a|}.  Crossings are read left to right in x.
    """
    with mpmath.workprec(prec):
        f = mpmath.mpf(phi.numerator) / phi.denominator
        tol = mpmath.mpf(2) ** (-(prec - guard) // 2)
        pts = []
        for t, s in crossing_pairs(a, b):
            d = _divdiff(c, t + f, s + f) * (_divdiff(b - a, t, s) if b - a != 1 else 1)
            if abs(d) < tol:
                return None
            x = mpmath.chebyt(a, t)
            pts.append((x, t + s, 1 if d > 0 else -1))
        g = -1 if b % 2 else 1
        if a == 3:
            pts.sort(key=lambda p: p[0])
            return tuple(g * (-1) ** i * p[2] for i, p in enumerate(pts))
        on_axis = sorted((p for p in pts if abs(p[1]) < tol), key=lambda p: p[0])
        off = sorted((p for p in pts if abs(p[1]) >= tol), key=lambda p: p[0])
        word = []
        for i, p in enumerate(on_axis):
            q1, q2 = off[2 * i], off[2 * i + 1]
            if abs(q1[0] - q2[0]) > tol:
                raise AssertionError("off-axis crossings do not pair up by abscissa")
            word += [g * p[2], -g * (q1[2] + q2[2])]
        return tuple(word)
