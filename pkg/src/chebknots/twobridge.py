"""Two-bridge knots: continued fractions, Schubert fractions and Chebyshev words.

A word ``[a_1, ..., a_n]`` stands for the continued fraction
``a_1 + 1/(a_2 + 1/(... + 1/a_n))``.  It is evaluated projectively with
2x2 integer matrices, so an intermediate tail equal to 1/0 is harmless.

S(alpha/beta) and S(alpha'/beta') are the same knot iff alpha = alpha' and
beta' = beta^(+-1) mod alpha; the mirror image of S(alpha/beta) is
S(alpha/-beta).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

ConwayWord = Tuple[int, ...]


class LinkError(ValueError):
    """The fraction has even numerator: it describes a two-component link."""


# -- continued fractions ---------------------------------------------------------

def _cf_matrix(terms: Sequence[int]) -> Tuple[int, int, int, int]:
    p, q, r, s = 1, 0, 0, 1
    for a in terms:
        # [[p, q], [r, s]] @ [[a, 1], [1, 0]]
        p, q, r, s = p * a + q, p, r * a + s, r
    return p, q, r, s


def cf_value(terms: Sequence[int]) -> Tuple[int, int]:
    """Projective value (num, den) of a word; den may be 0."""
    if not terms:
        raise ValueError("empty word")
    p, _, r, _ = _cf_matrix(terms)
    return p, r


def cf_eval(terms: Sequence[int]) -> Fraction:
    """Exact value of the continued fraction [a_1, ..., a_n]."""
    num, den = cf_value(terms)
    if den == 0:
        raise ZeroDivisionError("continued fraction evaluates to 1/0")
    return Fraction(num, den)


def _pos_fraction(f) -> Tuple[int, int]:
    f = Fraction(f)
    if f <= 0:
        raise ValueError("expected a positive fraction")
    return f.numerator, f.denominator


def cf_pm1(f) -> ConwayWord:
    """A word of +-1 terms whose value is f > 0."""
    a, b = _pos_fraction(f)
    out: List[int] = []
    sign = 1
    while True:
        if a == b:
            out.append(sign)
            return tuple(out)
        if a > b:
            # a/b = [1, b/(a - b)]
            out.append(sign)
            a, b = b, a - b
        else:
            # a/b = [1, -1, -(b - a)/a]; the tail is negative
            out += [sign, -sign]
            a, b = b - a, a
            sign = -sign
        g = gcd(a, b)
        a, b = a // g, b // g


def cf_pm12(f) -> ConwayWord:
    """A word [a_1, b_1, ..., a_n, b_n] with a_i = +-1, b_i = +-2 and value f.

    f must be positive with an even denominator.
    """
    a, b = _pos_fraction(f)
    if b % 2:
        raise ValueError("cf_pm12 needs an even denominator")
    out: List[int] = []
    sign = 1
    for _ in range(4 * (a + b) + 8):
        if (a, b) == (1, 2):
            out += [sign, -2 * sign]
            return tuple(out)
        if a > 2 * b:
            out += [sign, 2 * sign, -sign, 2 * sign]
            a, b = a - 2 * b, b
        elif a > b:
            out += [sign, 2 * sign]
            a, b = a - b, 3 * b - 2 * a
            if b == 0:
                return tuple(out)
        else:
            out += [sign, -2 * sign]
            a, b = a - b, 2 * a - b
        if (a < 0) != (b < 0):
            sign = -sign
        a, b = abs(a), abs(b)
        g = gcd(a, b)
        a, b = a // g, b // g
    raise RuntimeError("cf_pm12 did not terminate")


def regular_cf(f) -> ConwayWord:
    """Regular continued fraction of f >= 1 (all terms positive, last term >= 2 unless f = 1)."""
    a, b = _pos_fraction(f)
    if a < b:
        raise ValueError("regular_cf expects f >= 1")
    out = []
    while b:
        q, r = divmod(a, b)
        out.append(q)
        a, b = b, r
    return tuple(out)


# -- Schubert fractions ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SchubertFraction:
    """The pair (alpha, beta) naming the two-bridge knot or link S(alpha/beta)."""

    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if gcd(self.alpha, self.beta) != 1:
            raise ValueError("alpha and beta must be coprime")

    @classmethod
    def of(cls, f: Union["SchubertFraction", Fraction, int, str]) -> "SchubertFraction":
        if isinstance(f, SchubertFraction):
            return f
        if isinstance(f, str) and "/" in f:
            n, d = (int(x) for x in f.split("/"))
            if d == 0:
                if abs(n) != 1:
                    raise ValueError("zero denominator")
                return cls(1, 0)
            if d < 0:
                n, d = -n, -d
            f = Fraction(n, d)
        f = Fraction(f)
        if f == 0:
            raise ValueError("0 is not a Schubert fraction")
        sign = 1 if f > 0 else -1
        return cls(abs(f.numerator), sign * f.denominator)

    @property
    def is_knot(self) -> bool:
        return self.alpha % 2 == 1

    def normalized(self) -> "SchubertFraction":
        """Same class with 0 < beta < alpha (beta = 1 for the unknot)."""
        if self.alpha == 1:
            return SchubertFraction(1, 1)
        return SchubertFraction(self.alpha, self.beta % self.alpha)

    def mirror(self) -> "SchubertFraction":
        return SchubertFraction(self.alpha, -self.beta)

    def as_fraction(self) -> Fraction:
        return Fraction(self.alpha, self.beta)

    def __str__(self):
        return f"{self.alpha}/{self.beta}"

    def signed_str(self) -> str:
        """alpha/beta as a rational "p/q" with the sign on p; S(1/0) is "1/0"."""
        if self.beta < 0:
            return f"-{self.alpha}/{-self.beta}"
        return f"{self.alpha}/{self.beta}"


def _orbit(alpha: int, beta: int, up_to_mirror: bool) -> List[int]:
    b = beta % alpha
    binv = pow(b, -1, alpha)
    reps = {b, binv}
    if up_to_mirror:
        reps |= {alpha - b, alpha - binv}
    return sorted(reps)


def crossing_number(k: Union[SchubertFraction, Fraction, str]) -> int:
    """Sum of the regular continued fraction terms of alpha/beta with 0 < beta < alpha."""
    k = SchubertFraction.of(k).normalized()
    if k.alpha == 1:
        return 0
    return sum(regular_cf(Fraction(k.alpha, k.beta)))


@dataclass(frozen=True)
class KnotClass:
    """A two-bridge knot up to isotopy (or up to mirror image)."""

    canonical: SchubertFraction
    name: Optional[str]
    crossing_number: int
    up_to_mirror: bool = False

    @property
    def trivial(self) -> bool:
        return self.canonical.alpha == 1

    def key(self) -> Tuple[int, int]:
        return self.canonical.alpha, self.canonical.beta


def _check_knot(k: SchubertFraction) -> None:
    if not k.is_knot:
        raise LinkError(f"S({k}) has even alpha: it is a two-component link")


def canonical(k: Union[SchubertFraction, Fraction, str], up_to_mirror: bool = False) -> KnotClass:
    """Canonical representative: the least beta in (0, alpha) over the class orbit."""
    k = SchubertFraction.of(k)
    _check_knot(k)
    if k.alpha == 1:
        return KnotClass(SchubertFraction(1, 1), "0_1", 0, up_to_mirror)
    beta = _orbit(k.alpha, k.beta, up_to_mirror)[0]
    rep = SchubertFraction(k.alpha, beta)
    cn = crossing_number(rep)
    name = _knot_names().get((k.alpha, _orbit(k.alpha, beta, True)[0])) if cn <= 10 else None
    return KnotClass(rep, name, cn, up_to_mirror)


def equivalent(f, g, up_to_mirror: bool = False) -> bool:
    return canonical(f, up_to_mirror).canonical == canonical(g, up_to_mirror).canonical


@lru_cache(maxsize=1)
def _knot_names() -> Dict[Tuple[int, int], str]:
    text = resources.files("chebknots").joinpath("data/knot_names.txt").read_text()
    names: Dict[Tuple[int, int], str] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, frac = line.split()
        k = SchubertFraction.of(frac)
        key = (k.alpha, _orbit(k.alpha, k.beta, True)[0])
        if key in names:
            raise ValueError(f"duplicate knot table entry for {name}")
        names[key] = name
    return names


def knot_table() -> Dict[str, SchubertFraction]:
    """Built-in names mapped to their mirror-merged canonical fractions."""
    return {v: SchubertFraction(*k) for k, v in _knot_names().items()}


def identify(f, up_to_mirror: bool = False) -> KnotClass:
    return canonical(f, up_to_mirror)


# -- census ----------------------------------------------------------------------------

def _compositions(n: int) -> Iterator[Tuple[int, ...]]:
    """Compositions of n whose last part is at least 2."""
    if n >= 2:
        yield (n,)
    for first in range(1, n - 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def enumerate_knots(n: int, up_to_mirror: bool = True) -> List[KnotClass]:
    """All two-bridge knots with crossing number n, sorted by canonical fraction."""
    if n < 3:
        raise ValueError("crossing number must be at least 3")
    seen: Dict[Tuple[int, int], KnotClass] = {}
    for word in _compositions(n):
        p, q = cf_value(word)
        if p % 2 == 0:
            continue
        kc = canonical(Fraction(p, q), up_to_mirror)
        seen.setdefault(kc.key(), kc)
    return [seen[k] for k in sorted(seen)]


def count_knots(n: int) -> int:
    return len(enumerate_knots(n))


# -- Chebyshev words -----------------------------------------------------------------

A3_ALPHABET = ((1, -1),)
A4_ALPHABET = ((1, -1), (0, 2, -2))
A4_NONZERO_ALPHABET = ((1, -1), (2, -2))


def _words(length: int, alphabet: Sequence[Sequence[int]]) -> Iterator[ConwayWord]:
    letters = [alphabet[i % len(alphabet)] for i in range(length)]
    return itertools.product(*letters)


def _word_classes(length: int, alphabet) -> Dict[Tuple[int, int], List[ConwayWord]]:
    """Words of the given length grouped by mirror-merged knot class."""
    out: Dict[Tuple[int, int], List[ConwayWord]] = {}
    for w in _words(length, alphabet):
        p, q = cf_value(w)
        if q == 0 or p == 0 or p % 2 == 0:
            continue
        a = abs(p)
        key = (a, 1) if a == 1 else (a, _orbit(a, q if p > 0 else -q, True)[0])
        out.setdefault(key, []).append(w)
    return out


@lru_cache(maxsize=64)
def _cached_classes(length: int, a: int, zero_terms: bool = True) -> Dict[Tuple[int, int], Tuple[ConwayWord, ...]]:
    if a == 3:
        alphabet = A3_ALPHABET
    else:
        alphabet = A4_ALPHABET if zero_terms else A4_NONZERO_ALPHABET
    return {k: tuple(v) for k, v in _word_classes(length, alphabet).items()}


def _mirror_key(k: SchubertFraction) -> Tuple[int, int]:
    if k.alpha == 1:
        return (1, 1)
    return (k.alpha, _orbit(k.alpha, k.beta, True)[0])


def _pick_word(target: SchubertFraction, words: Iterable[ConwayWord], preferred: Sequence[ConwayWord]) -> ConwayWord:
    """Choose among minimal words: a formula word first, then exact value,
    then same chirality, then lexicographic order."""
    words = list(words)
    pool = set(words)
    for w in preferred:
        if w in pool:
            return _orient(target, w)
    exact = [w for w in words if cf_value(w)[1] and cf_eval(w) == target.as_fraction()]
    if exact:
        return min(exact)
    same = [w for w in words if _same_class(target, w)]
    return min(same) if same else _orient(target, min(words))


def _same_class(target: SchubertFraction, w: ConwayWord) -> bool:
    p, q = cf_value(w)
    return equivalent(target, Fraction(p, q), up_to_mirror=False)


def _orient(target: SchubertFraction, w: ConwayWord) -> ConwayWord:
    """Negate w if that is needed to land on target's chirality."""
    if _same_class(target, w):
        return w
    neg = tuple(-x for x in w)
    return neg if _same_class(target, neg) else w


def _reps(k: SchubertFraction) -> List[int]:
    a = k.alpha
    b = k.beta % a
    binv = pow(b, -1, a)
    return [b, a - b, binv, a - binv]


def min_b_a3_formula(k) -> Tuple[int, ConwayWord]:
    """Shortest cf_pm1 expansion over the four representatives alpha/beta'."""
    k = SchubertFraction.of(k)
    _check_knot(k)
    if k.alpha == 1:
        return 2, (1,)
    best = None
    for b in _reps(k):
        w = cf_pm1(Fraction(k.alpha, b))
        if best is None or len(w) < len(best):
            best = w
    return len(best) + 1, best


def min_b_a4_formula(k) -> Tuple[int, ConwayWord]:
    """Shortest cf_pm12 expansion over alpha/beta' and alpha/(2 alpha - beta')."""
    k = SchubertFraction.of(k)
    _check_knot(k)
    a = k.alpha
    if a == 1:
        return 3, (1, 0)
    best = None
    for b in _reps(k):
        for d in (b, 2 * a - b):
            if d % 2 == 0:
                w = cf_pm12(Fraction(a, d))
                if best is None or len(w) < len(best):
                    best = w
    return len(best) + 1, best


EXHAUSTIVE_A3_MAX_LENGTH = 14
EXHAUSTIVE_A4_MAX_PAIRS = 8


def min_b_a3(k) -> Tuple[int, ConwayWord]:
    """Least b (b not divisible by 3) with a +-1 word of length b - 1 realizing the knot.

    The formula bound is confirmed by exhaustive search over all shorter words.
    """
    k = SchubertFraction.of(k)
    _check_knot(k)
    b_formula, w_formula = min_b_a3_formula(k)
    key = _mirror_key(k)
    formula_words = [cf_pm1(Fraction(k.alpha, b)) for b in _reps(k)] if k.alpha > 1 else [(1,)]
    for length in range(1, min(b_formula - 1, EXHAUSTIVE_A3_MAX_LENGTH + 1)):
        if (length + 1) % 3 == 0:
            continue
        words = _cached_classes(length, 3).get(key)
        if words:
            return length + 1, _pick_word(k, words, formula_words)
    if b_formula - 1 <= EXHAUSTIVE_A3_MAX_LENGTH:
        words = _cached_classes(b_formula - 1, 3).get(key, ())
        return b_formula, _pick_word(k, words or [w_formula], formula_words)
    return b_formula, _orient(k, w_formula)


def min_b_a4(k) -> Tuple[int, ConwayWord]:
    """Least odd b with a word [a_1, b_1, ..., a_n, b_n] (n = (b-1)/2) realizing the knot.

    a_i = +-1 and b_i in {0, +-2}.  All 6^n words are searched for every n up
    to the formula bound (or up to EXHAUSTIVE_A4_MAX_PAIRS pairs).
    """
    k = SchubertFraction.of(k)
    _check_knot(k)
    b_formula, w_formula = min_b_a4_formula(k)
    key = _mirror_key(k)
    a = k.alpha
    formula_words = []
    if a > 1:
        for b in _reps(k):
            for d in (b, 2 * a - b):
                if d % 2 == 0:
                    formula_words.append(cf_pm12(Fraction(a, d)))
    n_formula = (b_formula - 1) // 2
    for n in range(1, min(n_formula, EXHAUSTIVE_A4_MAX_PAIRS) + 1):
        words = _cached_classes(2 * n, 4).get(key)
        if words:
            return 2 * n + 1, _pick_word(k, words, formula_words)
    return b_formula, _orient(k, w_formula)


def realizable_a3(length: int) -> Dict[Tuple[int, int], Tuple[ConwayWord, ...]]:
    """Mirror-merged knot classes realized by +-1 words of one length."""
    return _cached_classes(length, 3)


def realizable_a4(pairs: int, zero_terms: bool = True) -> Dict[Tuple[int, int], Tuple[ConwayWord, ...]]:
    """Mirror-merged knot classes realized by words with ``pairs`` (a_i, b_i) pairs.

    ``zero_terms=False`` restricts b_i to +-2, dropping the diagrams where a
    pair of crossings cancels.
    """
    return _cached_classes(2 * pairs, 4, zero_terms)


def minimal_b_table(
    a: int, bs: Sequence[int], crossings: Sequence[int], zero_terms: bool = True
) -> Dict[int, Dict[int, int]]:
    """For each crossing number N and each b, how many N-crossing knots have min b <= b.

    Realizability is decided by exhaustive word enumeration.  ``zero_terms``
    only matters for a = 4 (see ``realizable_a4``).
    """
    first: Dict[Tuple[int, int], int] = {}
    for b in sorted(bs):
        if a == 3:
            classes = realizable_a3(b - 1)
        else:
            classes = realizable_a4((b - 1) // 2, zero_terms)
        for key in classes:
            first.setdefault(key, b)
    table: Dict[int, Dict[int, int]] = {}
    for n in crossings:
        keys = [kc.key() for kc in enumerate_knots(n)]
        table[n] = {b: sum(1 for key in keys if first.get(key, 10 ** 9) <= b) for b in bs}
    return table
