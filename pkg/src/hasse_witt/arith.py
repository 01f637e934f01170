"""
Integer and rational kernel: factorization, square classes and Hilbert symbols.

Rationals are ``fractions.Fraction``.  Places are either a prime ``p`` or
``INF`` (the real place); ``INF`` is ``float('inf')`` so that sorted place
lists put the archimedean place last.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
import random

INF = float("inf")

FACTOR_BOUND = 2**63
ORACLE_BOUND = 10**4


def as_rational(x):
    """Coerce an int, Fraction or string like ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError("cannot interpret %r as a rational" % (x,))


def _nonzero(x, what="argument"):
    x = as_rational(x)
    if x == 0:
        raise ValueError("%s must be nonzero" % what)
    return x


# ---------------------------------------------------------------------------
# primality and factorization

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
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


def _rho(n):
    # Brent's variant; only reached for composite cofactors above the trial bound
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n, out):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _rho(n)
    _split(d, out)
    _split(n // d, out)


TRIAL_LIMIT = 10**5


def factorize(n):
    """
    Factor a nonzero integer with ``|n| <= 2**63``.

    Returns ``[(p, e), ...]`` with increasing primes; the sign of ``n`` is
    left to the caller.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("factorize expects an int")
    if n == 0:
        raise ValueError("cannot factor zero")
    n = abs(n)
    if n > FACTOR_BOUND:
        raise ValueError("magnitude exceeds 2**63")
    out = {}
    p = 2
    while p * p <= n and p <= TRIAL_LIMIT:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        _split(n, out)
    return sorted(out.items())


def valuation(n, p):
    """p-adic valuation of a nonzero int or Fraction."""
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree_part(r):
    """The squarefree integer d with r/d a nonzero rational square."""
    r = _nonzero(r)
    # r = a/b is in the class of a*b; a and b are coprime, so factor them apart
    d = -1 if r < 0 else 1
    for part in (r.numerator, r.denominator):
        for p, e in factorize(part):
            if e % 2:
                d *= p
    return d


def is_square(r):
    r = as_rational(r)
    if r < 0:
        return False
    a, b = r.numerator, r.denominator
    return isqrt(a) ** 2 == a and isqrt(b) ** 2 == b


def rational_sqrt(r):
    """Exact square root of a rational square."""
    r = as_rational(r)
    if not is_square(r):
        raise ValueError("%s is not a rational square" % r)
    return Fraction(isqrt(r.numerator), isqrt(r.denominator))


def check_place(v):
    if v == INF:
        return v
    if isinstance(v, bool) or not isinstance(v, int) or not is_prime(v):
        raise ValueError("%r is not a place (prime or INF)" % (v,))
    return v


def place_str(v):
    return "∞" if v == INF else str(v)


# ---------------------------------------------------------------------------
# Hilbert symbols


def legendre(a, p):
    """Legendre symbol (a/p) for odd prime p, a coprime to p."""
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else 1


def _hilbert_int(a, b, p):
    if p == INF:
        return -1 if a < 0 and b < 0 else 1
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = a // p**alpha, b // p**beta
    if p == 2:
        eps_u, eps_v = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        om_u, om_v = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def hilbert_symbol(a, b, v):
    """(a, b)_v in {+1, -1}; depends only on the square classes of a and b."""
    a = squarefree_part(_nonzero(a, "a"))
    b = squarefree_part(_nonzero(b, "b"))
    return _hilbert_int(a, b, check_place(v))


# ---------------------------------------------------------------------------
# brute-force oracle


def _strip_squares(n, p):
    while n % (p * p) == 0:
        n //= p * p
    return n


def hilbert_oracle(a, b, v):
    """
    Decide (a, b)_v by exhaustive search for a primitive solution of
    z^2 = a x^2 + b y^2 modulo p^k.

    Only congruence facts are used to shrink the search: p^2 factors are
    squares, and a unit u may be replaced by any u' with u' = u mod p
    (mod 8 when p = 2), since u'/u is then a square by Hensel's lemma.
    """
    for x in (a, b):
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError("oracle takes integers")
        if x == 0:
            raise ValueError("oracle arguments must be nonzero")
        if abs(x) > ORACLE_BOUND:
            raise ValueError("oracle arguments bounded by 10**4")
    v = check_place(v)
    if v == INF:
        return -1 if a < 0 and b < 0 else 1
    p = v
    a, b = _strip_squares(a, p), _strip_squares(b, p)
    m = 8 if p == 2 else p
    al, be = valuation(a, p), valuation(b, p)
    ua, ub = (a // p**al) % m, (b // p**be) % m
    return _oracle_search(p, p**al * ua, p**be * ub)


@lru_cache(maxsize=None)
def _oracle_search(p, a, b):
    import numpy as np

    # a primitive solution mod p^(va+vb+1) already lifts at odd p; one extra
    # power is kept as margin
    k = valuation(a, p) + valuation(b, p) + (5 if p == 2 else 2)
    mod = p**k
    r = np.arange(mod, dtype=np.int64)
    sq = r * r % mod
    squares = np.zeros(mod, dtype=bool)
    squares[sq] = True
    b_sq = np.zeros(mod, dtype=bool)
    b_sq[b % mod * sq % mod] = True
    a_sq = a % mod * sq % mod
    # a primitive triple has a unit coordinate, which may be scaled to 1
    if squares[(a + b % mod * sq) % mod].any():  # x = 1
        return 1
    if squares[(a_sq + b) % mod].any():  # y = 1
        return 1
    if b_sq[(1 - a_sq) % mod].any():  # z = 1
        return 1
    return -1
