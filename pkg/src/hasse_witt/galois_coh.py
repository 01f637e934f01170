"""
Degree-1 and degree-2 Galois cohomology of Q with Z/2 coefficients.

H^1 is Q*/Q*^2, stored as a squarefree integer.  H^2 is the 2-torsion of
Br(Q), stored as the (even) set of places where the local invariant is 1/2.
"""

from dataclasses import dataclass
from math import gcd

from hasse_witt.arith import INF, check_place, factorize, hilbert_symbol, place_str, squarefree_part


@dataclass(frozen=True, order=True)
class SquareClass:
    rep: int = 1

    def __post_init__(self):
        if isinstance(self.rep, bool) or not isinstance(self.rep, int):
            raise TypeError("square class representative must be an int")
        if self.rep == 0 or squarefree_part(self.rep) != self.rep:
            raise ValueError("%r is not a nonzero squarefree integer" % (self.rep,))

    @classmethod
    def of(cls, r):
        """The class of a nonzero rational."""
        return cls(squarefree_part(r))

    def is_trivial(self):
        return self.rep == 1

    def __mul__(self, other):
        return sq_mul(self, other)

    def __str__(self):
        return "⟨%d⟩" % self.rep


def sq_mul(a, b):
    # both reps are squarefree, so only the common primes pair up
    g = gcd(a.rep, b.rep)
    return SquareClass((a.rep // g) * (b.rep // g))


def _sort_places(places):
    return tuple(sorted(places))


@dataclass(frozen=True)
class BrauerClass:
    ramified: tuple = ()

    def __post_init__(self):
        places = frozenset(check_place(v) for v in self.ramified)
        if len(places) % 2:
            raise ValueError("ramification set must have even size, got %s" % (sorted(places),))
        object.__setattr__(self, "ramified", _sort_places(places))

    @classmethod
    def of(cls, places):
        return cls(tuple(places))

    def is_trivial(self):
        return not self.ramified

    def local_invariant(self, v):
        """1/2 at ramified places, 0 elsewhere; returned as 0 or 1 (halves)."""
        return 1 if v in self.ramified else 0

    def __add__(self, other):
        return br_add(self, other)

    def __str__(self):
        return "{%s}" % ",".join(place_str(v) for v in self.ramified)


def br_add(x, y):
    return BrauerClass(tuple(set(x.ramified) ^ set(y.ramified)))


def br_sum(classes):
    out = BrauerClass()
    for c in classes:
        out = br_add(out, c)
    return out


def relevant_places(*reps):
    """{∞} together with the primes dividing 2 * prod(reps)."""
    primes = {2}
    for r in reps:
        primes.update(p for p, _ in factorize(r))
    return sorted(primes) + [INF]


def cup(a, b):
    """Cup product (a) ∪ (b): the class of the quaternion algebra (a, b)."""
    places = relevant_places(a.rep, b.rep)
    return BrauerClass(tuple(v for v in places if hilbert_symbol(a.rep, b.rep, v) == -1))


def parse_brauer(text):
    """Parse "2,3", "{2,3,inf}", "{}" or "∅" into a BrauerClass."""
    text = text.strip().strip("{}").strip()
    if text in ("", "∅"):
        return BrauerClass()
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok.lower() in ("inf", "∞", "oo", "infinity"):
            out.append(INF)
        else:
            out.append(int(tok))
    return BrauerClass(tuple(out))
